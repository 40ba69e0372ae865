//! Conway's Game of Life, oscillator analysis, and the constructions behind
//! omniperiodicity: Snark loops for every period from 43 up, a verified
//! catalog of first-known oscillators for periods 1 through 42, torus soup
//! censuses and brute-force catalyst search.
//!
//! Coordinates: `x` grows rightward and `y` grows downward, matching RLE.

pub mod analysis;
pub mod catalog;
pub mod catsearch;
pub mod census;
pub mod error;
pub mod life;
pub mod parallel;
pub mod pattern;
pub mod rle;
pub mod synthesis;
pub mod transform;

pub use error::{Error, Result, RleError};
pub use life::{step, step_n, step_reference, Topology, Torus};
pub use pattern::{Cell, Pattern, Rect};
pub use transform::{transform, D8Transform, Symmetry};
