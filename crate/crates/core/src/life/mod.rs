//! B3/S23 stepping on the infinite plane and on tori.
//!
//! Two steppers are provided. [`step_reference`] counts neighbours per cell in
//! a hash map; [`step`] runs the bit-parallel grids in [`PlaneGrid`] and
//! [`TorusGrid`]. They are required to agree bit for bit.

mod naive;
mod plane;
mod torus;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{Cell, Pattern};

pub use naive::step_reference;
pub use plane::PlaneGrid;
pub use torus::TorusGrid;

/// A wraparound universe of `width` columns and `height` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Torus {
    width: usize,
    height: usize,
}

impl Torus {
    pub const MIN_SIZE: usize = 3;

    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width < Self::MIN_SIZE || height < Self::MIN_SIZE {
            return Err(Error::TorusTooSmall { width, height });
        }
        Ok(Torus { width, height })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0
            && c.y >= 0
            && (c.x as u64) < self.width as u64
            && (c.y as u64) < self.height as u64
    }

    pub fn check(&self, p: &Pattern) -> Result<()> {
        match p.iter().find(|&c| !self.contains(c)) {
            Some(cell) => Err(Error::OutsideTorus {
                cell,
                width: self.width,
                height: self.height,
            }),
            None => Ok(()),
        }
    }

    /// Reduces a cell into the fundamental domain.
    pub fn wrap(&self, c: Cell) -> Cell {
        Cell::new(
            c.x.rem_euclid(self.width as i64),
            c.y.rem_euclid(self.height as i64),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    Plane,
    Torus(Torus),
}

impl Topology {
    pub fn torus(width: usize, height: usize) -> Result<Self> {
        Torus::new(width, height).map(Topology::Torus)
    }
}

pub fn step(p: &Pattern, t: Topology) -> Result<Pattern> {
    step_n(p, t, 1)
}

pub fn step_n(p: &Pattern, t: Topology, n: u64) -> Result<Pattern> {
    if n == 0 {
        if let Topology::Torus(torus) = t {
            torus.check(p)?;
        }
        return Ok(p.clone());
    }
    match t {
        Topology::Plane => {
            let mut g = PlaneGrid::from_pattern(p);
            for _ in 0..n {
                g.step()?;
            }
            Ok(g.to_pattern())
        }
        Topology::Torus(torus) => {
            let mut g = TorusGrid::from_pattern(torus, p)?;
            for _ in 0..n {
                g.step();
            }
            Ok(g.to_pattern())
        }
    }
}

/// Applies the rule to one cell given its live-neighbour count.
#[inline]
pub(crate) fn rule(alive: bool, neighbours: u32) -> bool {
    neighbours == 3 || (alive && neighbours == 2)
}
