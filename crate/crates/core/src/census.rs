//! Torus soup census: random soups are run until their state repeats, the
//! ash is split into objects, and objects are tallied by canonical form.
//!
//! # Reproducibility
//!
//! Soup `i` of a census with seed `s` uses the seed
//! `splitmix64(s + i * 0x9E3779B97F4A7C15)` (wrapping arithmetic). A soup
//! seed `k` drives xorshift64* started from `k ^ 0x9E3779B97F4A7C15`
//! (replaced by `0x9E3779B97F4A7C15` if that is zero). Each step is
//!
//! ```text
//! x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D
//! ```
//!
//! Cells are drawn row by row, left to right; a cell is alive when
//! `(out >> 11) / 2^53 < density`. The soup is centered on the torus with its
//! top-left corner at `((W - w) / 2, (H - h) / 2)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::analysis::detect_dynamics;
use crate::error::{Error, Result};
use crate::life::{step, Topology, Torus, TorusGrid};
use crate::parallel::{par_map, Parallelism};
use crate::pattern::{Cell, Pattern};
use crate::rle::{compact_body, parse_rle};
use crate::synthesis::glider;
use crate::transform::d8_canonical;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub const DEFAULT_DENSITY: f64 = 0.375;
pub const DEFAULT_MAX_GENS: u64 = 1 << 15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of soup `index` in a census seeded with `seed`.
pub fn soup_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(index.wrapping_mul(GOLDEN)))
}

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = match seed ^ GOLDEN {
            0 => GOLDEN,
            s => s,
        };
        XorShift64Star { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

pub fn random_soup(seed: u64, width: usize, height: usize, density: f64) -> Pattern {
    let mut rng = XorShift64Star::new(seed);
    let mut cells = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if rng.next_f64() < density {
                cells.push(Cell::new(x as i64, y as i64));
            }
        }
    }
    Pattern::from_cells(cells)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoupConfig {
    pub seed: u64,
    pub soup_width: usize,
    pub soup_height: usize,
    pub density: f64,
    pub torus: Torus,
    pub max_gens: u64,
    pub soup_count: u64,
}

impl SoupConfig {
    pub fn validate(&self) -> Result<()> {
        if self.soup_width == 0 || self.soup_height == 0 {
            return Err(Error::Config("soup dimensions must be positive".into()));
        }
        if self.soup_width > self.torus.width() || self.soup_height > self.torus.height() {
            return Err(Error::Config("soup does not fit on the torus".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Config(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        if self.max_gens == 0 {
            return Err(Error::ZeroGenerations);
        }
        Ok(())
    }

    /// Soup `index`, placed on the torus.
    pub fn soup(&self, index: u64) -> Pattern {
        let s = random_soup(
            soup_seed(self.seed, index),
            self.soup_width,
            self.soup_height,
            self.density,
        );
        let dx = (self.torus.width() - self.soup_width) / 2;
        let dy = (self.torus.height() - self.soup_height) / 2;
        s.translate(dx as i64, dy as i64)
            .expect("soup fits on the torus")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub preperiod: u64,
    pub period: u64,
    pub cycle_phase: Pattern,
}

fn digest(g: &TorusGrid) -> u64 {
    let mut h = DefaultHasher::new();
    g.words().hash(&mut h);
    h.finish()
}

/// Runs until a state repeats. `preperiod` is the first generation of the
/// cycle and `cycle_phase` the state at that generation.
pub fn run_to_cycle(p: &Pattern, torus: Torus, max_gens: u64) -> Result<Cycle> {
    let mut grid = TorusGrid::from_pattern(torus, p)?;
    let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut states: Vec<Vec<u64>> = Vec::new();
    for t in 0..=max_gens {
        let d = digest(&grid);
        let hits = seen.entry(d).or_default();
        if let Some(&start) = hits.iter().find(|&&s| states[s as usize] == grid.words()) {
            let first = TorusGrid::from_words(torus, states[start as usize].clone());
            return Ok(Cycle {
                preperiod: start,
                period: t - start,
                cycle_phase: first.to_pattern(),
            });
        }
        hits.push(t);
        states.push(grid.words().to_vec());
        if t < max_gens {
            grid.step();
        }
    }
    Err(Error::Unresolved {
        generations: max_gens,
    })
}

/// One object of separated ash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AshObject {
    /// Live cells of the object in the given phase.
    pub cells: Pattern,
    /// Cells the object occupies in any phase.
    pub footprint: Pattern,
    /// Least origin-normalized image over all phases and symmetries.
    pub canonical: Pattern,
    /// Dictionary name, or the RLE body of the canonical form.
    pub key: String,
}

fn neighbours(c: Cell, t: Topology) -> impl Iterator<Item = Cell> {
    (-1i64..=1)
        .flat_map(|dy| (-1i64..=1).map(move |dx| (dx, dy)))
        .filter(|&d| d != (0, 0))
        .filter_map(move |(dx, dy)| match t {
            Topology::Plane => c.offset(dx, dy).ok(),
            Topology::Torus(tor) => Some(tor.wrap(Cell::new(c.x + dx, c.y + dy))),
        })
}

/// 8-connected components, each listed as sorted cells, in order of their
/// smallest cell.
fn components(cells: &Pattern, t: Topology) -> Vec<Pattern> {
    let live: HashSet<Cell> = cells.iter().collect();
    let mut done: HashSet<Cell> = HashSet::new();
    let mut out = Vec::new();
    for start in cells.iter() {
        if !done.insert(start) {
            continue;
        }
        let mut part = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in neighbours(c, t) {
                if live.contains(&n) && done.insert(n) {
                    part.push(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(Pattern::from_cells(part));
    }
    out
}

/// Moves torus cells to the plane images nearest to the first cell.
fn unwrap(cells: &Pattern, t: Topology) -> Pattern {
    let Topology::Torus(tor) = t else {
        return cells.clone();
    };
    let Some(&a) = cells.cells().first() else {
        return Pattern::new();
    };
    let near = |d: i64, n: usize| {
        let n = n as i64;
        let d = d.rem_euclid(n);
        if d > n / 2 {
            d - n
        } else {
            d
        }
    };
    cells
        .iter()
        .map(|c| {
            Cell::new(
                a.x + near(c.x - a.x, tor.width()),
                a.y + near(c.y - a.y, tor.height()),
            )
        })
        .collect()
}

/// Least image of a set of object phases under translation and the eight
/// symmetries.
fn canonical_of(parts: &[Pattern]) -> Pattern {
    let mut shapes: HashSet<Pattern> = HashSet::new();
    for p in parts.iter().filter(|p| !p.is_empty()) {
        shapes.insert(p.normalized().expect("small object").0);
    }
    shapes
        .iter()
        .map(|s| d8_canonical(s).expect("small object"))
        .min()
        .unwrap_or_default()
}

const DICTIONARY: [(&str, &str); 9] = [
    ("block", "2o$2o!"),
    ("blinker", "3o!"),
    ("beehive", "b2o$o2bo$b2o!"),
    ("loaf", "b2o$o2bo$bobo$2bo!"),
    ("boat", "2o$obo$bo!"),
    ("tub", "bo$obo$bo!"),
    ("pond", "b2o$o2bo$o2bo$b2o!"),
    ("ship", "2o$obo$b2o!"),
    ("glider", "bo$2bo$3o!"),
];

/// Canonical form of a standalone pattern, taken over its plane phases.
pub fn canonical_form(p: &Pattern) -> Result<Pattern> {
    let r = detect_dynamics(p, 4096)?;
    let n = r.period.unwrap_or(1);
    let mut parts = vec![p.clone()];
    let mut cur = p.clone();
    for _ in 1..n {
        cur = step(&cur, Topology::Plane)?;
        parts.push(cur.clone());
    }
    Ok(canonical_of(&parts))
}

/// Named objects with their canonical forms.
pub fn dictionary() -> &'static [(&'static str, Pattern)] {
    static DICT: OnceLock<Vec<(&'static str, Pattern)>> = OnceLock::new();
    DICT.get_or_init(|| {
        DICTIONARY
            .iter()
            .map(|&(name, body)| {
                let p = if name == "glider" {
                    glider()
                } else {
                    parse_rle(&format!("x = 0, y = 0\n{body}"))
                        .expect("dictionary rle")
                        .pattern
                };
                (name, canonical_form(&p).expect("dictionary object"))
            })
            .collect()
    })
}

pub fn object_key(canonical: &Pattern) -> String {
    dictionary()
        .iter()
        .find(|(_, c)| c == canonical)
        .map(|(n, _)| n.to_string())
        .unwrap_or_else(|| compact_body(canonical))
}

fn all_phases(p: &Pattern, period: u64, t: Topology) -> Result<Vec<Pattern>> {
    let mut out = Vec::with_capacity(period as usize);
    match t {
        Topology::Plane => {
            let mut cur = p.clone();
            for _ in 0..period {
                let next = step(&cur, t)?;
                out.push(cur);
                cur = next;
            }
        }
        Topology::Torus(tor) => {
            let mut g = TorusGrid::from_pattern(tor, p)?;
            for _ in 0..period {
                out.push(g.to_pattern());
                g.step();
            }
        }
    }
    Ok(out)
}

/// Splits periodic ash into objects: 8-connected components of the union of
/// all phases, wrapping on a torus.
pub fn separate_objects(cycle_phase: &Pattern, period: u64, t: Topology) -> Result<Vec<AshObject>> {
    if period == 0 {
        return Err(Error::ZeroPeriod);
    }
    let phases = all_phases(cycle_phase, period, t)?;
    let footprint = phases.iter().fold(Pattern::new(), |acc, p| acc.union(p));
    let parts = components(&footprint, t);
    let mut label: HashMap<Cell, usize> = HashMap::with_capacity(footprint.population());
    for (i, part) in parts.iter().enumerate() {
        for c in part.iter() {
            label.insert(c, i);
        }
    }
    let mut per_phase: Vec<Vec<Vec<Cell>>> = vec![Vec::with_capacity(phases.len()); parts.len()];
    for phase in &phases {
        let mut buckets: Vec<Vec<Cell>> = vec![Vec::new(); parts.len()];
        for c in phase.iter() {
            buckets[label[&c]].push(c);
        }
        for (i, b) in buckets.into_iter().enumerate() {
            per_phase[i].push(b);
        }
    }
    Ok(parts
        .into_iter()
        .zip(per_phase)
        .map(|(footprint, cells_by_phase)| {
            let unwrapped: Vec<Pattern> = cells_by_phase
                .iter()
                .map(|cs| unwrap(&Pattern::from_cells(cs.iter().copied()), t))
                .collect();
            let canonical = canonical_of(&unwrapped);
            AshObject {
                cells: Pattern::from_cells(cells_by_phase[0].iter().copied()),
                footprint,
                key: object_key(&canonical),
                canonical,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusTally {
    pub objects: BTreeMap<String, u64>,
    pub soups: u64,
    pub unresolved: u64,
    pub config: SoupConfig,
}

impl CensusTally {
    pub fn total_objects(&self) -> u64 {
        self.objects.values().sum()
    }

    /// Objects by descending count, ties broken by key.
    pub fn ranked(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<(&str, u64)> = self.objects.iter().map(|(k, &n)| (k.as_str(), n)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        v
    }
}

/// Object keys of one soup's ash, or `None` if it did not settle.
pub fn census_soup(cfg: &SoupConfig, index: u64) -> Result<Option<Vec<String>>> {
    let t = Topology::Torus(cfg.torus);
    match run_to_cycle(&cfg.soup(index), cfg.torus, cfg.max_gens) {
        Ok(c) => Ok(Some(
            separate_objects(&c.cycle_phase, c.period, t)?
                .into_iter()
                .map(|o| o.key)
                .collect(),
        )),
        Err(Error::Unresolved { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn run_census(cfg: &SoupConfig, par: Parallelism) -> Result<CensusTally> {
    cfg.validate()?;
    let indices: Vec<u64> = (0..cfg.soup_count).collect();
    let results = par_map(&indices, par, |&i| census_soup(cfg, i));
    let mut tally = CensusTally {
        objects: BTreeMap::new(),
        soups: cfg.soup_count,
        unresolved: 0,
        config: cfg.clone(),
    };
    for r in results {
        match r? {
            Some(keys) => {
                for k in keys {
                    *tally.objects.entry(k).or_insert(0) += 1;
                }
            }
            None => tally.unresolved += 1,
        }
    }
    Ok(tally)
}
