//! Period detection and per-cell oscillation statistics.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::life::{PlaneGrid, Topology};
use crate::pattern::{Cell, Pattern, Rect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicsKind {
    Oscillator,
    Spaceship,
    Unresolved,
}

/// A state that recurred without the initial state ever recurring: the
/// pattern has a transient of `start` generations before a cycle of length
/// `cycle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Preperiod {
    pub start: u64,
    pub cycle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsReport {
    pub kind: DynamicsKind,
    pub period: Option<u64>,
    pub displacement: Option<(i64, i64)>,
    pub generations_examined: u64,
    pub min_population: Option<usize>,
    pub max_population: Option<usize>,
    pub cycle_bounding_box: Option<Rect>,
    pub preperiod: Option<Preperiod>,
}

impl DynamicsReport {
    fn unresolved(generations_examined: u64, preperiod: Option<Preperiod>) -> Self {
        DynamicsReport {
            kind: DynamicsKind::Unresolved,
            period: None,
            displacement: None,
            generations_examined,
            min_population: None,
            max_population: None,
            cycle_bounding_box: None,
            preperiod,
        }
    }

    pub fn is_oscillator(&self) -> bool {
        self.kind == DynamicsKind::Oscillator
    }

    /// Period if the pattern is an oscillator.
    pub fn oscillator_period(&self) -> Option<u64> {
        self.period.filter(|_| self.is_oscillator())
    }
}

/// Runs `p` on the plane for up to `max_gens` generations and classifies it by
/// the first recurrence of its initial shape.
pub fn detect_dynamics(p: &Pattern, max_gens: u64) -> Result<DynamicsReport> {
    if max_gens == 0 {
        return Err(Error::ZeroGenerations);
    }
    let (shape0, origin0) = p.normalized()?;
    let mut seen: HashMap<Pattern, u64> = HashMap::new();
    let mut pops = vec![p.population()];
    let mut bbox = p.bounding_box();
    let mut grid = PlaneGrid::from_pattern(p);
    seen.insert(shape0.clone(), 0);

    for t in 1..=max_gens {
        grid.step()?;
        let cur = grid.to_pattern();
        let (shape, origin) = cur.normalized()?;
        if shape == shape0 {
            let d = (origin.x - origin0.x, origin.y - origin0.y);
            let kind = if d == (0, 0) {
                DynamicsKind::Oscillator
            } else {
                DynamicsKind::Spaceship
            };
            return Ok(DynamicsReport {
                kind,
                period: Some(t),
                displacement: (kind == DynamicsKind::Spaceship).then_some(d),
                generations_examined: t,
                min_population: pops.iter().copied().min(),
                max_population: pops.iter().copied().max(),
                cycle_bounding_box: bbox,
                preperiod: None,
            });
        }
        if let Some(&start) = seen.get(&shape) {
            return Ok(DynamicsReport::unresolved(
                t,
                Some(Preperiod {
                    start,
                    cycle: t - start,
                }),
            ));
        }
        pops.push(cur.population());
        bbox = match (bbox, cur.bounding_box()) {
            (Some(a), Some(b)) => Some(a.union(&b)),
            (a, b) => a.or(b),
        };
        seen.insert(shape, t);
    }
    Ok(DynamicsReport::unresolved(max_gens, None))
}

/// The `period` phases of an oscillator, starting with `p` itself.
pub fn phases(p: &Pattern, period: u64) -> Result<Vec<Pattern>> {
    if period == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut grid = PlaneGrid::from_pattern(p);
    let mut out = Vec::with_capacity(period as usize);
    out.push(p.clone());
    for _ in 1..period {
        grid.step()?;
        out.push(grid.to_pattern());
    }
    grid.step()?;
    if grid.to_pattern() != *p {
        return Err(Error::NotPeriodic { period });
    }
    Ok(out)
}

/// Cell period of every cell alive in at least one phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPeriodMap {
    pub period: u64,
    pub cells: BTreeMap<Cell, u64>,
}

impl CellPeriodMap {
    pub fn get(&self, c: Cell) -> Option<u64> {
        self.cells.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn cell_period_map(p: &Pattern, period: u64) -> Result<CellPeriodMap> {
    let phases = phases(p, period)?;
    let n = period as usize;
    let mut history: BTreeMap<Cell, Vec<bool>> = BTreeMap::new();
    for (t, phase) in phases.iter().enumerate() {
        for c in phase.iter() {
            history.entry(c).or_insert_with(|| vec![false; n])[t] = true;
        }
    }
    let divs = divisors(period);
    let cells = history
        .into_iter()
        .map(|(c, seq)| {
            let d = divs
                .iter()
                .copied()
                .find(|&d| (0..n).all(|t| seq[t] == seq[(t + d as usize) % n]))
                .unwrap_or(period);
            (c, d)
        })
        .collect();
    Ok(CellPeriodMap { period, cells })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolatilityStats {
    pub rotor_cell_count: u64,
    pub stator_cell_count: u64,
    /// `rotor / (rotor + stator)`, or 0 for an empty pattern.
    pub volatility: f64,
    pub strictly_volatile: bool,
    pub trivial: bool,
}

impl VolatilityStats {
    pub fn from_map(map: &CellPeriodMap) -> Self {
        // a cell with cell period 1 that is alive in some phase is alive in all
        let stator = map.cells.values().filter(|&&d| d == 1).count() as u64;
        let rotor = map.cells.len() as u64 - stator;
        let full = map.cells.values().filter(|&&d| d == map.period).count();
        VolatilityStats {
            rotor_cell_count: rotor,
            stator_cell_count: stator,
            volatility: if rotor + stator == 0 {
                0.0
            } else {
                rotor as f64 / (rotor + stator) as f64
            },
            strictly_volatile: !map.is_empty() && stator == 0 && full == map.len(),
            trivial: full == 0,
        }
    }
}

pub fn volatility_stats(p: &Pattern, period: u64) -> Result<VolatilityStats> {
    cell_period_map(p, period).map(|m| VolatilityStats::from_map(&m))
}

/// Detects dynamics on the plane and, for oscillators, adds volatility.
pub fn analyze(p: &Pattern, max_gens: u64) -> Result<(DynamicsReport, Option<VolatilityStats>)> {
    let report = detect_dynamics(p, max_gens)?;
    let stats = match report.oscillator_period() {
        Some(period) => Some(volatility_stats(p, period)?),
        None => None,
    };
    Ok((report, stats))
}

/// Checks that `p` is a still life on the plane.
pub fn is_still_life(p: &Pattern) -> Result<bool> {
    Ok(crate::life::step(p, Topology::Plane)? == *p)
}
