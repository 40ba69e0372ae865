use std::collections::HashMap;

use super::{rule, Topology};
use crate::error::Result;
use crate::pattern::{Cell, Pattern};

/// Per-cell neighbour counting. Slow, obviously correct, and used as the
/// oracle for the bit-parallel steppers.
pub fn step_reference(p: &Pattern, t: Topology) -> Result<Pattern> {
    if let Topology::Torus(torus) = t {
        torus.check(p)?;
    }
    let mut counts: HashMap<Cell, u32> = HashMap::new();
    for c in p.iter() {
        for dy in -1..=1 {
            for dx in -1..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let n = match t {
                    Topology::Plane => c.offset(dx, dy)?,
                    Topology::Torus(torus) => torus.wrap(Cell::new(c.x + dx, c.y + dy)),
                };
                *counts.entry(n).or_insert(0) += 1;
            }
        }
    }
    Ok(counts
        .into_iter()
        .filter(|&(c, n)| rule(p.contains(c), n))
        .map(|(c, _)| c)
        .collect())
}
