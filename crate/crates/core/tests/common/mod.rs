#![allow(dead_code)]

use omnilife::catalog;
use omnilife::catsearch::{CatalystSpec, SearchConfig};
use omnilife::census::XorShift64Star;
use omnilife::{step_n, transform, D8Transform, Pattern, Rect, Symmetry, Topology};

pub fn named(name: &str) -> Pattern {
    catalog::by_name(name).unwrap().pattern().unwrap()
}

pub fn block() -> Pattern {
    Pattern::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)])
}

/// A random phase and orientation of the queen bee shuttle with one intact
/// block taken out, and an 8x8 placement box that contains where it was.
pub fn seeded_block_case(seed: u64) -> SearchConfig {
    let shuttle = named("queen bee shuttle");
    let mut rng = XorShift64Star::new(seed);
    loop {
        let t = rng.next_u64() % 30;
        let sym = Symmetry::ALL[(rng.next_u64() % 8) as usize];
        let phase = step_n(&shuttle, Topology::Plane, t).unwrap();
        let phase = transform(&phase, &D8Transform::new(sym, 0, 0)).unwrap();
        let blocks: Vec<Pattern> = phase
            .components()
            .into_iter()
            .filter(|c| c.normalized().unwrap().0 == block())
            .collect();
        if blocks.is_empty() {
            continue;
        }
        let removed = &blocks[(rng.next_u64() % blocks.len() as u64) as usize];
        let active = phase.difference(removed);
        let a = active.bounding_box().unwrap();
        let r = removed.bounding_box().unwrap();
        let jx = (rng.next_u64() % 8) as i64;
        let jy = (rng.next_u64() % 8) as i64;
        let (x0, y0) = (r.x0 - a.x0 - jx, r.y0 - a.y0 - jy);
        return SearchConfig {
            active_region: active,
            catalysts: vec![CatalystSpec::new("block", block())],
            max_catalysts: 1,
            placement_box: Rect {
                x0,
                y0,
                x1: x0 + 7,
                y1: y0 + 7,
            },
            max_gens: 64,
            require_period: None,
            symmetry: None,
            max_nodes: None,
        };
    }
}
