//! Constructions: Snark loops of any period from 43 up, non-interacting LCM
//! composites, and a resolver that returns a verified oscillator for any
//! period.
//!
//! A Snark loop is four Snark reflectors at the corners of a diagonal
//! rectangle `n` by `m` diagonals across. A glider needs `8(n + m + 1)`
//! generations to go round, so eight gliders spaced evenly in time give an
//! oscillator of period `n + m + 1`. The corner placements and glider lanes
//! come from the embedded p43 loop (`n = m = 21`); longer sides are made by
//! sliding reflectors along their lanes.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::analysis::{detect_dynamics, phases};
use crate::catalog;
use crate::error::{Error, Result};
use crate::life::{step, PlaneGrid, Topology};
use crate::pattern::{Cell, Pattern, Rect};
use crate::transform::{transform, D8Transform, Symmetry};

/// Smallest period a Snark loop can have.
pub const SNARK_MIN_PERIOD: u64 = 43;
/// Side length, in diagonals, of the embedded p43 loop.
const TEMPLATE_SIDE: i64 = 21;

pub fn glider() -> Pattern {
    Pattern::from_coords(&[(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)])
}

/// All 16 origin-normalized glider shapes (four phases in each of four
/// directions, reflections included).
pub fn glider_shapes() -> &'static HashSet<Pattern> {
    static SHAPES: OnceLock<HashSet<Pattern>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        let mut out = HashSet::new();
        let mut g = glider();
        for _ in 0..4 {
            for s in Symmetry::ALL {
                let img = transform(&g, &D8Transform::symmetry(s)).expect("small pattern");
                out.insert(img.normalized().expect("small pattern").0);
            }
            g = step(&g, Topology::Plane).expect("small pattern");
        }
        out
    })
}

pub fn is_glider(p: &Pattern) -> bool {
    p.population() == 5
        && p.normalized()
            .is_ok_and(|(n, _)| glider_shapes().contains(&n))
}

/// The Snark reflector with its glider lanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnarkFixture {
    /// The still-life reflector.
    pub reflector: Pattern,
    /// Direction of travel of the incoming glider.
    pub input_direction: (i64, i64),
    /// Direction of travel of the reflected glider.
    pub output_direction: (i64, i64),
    /// Extra generations a reflection adds to the glider's path.
    pub reflection_delay: u64,
    pub min_repeat_time: u64,
}

fn fixture_pattern(name: &str) -> Result<Pattern> {
    catalog::by_name(name)
        .ok_or_else(|| Error::Catalog(format!("fixture {name} missing")))?
        .pattern()
}

fn build_snark_fixture() -> Result<SnarkFixture> {
    let figure = fixture_pattern("Snark")?;
    let mut reflector = Pattern::new();
    for part in figure.components() {
        if !is_glider(&part) {
            reflector = reflector.union(&part);
        }
    }
    if step(&reflector, Topology::Plane)? != reflector {
        return Err(Error::Synthesis("Snark fixture is not a still life".into()));
    }
    Ok(SnarkFixture {
        reflector,
        input_direction: (1, 1),
        output_direction: (1, -1),
        reflection_delay: 2,
        min_repeat_time: SNARK_MIN_PERIOD,
    })
}

pub fn snark_fixture() -> &'static SnarkFixture {
    static FIXTURE: OnceLock<SnarkFixture> = OnceLock::new();
    FIXTURE.get_or_init(|| build_snark_fixture().expect("embedded Snark is valid"))
}

/// Corner positions of the loop, named by where they sit on the page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    Top,
    Right,
    Bottom,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectorPlacement {
    pub corner: Corner,
    /// Maps the fixture reflector onto the loop.
    pub transform: D8Transform,
}

/// One circulating glider: the generation of the single-glider traversal it
/// was sampled at, and the top-left corner of its bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GliderInsertion {
    pub phase: u64,
    pub position: Cell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnarkLoopSpec {
    pub p: u64,
    pub n: u64,
    pub m: u64,
    pub reflector_placements: Vec<ReflectorPlacement>,
    pub glider_insertions: Vec<GliderInsertion>,
}

impl SnarkLoopSpec {
    /// Sides of the loop for period `p`: `n = floor((p-1)/2)`, `m = ceil((p-1)/2)`.
    pub fn sides(p: u64) -> (u64, u64) {
        ((p - 1) / 2, p / 2)
    }

    /// Generations for one glider to go round the loop.
    pub fn traversal_time(&self) -> u64 {
        4 * (2 * self.n + 2 * self.m) + 4 * snark_fixture().reflection_delay
    }
}

struct Template {
    placements: Vec<ReflectorPlacement>,
    gliders: Vec<Pattern>,
}

/// Finds every placement of the reflector inside the p43 loop.
fn build_template() -> Result<Template> {
    let fixture = snark_fixture();
    let lp = catalog::first_known(SNARK_MIN_PERIOD)
        .ok_or_else(|| Error::Catalog("p43 Snark loop missing".into()))?
        .pattern()?;
    let mut found = Vec::new();
    for s in Symmetry::ALL {
        let img = transform(&fixture.reflector, &D8Transform::symmetry(s))?;
        let anchor = img.cells()[0];
        for c in lp.iter() {
            let (dx, dy) = (c.x - anchor.x, c.y - anchor.y);
            let placed = img.translate(dx, dy)?;
            if placed.is_subset(&lp)
                && !found
                    .iter()
                    .any(|(_, q): &(D8Transform, Pattern)| *q == placed)
            {
                found.push((D8Transform::new(s, dx, dy), placed));
            }
        }
    }
    if found.len() != 4 {
        return Err(Error::Synthesis(format!(
            "expected 4 Snarks in the p43 loop, found {}",
            found.len()
        )));
    }
    let corner_of = |r: Rect, all: &[Rect]| {
        if all.iter().all(|o| r.y0 <= o.y0) {
            Corner::Top
        } else if all.iter().all(|o| r.y0 >= o.y0) {
            Corner::Bottom
        } else if all.iter().all(|o| r.x0 <= o.x0) {
            Corner::Left
        } else {
            Corner::Right
        }
    };
    let boxes: Vec<Rect> = found
        .iter()
        .map(|(_, p)| p.bounding_box().expect("non-empty"))
        .collect();
    let mut rest = lp.clone();
    let mut placements = Vec::new();
    for ((g, placed), bb) in found.iter().zip(&boxes) {
        rest = rest.difference(placed);
        placements.push(ReflectorPlacement {
            corner: corner_of(*bb, &boxes),
            transform: *g,
        });
    }
    let corners: HashSet<Corner> = placements.iter().map(|p| p.corner).collect();
    let gliders = rest.components();
    if corners.len() != 4 || gliders.len() != 8 || !gliders.iter().all(is_glider) {
        return Err(Error::Synthesis(
            "p43 loop does not decompose into 4 Snarks and 8 gliders".into(),
        ));
    }
    Ok(Template {
        placements,
        gliders,
    })
}

fn template() -> Result<&'static Template> {
    static TEMPLATE: OnceLock<Result<Template>> = OnceLock::new();
    TEMPLATE
        .get_or_init(build_template)
        .as_ref()
        .map_err(Clone::clone)
}

/// Displacement of each corner when the sides grow from 21 by `a` and `b`
/// diagonals. The right corner stays put; the others slide along their lanes.
fn corner_shift(corner: Corner, a: i64, b: i64) -> (i64, i64) {
    match corner {
        Corner::Right => (0, 0),
        Corner::Top => (-b, -b),
        Corner::Bottom => (-a, a),
        Corner::Left => (-a - b, a - b),
    }
}

fn place_reflectors(n: u64, m: u64) -> Result<(Vec<ReflectorPlacement>, Pattern)> {
    let (a, b) = (n as i64 - TEMPLATE_SIDE, m as i64 - TEMPLATE_SIDE);
    let fixture = snark_fixture();
    let mut placements = Vec::new();
    let mut all = Pattern::new();
    for pl in &template()?.placements {
        let (sx, sy) = corner_shift(pl.corner, a, b);
        let g = pl.transform.then(&D8Transform::translation(sx, sy))?;
        all = all.union(&transform(&fixture.reflector, &g)?);
        placements.push(ReflectorPlacement {
            corner: pl.corner,
            transform: g,
        });
    }
    Ok((placements, all))
}

/// Runs one glider round the loop and, if it comes back, samples it at eight
/// evenly spaced times.
fn insert_gliders(
    reflectors: &Pattern,
    seed: &Pattern,
    p: u64,
) -> Result<Option<(Vec<GliderInsertion>, Pattern)>> {
    if seed.within(reflectors, 2) {
        return Ok(None);
    }
    let start = reflectors.union(seed);
    let lap = 8 * p;
    let mut grid = PlaneGrid::from_pattern(&start);
    let mut states = Vec::with_capacity(lap as usize);
    states.push(start.clone());
    for _ in 1..lap {
        grid.step()?;
        states.push(grid.to_pattern());
    }
    grid.step()?;
    if grid.to_pattern() != start {
        return Ok(None);
    }
    'offset: for s in 0..p {
        let mut inserts = Vec::with_capacity(8);
        let mut pattern = reflectors.clone();
        for j in 0..8 {
            let t = s + j * p;
            let state = &states[t as usize];
            if !reflectors.is_subset(state) {
                continue 'offset;
            }
            let g = state.difference(reflectors);
            if !is_glider(&g) {
                continue 'offset;
            }
            let bb = g.bounding_box().expect("glider is non-empty");
            inserts.push(GliderInsertion {
                phase: t,
                position: Cell::new(bb.x0, bb.y0),
            });
            pattern = pattern.union(&g);
        }
        return Ok(Some((inserts, pattern)));
    }
    Ok(None)
}

fn verify_period(p: &Pattern, period: u64) -> Result<bool> {
    let r = detect_dynamics(p, period.max(2 * period).max(4096))?;
    Ok(r.oscillator_period() == Some(period))
}

/// Builds and verifies a Snark loop of period `p`, returning its parameters.
pub fn synth_snark_loop_spec(p: u64) -> Result<(SnarkLoopSpec, Pattern)> {
    if p < SNARK_MIN_PERIOD {
        return Err(Error::Synthesis(format!(
            "Snark loops need period >= {SNARK_MIN_PERIOD}, got {p}; use resolve_period for smaller periods"
        )));
    }
    let (n, m) = SnarkLoopSpec::sides(p);
    let (placements, reflectors) = place_reflectors(n, m)?;
    let mut spec = SnarkLoopSpec {
        p,
        n,
        m,
        reflector_placements: placements,
        glider_insertions: Vec::new(),
    };
    for seed in &template()?.gliders {
        if let Some((inserts, pattern)) = insert_gliders(&reflectors, seed, p)? {
            spec.glider_insertions = inserts;
            if verify_period(&pattern, p)? {
                return Ok((spec, pattern));
            }
        }
    }
    Err(Error::Synthesis(format!(
        "Snark loop failed verification: {spec:?}"
    )))
}

pub fn synth_snark_loop(p: u64) -> Result<Pattern> {
    synth_snark_loop_spec(p).map(|(_, pattern)| pattern)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn cycle_box(phases: &[Pattern]) -> Option<Rect> {
    phases
        .iter()
        .filter_map(Pattern::bounding_box)
        .reduce(|a, b| a.union(&b))
}

pub const COMPOSE_GAP: i64 = 3;

/// Places `b` to the right of `a` with at least three dead columns between
/// their cycle bounding boxes and checks that neither disturbs the other.
pub fn compose_lcm(a: &Pattern, pa: u64, b: &Pattern, pb: u64) -> Result<Pattern> {
    compose_lcm_with_gap(a, pa, b, pb, COMPOSE_GAP)
}

pub fn compose_lcm_with_gap(
    a: &Pattern,
    pa: u64,
    b: &Pattern,
    pb: u64,
    gap: i64,
) -> Result<Pattern> {
    let phases_a = phases(a, pa)?;
    let phases_b = phases(b, pb)?;
    let (dx, dy) = match (cycle_box(&phases_a), cycle_box(&phases_b)) {
        (Some(ra), Some(rb)) => (ra.x1 + 1 + gap - rb.x0, ra.y0 - rb.y0),
        _ => (0, 0),
    };
    let phases_b = phases_b
        .iter()
        .map(|q| q.translate(dx, dy))
        .collect::<Result<Vec<_>>>()?;
    let period = lcm(pa, pb);
    let composite = a.union(&phases_b[0]);
    let mut grid = PlaneGrid::from_pattern(&composite);
    for t in 0..period {
        let expect = phases_a[(t % pa) as usize].union(&phases_b[(t % pb) as usize]);
        if grid.to_pattern() != expect {
            return Err(Error::Compose(format!(
                "components interact at generation {t}"
            )));
        }
        grid.step()?;
    }
    let r = detect_dynamics(&composite, period)?;
    if r.oscillator_period() != Some(period) {
        return Err(Error::Compose(format!(
            "composite period is {:?}, expected {period}",
            r.period
        )));
    }
    Ok(composite)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Catalog,
    SnarkLoop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolved {
    pub period: u64,
    pub provenance: Provenance,
    pub name: String,
    #[serde(skip)]
    pub pattern: Pattern,
}

/// A verified oscillator of exactly period `p`.
pub fn resolve_period(p: u64) -> Result<Resolved> {
    if p == 0 {
        return Err(Error::ZeroPeriod);
    }
    if p >= SNARK_MIN_PERIOD {
        return Ok(Resolved {
            period: p,
            provenance: Provenance::SnarkLoop,
            name: format!("p{p} Snark loop"),
            pattern: synth_snark_loop(p)?,
        });
    }
    let entry = catalog::first_known(p)
        .ok_or_else(|| Error::Catalog(format!("no oscillator for period {p}")))?;
    let pattern = entry.pattern()?;
    if !verify_period(&pattern, p)? {
        return Err(Error::Catalog(format!(
            "{} failed verification",
            entry.name
        )));
    }
    Ok(Resolved {
        period: p,
        provenance: Provenance::Catalog,
        name: entry.name.clone(),
        pattern,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snark_reflector_is_still() {
        let f = snark_fixture();
        assert_eq!(f.reflector.population(), 49);
        assert_eq!(step(&f.reflector, Topology::Plane).unwrap(), f.reflector);
    }

    #[test]
    fn sixteen_glider_shapes() {
        assert_eq!(glider_shapes().len(), 16);
    }

    #[test]
    fn template_decomposes() {
        let t = template().unwrap();
        assert_eq!(t.placements.len(), 4);
        assert_eq!(t.gliders.len(), 8);
    }

    #[test]
    fn sides() {
        assert_eq!(SnarkLoopSpec::sides(43), (21, 21));
        assert_eq!(SnarkLoopSpec::sides(44), (21, 22));
        assert_eq!(SnarkLoopSpec::sides(100), (49, 50));
    }

    #[test]
    fn small_period_is_rejected() {
        assert!(matches!(synth_snark_loop(42), Err(Error::Synthesis(_))));
    }

    #[test]
    fn p43_and_p44() {
        for p in [43, 44] {
            let (spec, pat) = synth_snark_loop_spec(p).unwrap();
            assert_eq!(spec.n + spec.m + 1, p);
            assert_eq!(spec.traversal_time(), 8 * p);
            assert_eq!(spec.glider_insertions.len(), 8);
            assert_eq!(
                detect_dynamics(&pat, 200).unwrap().oscillator_period(),
                Some(p)
            );
        }
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm(3, 4), 12);
        assert_eq!(lcm(1, 2), 2);
        assert_eq!(lcm(5, 8), 40);
        assert_eq!(lcm(6, 4), 12);
    }

    #[test]
    fn block_with_blinker() {
        let block = Pattern::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let blinker = Pattern::from_coords(&[(0, 0), (1, 0), (2, 0)]);
        let c = compose_lcm(&block, 1, &blinker, 2).unwrap();
        assert_eq!(
            detect_dynamics(&c, 10).unwrap().oscillator_period(),
            Some(2)
        );
    }

    #[test]
    fn touching_components_are_rejected() {
        let block = Pattern::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let blinker = Pattern::from_coords(&[(0, 0), (1, 0), (2, 0)]);
        assert!(matches!(
            compose_lcm_with_gap(&block, 1, &blinker, 2, 0),
            Err(Error::Compose(_))
        ));
    }
}
