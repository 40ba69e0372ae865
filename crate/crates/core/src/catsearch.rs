//! Brute-force catalyst placement around an active region.
//!
//! Catalysts are added one at a time, depth first. A placement is kept only
//! if it starts at least two cells away from everything already placed and
//! later changes the evolution (it is *engaged* at the first generation `t`
//! where `step(S_t ∪ C) != step(S_t) ∪ C`). A catalyst whose cells stay
//! damaged for more than its recovery deadline makes the configuration fail
//! at that generation; a later catalyst is only useful if it engages before
//! then. Every configuration visited, including the bare active region, is
//! kept if it is an oscillator of the required period.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::analysis::{detect_dynamics, DynamicsReport};
use crate::error::{Error, Result};
use crate::life::{rule, PlaneGrid};
use crate::parallel::{par_map, Parallelism};
use crate::pattern::{Cell, Pattern, Rect};
use crate::rle::parse_rle;
use crate::transform::{d8_canonical, transform, D8Transform, Symmetry};

pub const DEFAULT_RECOVERY_DEADLINE: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalystSpec {
    pub name: String,
    pub pattern: Pattern,
    pub allowed_transforms: Vec<Symmetry>,
    pub recovery_deadline: u64,
}

impl CatalystSpec {
    /// A catalyst allowed in all eight orientations with the default deadline.
    pub fn new(name: &str, pattern: Pattern) -> Self {
        CatalystSpec {
            name: name.to_string(),
            pattern,
            allowed_transforms: Symmetry::ALL.to_vec(),
            recovery_deadline: DEFAULT_RECOVERY_DEADLINE,
        }
    }
}

/// Placements come in rotated pairs: `(x, y)` maps to `(cx2 - x, cy2 - y)`,
/// so the centre of rotation is `(cx2 / 2, cy2 / 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Symmetry {
    pub cx2: i64,
    pub cy2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub active_region: Pattern,
    pub catalysts: Vec<CatalystSpec>,
    pub max_catalysts: usize,
    /// Offsets of a catalyst's top-left corner from the active region's
    /// top-left corner.
    pub placement_box: Rect,
    pub max_gens: u64,
    pub require_period: Option<u64>,
    pub symmetry: Option<C2Symmetry>,
    /// Node budget for each top-level branch.
    pub max_nodes: Option<u64>,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.active_region.is_empty() {
            return Err(Error::Config("active region is empty".into()));
        }
        if self.max_catalysts == 0 {
            return Err(Error::Config("max_catalysts must be at least 1".into()));
        }
        if self.max_gens == 0 {
            return Err(Error::ZeroGenerations);
        }
        let b = self.placement_box;
        if b.x0 > b.x1 || b.y0 > b.y1 {
            return Err(Error::Config("placement box is empty".into()));
        }
        if b.width() * b.height() > 1 << 20 {
            return Err(Error::Config("placement box is too large".into()));
        }
        for c in &self.catalysts {
            if c.pattern.is_empty() || PlaneGrid::stepped(&c.pattern)? != c.pattern {
                return Err(Error::Config(format!(
                    "catalyst {} is not a still life",
                    c.name
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub catalyst: usize,
    /// Maps the catalyst's pattern onto its cells in the solution.
    pub transform: D8Transform,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSolution {
    pub placements: Vec<Placement>,
    pub resulting_pattern: Pattern,
    pub report: DynamicsReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub solutions: Vec<SearchSolution>,
    /// Configurations simulated.
    pub nodes: u64,
    /// False if some branch ran out of its node budget.
    pub complete: bool,
}

/// One candidate placement: a catalyst image (and its rotated partner in
/// symmetric mode) at a fixed offset.
#[derive(Clone, Debug)]
struct Unit {
    index: usize,
    placements: Vec<Placement>,
    cells: Pattern,
    deadline: u64,
    bbox: Rect,
    /// Cells within distance 1 of the unit, where an interaction would show.
    halo: Vec<Cell>,
}

fn rot180_about(c: C2Symmetry) -> D8Transform {
    D8Transform::new(Symmetry::Rot180, c.cx2, c.cy2)
}

fn build_units(cfg: &SearchConfig) -> Result<Vec<Unit>> {
    let anchor = cfg
        .active_region
        .bounding_box()
        .expect("validated non-empty");
    let mut units = Vec::new();
    for (ci, cat) in cfg.catalysts.iter().enumerate() {
        let mut images: Vec<(Symmetry, Pattern, Cell)> = Vec::new();
        let mut seen = HashSet::new();
        for &s in &cat.allowed_transforms {
            let img = transform(&cat.pattern, &D8Transform::symmetry(s))?;
            let (norm, corner) = img.normalized()?;
            if seen.insert(norm.clone()) {
                images.push((s, norm, corner));
            }
        }
        for (s, norm, corner) in &images {
            for dy in cfg.placement_box.y0..=cfg.placement_box.y1 {
                for dx in cfg.placement_box.x0..=cfg.placement_box.x1 {
                    let (ox, oy) = (anchor.x0 + dx, anchor.y0 + dy);
                    let cells = norm.translate(ox, oy)?;
                    let g = D8Transform::new(*s, ox - corner.x, oy - corner.y);
                    let mut placements = vec![Placement {
                        catalyst: ci,
                        transform: g,
                    }];
                    let mut all = cells.clone();
                    if let Some(sym) = cfg.symmetry {
                        let r = rot180_about(sym);
                        let twin = transform(&cells, &r)?;
                        if twin != cells {
                            if twin.within(&cells, 1) {
                                continue;
                            }
                            placements.push(Placement {
                                catalyst: ci,
                                transform: g.then(&r)?,
                            });
                            all = all.union(&twin);
                        }
                    }
                    units.push(make_unit(
                        units.len(),
                        placements,
                        all,
                        cat.recovery_deadline,
                    ));
                }
            }
        }
    }
    Ok(units)
}

fn make_unit(index: usize, placements: Vec<Placement>, cells: Pattern, deadline: u64) -> Unit {
    let bbox = cells.bounding_box().expect("catalysts are non-empty");
    let mut halo: Vec<Cell> = cells
        .iter()
        .flat_map(|c| {
            (-1..=1).flat_map(move |dy| (-1..=1).map(move |dx| Cell::new(c.x + dx, c.y + dy)))
        })
        .collect();
    halo.sort_unstable();
    halo.dedup();
    Unit {
        index,
        placements,
        cells,
        deadline,
        bbox,
        halo,
    }
}

fn live_neighbours(p: &Pattern, c: Cell) -> u32 {
    let mut n = 0;
    for dy in -1..=1 {
        for dx in -1..=1 {
            if (dx, dy) != (0, 0) && p.contains(Cell::new(c.x + dx, c.y + dy)) {
                n += 1;
            }
        }
    }
    n
}

/// Whether adding `u` to state `s` changes the next generation.
fn interacts(s: &Pattern, sbox: Option<Rect>, u: &Unit) -> bool {
    let Some(sb) = sbox else {
        return false;
    };
    if sb.x1 < u.bbox.x0 - 2
        || sb.x0 > u.bbox.x1 + 2
        || sb.y1 < u.bbox.y0 - 2
        || sb.y0 > u.bbox.y1 + 2
    {
        return false;
    }
    u.halo.iter().any(|&c| {
        let in_s = s.contains(c);
        let in_u = u.cells.contains(c);
        let with = rule(
            in_s || in_u,
            live_neighbours(s, c) + live_neighbours(&u.cells, c),
        );
        let without = in_u || rule(in_s, live_neighbours(s, c));
        with != without
    })
}

/// A configuration and its simulated history.
struct Node {
    units: Vec<usize>,
    pattern: Pattern,
    states: Vec<Pattern>,
    boxes: Vec<Option<Rect>>,
    /// Engagement generation of the most recently added unit.
    engaged: u64,
    /// First generation at which some unit had been damaged for longer than
    /// its deadline.
    failed_at: Option<u64>,
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    units: Vec<Unit>,
}

impl<'a> Search<'a> {
    fn new(cfg: &'a SearchConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Search {
            cfg,
            units: build_units(cfg)?,
        })
    }

    fn failure(&self, units: &[usize], states: &[Pattern]) -> Option<u64> {
        let mut broken = vec![0u64; units.len()];
        for (t, s) in states.iter().enumerate() {
            for (k, &u) in units.iter().enumerate() {
                let unit = &self.units[u];
                if unit.cells.is_subset(s) {
                    broken[k] = 0;
                } else {
                    broken[k] += 1;
                    if broken[k] > unit.deadline {
                        return Some(t as u64);
                    }
                }
            }
        }
        None
    }

    /// Simulates `pattern` until `max_gens` or failure. States before
    /// `prefix.len()` are taken from `prefix`.
    fn simulate(
        &self,
        units: Vec<usize>,
        pattern: Pattern,
        prefix: Vec<Pattern>,
        engaged: u64,
    ) -> Result<Node> {
        let mut states = prefix;
        if states.is_empty() {
            states.push(pattern.clone());
        }
        let mut grid = PlaneGrid::from_pattern(states.last().expect("non-empty"));
        while (states.len() as u64) <= self.cfg.max_gens {
            grid.step()?;
            states.push(grid.to_pattern());
        }
        let failed_at = self.failure(&units, &states);
        if let Some(f) = failed_at {
            states.truncate(f as usize + 1);
        }
        let boxes = states.iter().map(Pattern::bounding_box).collect();
        Ok(Node {
            units,
            pattern,
            states,
            boxes,
            engaged,
            failed_at,
        })
    }

    fn root(&self) -> Result<Node> {
        self.simulate(Vec::new(), self.cfg.active_region.clone(), Vec::new(), 0)
    }

    /// Engagement generation of `u` against the node's history, searched in
    /// `[from, until)`.
    fn engagement(&self, node: &Node, u: &Unit, from: u64, until: u64) -> Option<u64> {
        (from..until).find(|&t| interacts(&node.states[t as usize], node.boxes[t as usize], u))
    }

    /// Admissible children of a node, in unit order, with their engagement
    /// generations.
    fn children(&self, node: &Node) -> Vec<(usize, u64)> {
        let until = node
            .failed_at
            .unwrap_or(self.cfg.max_gens)
            .min(self.cfg.max_gens);
        let last = node.units.last().copied();
        self.units
            .iter()
            .filter(|u| !u.cells.within(&node.pattern, 1))
            .filter_map(|u| {
                let from = if node.units.is_empty() {
                    0
                } else {
                    node.engaged
                };
                let e = self.engagement(node, u, from, until)?;
                // ties between equal engagement times are ordered by index
                let ordered = match last {
                    Some(l) => e > node.engaged || u.index > l,
                    None => true,
                };
                ordered.then_some((u.index, e))
            })
            .collect()
    }

    fn child(&self, node: &Node, u: usize, e: u64) -> Result<Node> {
        let unit = &self.units[u];
        let prefix = node.states[..=e as usize]
            .iter()
            .map(|s| s.union(&unit.cells))
            .collect();
        let mut units = node.units.clone();
        units.push(u);
        self.simulate(units, node.pattern.union(&unit.cells), prefix, e)
    }

    fn solution(&self, node: &Node) -> Result<Option<SearchSolution>> {
        if node.failed_at.is_some() {
            return Ok(None);
        }
        let s0 = &node.states[0];
        let returns = match self.cfg.require_period {
            Some(p) => node.states.get(p as usize) == Some(s0),
            None => node.states[1..].iter().any(|s| s == s0),
        };
        if !returns {
            return Ok(None);
        }
        let report = detect_dynamics(&node.pattern, self.cfg.max_gens)?;
        let period = report.oscillator_period();
        if period.is_none() || self.cfg.require_period.is_some_and(|p| period != Some(p)) {
            return Ok(None);
        }
        let placements = node
            .units
            .iter()
            .flat_map(|&u| self.units[u].placements.iter().copied())
            .collect();
        Ok(Some(SearchSolution {
            placements,
            resulting_pattern: node.pattern.clone(),
            report,
        }))
    }

    fn dfs(&self, node: &Node, budget: &mut Budget, out: &mut Vec<SearchSolution>) -> Result<()> {
        if let Some(s) = self.solution(node)? {
            out.push(s);
        }
        if node.units.len() >= self.cfg.max_catalysts {
            return Ok(());
        }
        for (u, e) in self.children(node) {
            if !budget.take() {
                return Ok(());
            }
            let child = self.child(node, u, e)?;
            self.dfs(&child, budget, out)?;
        }
        Ok(())
    }
}

struct Budget {
    left: Option<u64>,
    used: u64,
    exhausted: bool,
}

impl Budget {
    fn take(&mut self) -> bool {
        if let Some(left) = self.left.as_mut() {
            if *left == 0 {
                self.exhausted = true;
                return false;
            }
            *left -= 1;
        }
        self.used += 1;
        true
    }
}

/// Sorts solutions and drops those equal to an earlier one up to symmetry
/// and translation.
fn finish(mut solutions: Vec<SearchSolution>) -> Result<Vec<SearchSolution>> {
    solutions.sort_by(|a, b| {
        (a.placements.len(), &a.placements).cmp(&(b.placements.len(), &b.placements))
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in solutions {
        if seen.insert(d8_canonical(&s.resulting_pattern)?) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Depth-first catalyst search with just-in-time pruning. Top-level branches
/// run in parallel; the result does not depend on the schedule.
pub fn search_catalysts(cfg: &SearchConfig, par: Parallelism) -> Result<SearchResult> {
    let search = Search::new(cfg)?;
    let root = search.root()?;
    let mut solutions = Vec::new();
    if let Some(s) = search.solution(&root)? {
        solutions.push(s);
    }
    let branches = search.children(&root);
    let results = par_map(
        &branches,
        par,
        |&(u, e)| -> Result<(Vec<SearchSolution>, u64, bool)> {
            let mut budget = Budget {
                left: cfg.max_nodes,
                used: 0,
                exhausted: false,
            };
            let mut out = Vec::new();
            if budget.take() {
                let child = search.child(&root, u, e)?;
                search.dfs(&child, &mut budget, &mut out)?;
            }
            Ok((out, budget.used, !budget.exhausted))
        },
    );
    let mut nodes = 1;
    let mut complete = true;
    for r in results {
        let (sols, used, done) = r?;
        solutions.extend(sols);
        nodes += used;
        complete &= done;
    }
    Ok(SearchResult {
        solutions: finish(solutions)?,
        nodes,
        complete,
    })
}

/// Unpruned reference search: every set of up to `max_catalysts` distinct
/// placements is simulated from scratch and kept if each catalyst starts
/// clear of the rest, engages, recovers in time, and the whole is an
/// oscillator of the required period.
pub fn search_exhaustive(cfg: &SearchConfig) -> Result<SearchResult> {
    let search = Search::new(cfg)?;
    let n = search.units.len();
    let mut solutions = Vec::new();
    let mut nodes = 0;
    let mut combo: Vec<usize> = Vec::new();
    loop {
        nodes += 1;
        if let Some(s) = exhaustive_check(&search, &combo)? {
            solutions.push(s);
        }
        // next combination in lexicographic order, sizes up to max_catalysts
        if combo.len() < cfg.max_catalysts && combo.last().map_or(n > 0, |&l| l + 1 < n) {
            combo.push(combo.last().map_or(0, |&l| l + 1));
            continue;
        }
        loop {
            match combo.pop() {
                None => {
                    return Ok(SearchResult {
                        solutions: finish(solutions)?,
                        nodes,
                        complete: true,
                    })
                }
                Some(l) if l + 1 < n => {
                    combo.push(l + 1);
                    break;
                }
                Some(_) => {}
            }
        }
    }
}

fn exhaustive_check(search: &Search, combo: &[usize]) -> Result<Option<SearchSolution>> {
    let cfg = search.cfg;
    let mut pattern = cfg.active_region.clone();
    for (k, &u) in combo.iter().enumerate() {
        let cells = &search.units[u].cells;
        let others = combo
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(cfg.active_region.clone(), |acc, (_, &v)| {
                acc.union(&search.units[v].cells)
            });
        if cells.within(&others, 1) {
            return Ok(None);
        }
        pattern = pattern.union(cells);
    }
    for (k, &u) in combo.iter().enumerate() {
        let rest: Vec<usize> = combo
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &v)| v)
            .collect();
        let base = rest.iter().fold(cfg.active_region.clone(), |acc, &v| {
            acc.union(&search.units[v].cells)
        });
        let mut grid = PlaneGrid::from_pattern(&base);
        let unit = &search.units[u];
        let mut engaged = false;
        for _ in 0..cfg.max_gens {
            let s = grid.to_pattern();
            if interacts(&s, s.bounding_box(), unit) {
                engaged = true;
                break;
            }
            grid.step()?;
        }
        if !engaged {
            return Ok(None);
        }
    }
    let node = search.simulate(combo.to_vec(), pattern, Vec::new(), 0)?;
    search.solution(&node)
}

/// Search configuration as read from JSON. Patterns are RLE text, with or
/// without a header line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfigFile {
    pub active_region: String,
    pub catalysts: Vec<CatalystFile>,
    pub max_catalysts: usize,
    pub placement_box: Rect,
    pub max_gens: u64,
    #[serde(default)]
    pub require_period: Option<u64>,
    #[serde(default)]
    pub symmetry: Option<C2Symmetry>,
    #[serde(default)]
    pub max_nodes: Option<u64>,
    #[serde(default)]
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalystFile {
    pub name: String,
    pub rle: String,
    #[serde(default)]
    pub allowed_transforms: Option<Vec<Symmetry>>,
    #[serde(default)]
    pub recovery_deadline: Option<u64>,
}

/// Parses RLE text, supplying a header if the text is a bare body.
pub fn parse_pattern_text(text: &str) -> Result<Pattern> {
    let t = text.trim_start();
    if t.starts_with('#') || t.starts_with('x') {
        Ok(parse_rle(t)?.pattern)
    } else {
        Ok(parse_rle(&format!("x = 0, y = 0\n{t}"))?.pattern)
    }
}

impl SearchConfigFile {
    pub fn to_config(&self) -> Result<SearchConfig> {
        let catalysts = self
            .catalysts
            .iter()
            .map(|c| {
                Ok(CatalystSpec {
                    name: c.name.clone(),
                    pattern: parse_pattern_text(&c.rle)?,
                    allowed_transforms: c
                        .allowed_transforms
                        .clone()
                        .unwrap_or_else(|| Symmetry::ALL.to_vec()),
                    recovery_deadline: c.recovery_deadline.unwrap_or(DEFAULT_RECOVERY_DEADLINE),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SearchConfig {
            active_region: parse_pattern_text(&self.active_region)?,
            catalysts,
            max_catalysts: self.max_catalysts,
            placement_box: self.placement_box,
            max_gens: self.max_gens,
            require_period: self.require_period,
            symmetry: self.symmetry,
            max_nodes: self.max_nodes,
        })
    }
}
