//! Finite live-cell sets on the integer plane.
//!
//! Coordinates follow RLE reading order everywhere in the crate: `x` grows to
//! the right and `y` grows downward. Cells order row-major (`y` first), so a
//! sorted cell list reads like the page.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Result<Cell> {
        Ok(Cell {
            x: self.x.checked_add(dx).ok_or(Error::CoordinateOverflow)?,
            y: self.y.checked_add(dy).ok_or(Error::CoordinateOverflow)?,
        })
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(i64, i64)> for Cell {
    fn from((x, y): (i64, i64)) -> Self {
        Cell { x, y }
    }
}

/// Inclusive axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Rect {
    pub fn width(&self) -> u64 {
        self.x1.abs_diff(self.x0) + 1
    }

    pub fn height(&self) -> u64 {
        self.y1.abs_diff(self.y0) + 1
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            x0: self.x0.min(other.x0),
            y0: self.y0.min(other.y0),
            x1: self.x1.max(other.x1),
            y1: self.y1.max(other.y1),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        (self.x0..=self.x1).contains(&c.x) && (self.y0..=self.y1).contains(&c.y)
    }
}

/// A finite set of live cells. Every other cell is dead.
///
/// Stored as a sorted, duplicate-free vector, so equality is set equality and
/// the derived ordering is the lexicographic order of the sorted cell lists.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Cell>", into = "Vec<Cell>")]
pub struct Pattern {
    cells: Vec<Cell>,
}

impl Pattern {
    pub fn new() -> Self {
        Pattern { cells: Vec::new() }
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        Pattern { cells }
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Self {
        Self::from_cells(coords.iter().copied().map(Cell::from))
    }

    /// Caller guarantees `cells` is strictly increasing.
    pub(crate) fn from_sorted(cells: Vec<Cell>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        Pattern { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn population(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn bounding_box(&self) -> Option<Rect> {
        let first = self.cells.first()?;
        let last = self.cells.last()?;
        let (mut x0, mut x1) = (first.x, first.x);
        for c in &self.cells {
            x0 = x0.min(c.x);
            x1 = x1.max(c.x);
        }
        Some(Rect {
            x0,
            y0: first.y,
            x1,
            y1: last.y,
        })
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Result<Pattern> {
        let cells = self
            .cells
            .iter()
            .map(|c| c.offset(dx, dy))
            .collect::<Result<Vec<_>>>()?;
        // translation preserves row-major order
        Ok(Pattern::from_sorted(cells))
    }

    /// Translates the bounding box's top-left corner to the origin. Returns the
    /// normalized pattern and the corner it was moved from.
    pub fn normalized(&self) -> Result<(Pattern, Cell)> {
        match self.bounding_box() {
            None => Ok((Pattern::new(), Cell::new(0, 0))),
            Some(r) => {
                let dx = r.x0.checked_neg().ok_or(Error::CoordinateOverflow)?;
                let dy = r.y0.checked_neg().ok_or(Error::CoordinateOverflow)?;
                Ok((self.translate(dx, dy)?, Cell::new(r.x0, r.y0)))
            }
        }
    }

    pub fn union(&self, other: &Pattern) -> Pattern {
        let mut out = Vec::with_capacity(self.cells.len() + other.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < other.cells.len() {
            match self.cells[i].cmp(&other.cells[j]) {
                Ordering::Less => {
                    out.push(self.cells[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.cells[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(self.cells[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.cells[i..]);
        out.extend_from_slice(&other.cells[j..]);
        Pattern::from_sorted(out)
    }

    pub fn difference(&self, other: &Pattern) -> Pattern {
        Pattern::from_sorted(
            self.cells
                .iter()
                .copied()
                .filter(|c| !other.contains(*c))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Pattern) -> Pattern {
        Pattern::from_sorted(
            self.cells
                .iter()
                .copied()
                .filter(|c| other.contains(*c))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &Pattern) -> bool {
        self.cells.iter().all(|c| other.contains(*c))
    }

    /// Smallest Chebyshev distance between a cell of `self` and a cell of
    /// `other`, or `None` if either is empty.
    pub fn chebyshev_distance(&self, other: &Pattern) -> Option<u64> {
        let mut best: Option<u64> = None;
        for a in &self.cells {
            for b in &other.cells {
                let d = a.x.abs_diff(b.x).max(a.y.abs_diff(b.y));
                best = Some(best.map_or(d, |cur| cur.min(d)));
            }
        }
        best
    }

    /// True if some cell of `other` lies within Chebyshev distance `radius`
    /// of a cell of `self`.
    pub fn within(&self, other: &Pattern, radius: u64) -> bool {
        let (Some(ra), Some(rb)) = (self.bounding_box(), other.bounding_box()) else {
            return false;
        };
        let gap_x = if ra.x1 < rb.x0 {
            rb.x0.abs_diff(ra.x1)
        } else if rb.x1 < ra.x0 {
            ra.x0.abs_diff(rb.x1)
        } else {
            0
        };
        let gap_y = if ra.y1 < rb.y0 {
            rb.y0.abs_diff(ra.y1)
        } else if rb.y1 < ra.y0 {
            ra.y0.abs_diff(rb.y1)
        } else {
            0
        };
        if gap_x > radius || gap_y > radius {
            return false;
        }
        let near: HashSet<Cell> = other.cells.iter().copied().collect();
        let r = radius as i64;
        self.cells.iter().any(|a| {
            (-r..=r).any(|dy| {
                (-r..=r).any(|dx| match (a.x.checked_add(dx), a.y.checked_add(dy)) {
                    (Some(x), Some(y)) => near.contains(&Cell::new(x, y)),
                    _ => false,
                })
            })
        })
    }

    /// Splits the pattern into 8-connected components, ordered by their
    /// smallest cell.
    pub fn components(&self) -> Vec<Pattern> {
        let index: HashMap<Cell, usize> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i))
            .collect();
        let mut seen = vec![false; self.cells.len()];
        let mut out = Vec::new();
        for start in 0..self.cells.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                let c = self.cells[i];
                comp.push(c);
                for dy in -1..=1i64 {
                    for dx in -1..=1i64 {
                        let (Some(x), Some(y)) = (c.x.checked_add(dx), c.y.checked_add(dy)) else {
                            continue;
                        };
                        if let Some(&j) = index.get(&Cell::new(x, y)) {
                            if !seen[j] {
                                seen[j] = true;
                                stack.push(j);
                            }
                        }
                    }
                }
            }
            out.push(Pattern::from_cells(comp));
        }
        out
    }
}

impl From<Vec<Cell>> for Pattern {
    fn from(cells: Vec<Cell>) -> Self {
        Pattern::from_cells(cells)
    }
}

impl From<Pattern> for Vec<Cell> {
    fn from(p: Pattern) -> Self {
        p.cells
    }
}

impl FromIterator<Cell> for Pattern {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        Pattern::from_cells(iter)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", c.x, c.y)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_semantics() {
        let p = Pattern::from_coords(&[(1, 0), (0, 0), (1, 0)]);
        assert_eq!(p.population(), 2);
        assert!(p.contains(Cell::new(0, 0)));
        assert!(!p.contains(Cell::new(0, 1)));
        assert_eq!(p, Pattern::from_coords(&[(0, 0), (1, 0)]));
    }

    #[test]
    fn empty_pattern_is_valid() {
        let p = Pattern::new();
        assert!(p.is_empty());
        assert_eq!(p.bounding_box(), None);
        assert_eq!(p.normalized().unwrap().0, p);
    }

    #[test]
    fn normalize_moves_corner_to_origin() {
        let p = Pattern::from_coords(&[(5, -3), (7, -1)]);
        let (n, at) = p.normalized().unwrap();
        assert_eq!(at, Cell::new(5, -3));
        assert_eq!(n, Pattern::from_coords(&[(0, 0), (2, 2)]));
    }

    #[test]
    fn translate_rejects_overflow() {
        let p = Pattern::from_coords(&[(i64::MAX, 0)]);
        assert_eq!(p.translate(1, 0), Err(Error::CoordinateOverflow));
    }

    #[test]
    fn components_split_by_king_moves() {
        let p = Pattern::from_coords(&[(0, 0), (1, 1), (5, 5), (5, 6)]);
        let comps = p.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], Pattern::from_coords(&[(0, 0), (1, 1)]));
    }

    #[test]
    fn within_radius() {
        let a = Pattern::from_coords(&[(0, 0)]);
        let b = Pattern::from_coords(&[(2, 1)]);
        assert!(!a.within(&b, 1));
        assert!(a.within(&b, 2));
        assert_eq!(a.chebyshev_distance(&b), Some(2));
    }
}
