use std::hash::{Hash, Hasher};

use super::plane::next_word;
use super::Torus;
use crate::error::Result;
use crate::pattern::{Cell, Pattern};

/// Dense torus: `height` rows of `ceil(width / 64)` words each. Bits past
/// `width` in the last word of a row are always clear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGrid {
    torus: Torus,
    words: usize,
    rows: Vec<u64>,
}

impl Hash for TorusGrid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl TorusGrid {
    pub fn new(torus: Torus) -> Self {
        let words = torus.width().div_ceil(64);
        TorusGrid {
            torus,
            words,
            rows: vec![0; words * torus.height()],
        }
    }

    pub fn from_pattern(torus: Torus, p: &Pattern) -> Result<Self> {
        torus.check(p)?;
        let mut g = TorusGrid::new(torus);
        for c in p.iter() {
            g.set(c.x as usize, c.y as usize);
        }
        Ok(g)
    }

    /// Rebuilds a grid from words previously returned by [`TorusGrid::words`].
    pub fn from_words(torus: Torus, rows: Vec<u64>) -> Self {
        let words = torus.width().div_ceil(64);
        assert_eq!(
            rows.len(),
            words * torus.height(),
            "word count does not match the torus"
        );
        TorusGrid { torus, words, rows }
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    /// Raw row words, `ceil(width / 64)` per row.
    pub fn words(&self) -> &[u64] {
        &self.rows
    }

    pub fn set(&mut self, x: usize, y: usize) {
        self.rows[y * self.words + x / 64] |= 1 << (x % 64);
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.rows[y * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    pub fn population(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn to_pattern(&self) -> Pattern {
        let mut cells = Vec::with_capacity(self.population());
        for y in 0..self.torus.height() {
            for j in 0..self.words {
                let mut bits = self.rows[y * self.words + j];
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    cells.push(Cell::new((j * 64 + i) as i64, y as i64));
                }
            }
        }
        Pattern::from_cells(cells)
    }

    /// Bitwise OR of another grid on the same torus into this one.
    pub fn or_assign(&mut self, other: &TorusGrid) {
        debug_assert_eq!(self.torus, other.torus);
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            *a |= b;
        }
    }

    fn last_mask(&self) -> u64 {
        match self.torus.width() % 64 {
            0 => u64::MAX,
            r => (1 << r) - 1,
        }
    }

    /// West and east neighbour rows of `row`, with horizontal wraparound.
    fn shifts(&self, row: &[u64], west: &mut [u64], east: &mut [u64]) {
        let n = self.words;
        let top = (self.torus.width() - 1) % 64;
        let last_bit = row[n - 1] >> top & 1;
        for j in 0..n {
            let carry_in = if j > 0 { row[j - 1] >> 63 } else { last_bit };
            west[j] = (row[j] << 1) | carry_in;
            let carry_r = if j + 1 < n { row[j + 1] << 63 } else { 0 };
            east[j] = (row[j] >> 1) | carry_r;
        }
        east[n - 1] |= (row[0] & 1) << top;
    }

    pub fn step(&mut self) {
        let (n, h) = (self.words, self.torus.height());
        let mask = self.last_mask();
        let mut west = vec![0u64; n * h];
        let mut east = vec![0u64; n * h];
        for y in 0..h {
            let r = y * n..(y + 1) * n;
            let (w, e) = (&mut west[r.clone()], &mut east[r.clone()]);
            self.shifts(&self.rows[r], w, e);
        }
        let mut next = vec![0u64; n * h];
        for y in 0..h {
            let a = ((y + h - 1) % h) * n;
            let b = y * n;
            let d = ((y + 1) % h) * n;
            for j in 0..n {
                next[b + j] = next_word(
                    west[a + j],
                    self.rows[a + j],
                    east[a + j],
                    west[b + j],
                    self.rows[b + j],
                    east[b + j],
                    west[d + j],
                    self.rows[d + j],
                    east[d + j],
                );
            }
            next[b + n - 1] &= mask;
        }
        self.rows = next;
    }
}
