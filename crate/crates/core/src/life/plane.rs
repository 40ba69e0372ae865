use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pattern::{Cell, Pattern};

const TILE: i64 = 64;

type Tile = [u64; 64];

/// Sparse plane made of 64x64 tiles. Row `r` of a tile is one word whose bit
/// `i` is the cell at column offset `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneGrid {
    tiles: HashMap<(i64, i64), Box<Tile>>,
}

#[derive(Clone, Copy, Default)]
struct Row3 {
    w: u64,
    c: u64,
    e: u64,
}

#[inline]
fn full_add(a: u64, b: u64, c: u64) -> (u64, u64) {
    let t = a ^ b;
    (t ^ c, (a & b) | (t & c))
}

#[inline]
fn half_add(a: u64, b: u64) -> (u64, u64) {
    (a ^ b, a & b)
}

/// Bit-sliced B3/S23 on one word: `a` is the row above, `b` the row itself,
/// `d` the row below.
#[inline]
#[allow(clippy::too_many_arguments)]
pub(super) fn next_word(
    a_w: u64,
    a_c: u64,
    a_e: u64,
    b_w: u64,
    b_c: u64,
    b_e: u64,
    d_w: u64,
    d_c: u64,
    d_e: u64,
) -> u64 {
    let (s_a, c_a) = full_add(a_w, a_c, a_e);
    let (s_d, c_d) = full_add(d_w, d_c, d_e);
    let (s_m, c_m) = half_add(b_w, b_e);
    let (ones, c1) = full_add(s_a, s_d, s_m);
    let (t, c2) = full_add(c_a, c_d, c_m);
    let (twos, c3) = half_add(t, c1);
    let fours = c2 | c3;
    twos & !fours & (ones | b_c)
}

impl PlaneGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pattern(p: &Pattern) -> Self {
        let mut g = PlaneGrid::new();
        for c in p.iter() {
            g.set(c);
        }
        g
    }

    pub fn set(&mut self, c: Cell) {
        let key = (c.x.div_euclid(TILE), c.y.div_euclid(TILE));
        let tile = self.tiles.entry(key).or_insert_with(|| Box::new([0; 64]));
        tile[c.y.rem_euclid(TILE) as usize] |= 1 << c.x.rem_euclid(TILE);
    }

    pub fn get(&self, c: Cell) -> bool {
        let key = (c.x.div_euclid(TILE), c.y.div_euclid(TILE));
        self.tiles
            .get(&key)
            .is_some_and(|t| t[c.y.rem_euclid(TILE) as usize] >> c.x.rem_euclid(TILE) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn population(&self) -> usize {
        self.tiles
            .values()
            .map(|t| t.iter().map(|r| r.count_ones() as usize).sum::<usize>())
            .sum()
    }

    pub fn to_pattern(&self) -> Pattern {
        let mut cells = Vec::with_capacity(self.population());
        for (&(tx, ty), tile) in &self.tiles {
            for (r, &row) in tile.iter().enumerate() {
                let mut bits = row;
                while bits != 0 {
                    let i = bits.trailing_zeros() as i64;
                    bits &= bits - 1;
                    cells.push(Cell::new(tx * TILE + i, ty * TILE + r as i64));
                }
            }
        }
        Pattern::from_cells(cells)
    }

    /// One generation of `p` on the plane.
    pub fn stepped(p: &Pattern) -> Result<Pattern> {
        let mut g = PlaneGrid::from_pattern(p);
        g.step()?;
        Ok(g.to_pattern())
    }

    fn check_bounds(&self) -> Result<()> {
        let (lo, hi) = (i64::MIN.div_euclid(TILE), i64::MAX.div_euclid(TILE));
        for (&(tx, ty), tile) in &self.tiles {
            if ty == lo && tile[0] != 0 || ty == hi && tile[63] != 0 {
                return Err(Error::CoordinateOverflow);
            }
            let cols = tile.iter().fold(0, |acc, r| acc | r);
            if tx == lo && cols & 1 != 0 || tx == hi && cols >> 63 != 0 {
                return Err(Error::CoordinateOverflow);
            }
        }
        Ok(())
    }

    /// Advances one generation. Fails without modifying the grid if a live cell
    /// sits on the edge of the representable coordinate range.
    pub fn step(&mut self) -> Result<()> {
        self.check_bounds()?;
        let mut todo: Vec<(i64, i64)> = Vec::with_capacity(self.tiles.len() * 2);
        for (&(tx, ty), tile) in &self.tiles {
            todo.push((tx, ty));
            let top = tile[0];
            let bottom = tile[63];
            let cols = tile.iter().fold(0, |acc, r| acc | r);
            let left = cols & 1 != 0;
            let right = cols >> 63 != 0;
            if top != 0 {
                todo.push((tx, ty - 1));
            }
            if bottom != 0 {
                todo.push((tx, ty + 1));
            }
            if left {
                todo.push((tx - 1, ty));
            }
            if right {
                todo.push((tx + 1, ty));
            }
            if top & 1 != 0 {
                todo.push((tx - 1, ty - 1));
            }
            if top >> 63 != 0 {
                todo.push((tx + 1, ty - 1));
            }
            if bottom & 1 != 0 {
                todo.push((tx - 1, ty + 1));
            }
            if bottom >> 63 != 0 {
                todo.push((tx + 1, ty + 1));
            }
        }
        todo.sort_unstable();
        todo.dedup();

        let mut next = HashMap::with_capacity(todo.len());
        for (tx, ty) in todo {
            let tile = self.next_tile(tx, ty);
            if tile.iter().any(|&r| r != 0) {
                next.insert((tx, ty), tile);
            }
        }
        self.tiles = next;
        Ok(())
    }

    fn next_tile(&self, tx: i64, ty: i64) -> Box<Tile> {
        let zero: Tile = [0; 64];
        let get = |dx: i64, dy: i64| -> &Tile {
            self.tiles.get(&(tx + dx, ty + dy)).map_or(&zero, |t| t)
        };
        let (nw, n, ne) = (get(-1, -1), get(0, -1), get(1, -1));
        let (w, c, e) = (get(-1, 0), get(0, 0), get(1, 0));
        let (sw, s, se) = (get(-1, 1), get(0, 1), get(1, 1));

        let row3 = |l: u64, m: u64, r: u64| Row3 {
            w: (m << 1) | (l >> 63),
            c: m,
            e: (m >> 1) | (r << 63),
        };
        let mut ext = [Row3::default(); 66];
        ext[0] = row3(nw[63], n[63], ne[63]);
        for r in 0..64 {
            ext[r + 1] = row3(w[r], c[r], e[r]);
        }
        ext[65] = row3(sw[0], s[0], se[0]);

        let mut out = Box::new([0u64; 64]);
        for r in 0..64 {
            let (a, b, d) = (ext[r], ext[r + 1], ext[r + 2]);
            out[r] = next_word(a.w, a.c, a.e, b.w, b.c, b.e, d.w, d.c, d.e);
        }
        out
    }
}
