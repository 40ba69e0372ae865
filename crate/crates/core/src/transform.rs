//! The eight symmetries of the square, optionally followed by a translation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{Cell, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Identity,
    /// Quarter turn clockwise on screen (y down): (x, y) -> (-y, x).
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left-right: (x, y) -> (-x, y).
    FlipX,
    /// Mirror top-bottom: (x, y) -> (x, -y).
    FlipY,
    /// Transpose: (x, y) -> (y, x).
    FlipDiag,
    /// (x, y) -> (-y, -x).
    FlipAntiDiag,
}

type Matrix = [[i64; 2]; 2];

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipX,
        Symmetry::FlipY,
        Symmetry::FlipDiag,
        Symmetry::FlipAntiDiag,
    ];

    fn matrix(self) -> Matrix {
        match self {
            Symmetry::Identity => [[1, 0], [0, 1]],
            Symmetry::Rot90 => [[0, -1], [1, 0]],
            Symmetry::Rot180 => [[-1, 0], [0, -1]],
            Symmetry::Rot270 => [[0, 1], [-1, 0]],
            Symmetry::FlipX => [[-1, 0], [0, 1]],
            Symmetry::FlipY => [[1, 0], [0, -1]],
            Symmetry::FlipDiag => [[0, 1], [1, 0]],
            Symmetry::FlipAntiDiag => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: Matrix) -> Symmetry {
        Symmetry::ALL
            .into_iter()
            .find(|s| s.matrix() == m)
            .expect("D8 is closed under multiplication")
    }

    pub fn apply(self, x: i64, y: i64) -> Result<(i64, i64)> {
        let m = self.matrix();
        let term = |a: i64, v: i64| -> Result<i64> {
            match a {
                0 => Ok(0),
                1 => Ok(v),
                _ => v.checked_neg().ok_or(Error::CoordinateOverflow),
            }
        };
        // each row has exactly one non-zero entry, so no sums can overflow
        Ok((
            term(m[0][0], x)? + term(m[0][1], y)?,
            term(m[1][0], x)? + term(m[1][1], y)?,
        ))
    }

    /// `self.then(other)` applies `self` first, then `other`.
    pub fn then(self, other: Symmetry) -> Symmetry {
        let (a, b) = (other.matrix(), self.matrix());
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Symmetry::from_matrix(m)
    }

    pub fn inverse(self) -> Symmetry {
        let m = self.matrix();
        Symmetry::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }
}

/// A symmetry followed by a translation: `c -> S(c) + (dx, dy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D8Transform {
    pub symmetry: Symmetry,
    pub dx: i64,
    pub dy: i64,
}

impl D8Transform {
    pub const IDENTITY: D8Transform = D8Transform {
        symmetry: Symmetry::Identity,
        dx: 0,
        dy: 0,
    };

    pub fn new(symmetry: Symmetry, dx: i64, dy: i64) -> Self {
        D8Transform { symmetry, dx, dy }
    }

    pub fn translation(dx: i64, dy: i64) -> Self {
        D8Transform::new(Symmetry::Identity, dx, dy)
    }

    pub fn symmetry(symmetry: Symmetry) -> Self {
        D8Transform::new(symmetry, 0, 0)
    }

    pub fn apply(&self, c: Cell) -> Result<Cell> {
        let (x, y) = self.symmetry.apply(c.x, c.y)?;
        Cell::new(x, y).offset(self.dx, self.dy)
    }

    /// `self.then(other)` applies `self` first, then `other`.
    pub fn then(&self, other: &D8Transform) -> Result<D8Transform> {
        let (tx, ty) = other.symmetry.apply(self.dx, self.dy)?;
        Ok(D8Transform {
            symmetry: self.symmetry.then(other.symmetry),
            dx: tx.checked_add(other.dx).ok_or(Error::CoordinateOverflow)?,
            dy: ty.checked_add(other.dy).ok_or(Error::CoordinateOverflow)?,
        })
    }

    pub fn inverse(&self) -> Result<D8Transform> {
        let inv = self.symmetry.inverse();
        let (x, y) = inv.apply(self.dx, self.dy)?;
        Ok(D8Transform {
            symmetry: inv,
            dx: x.checked_neg().ok_or(Error::CoordinateOverflow)?,
            dy: y.checked_neg().ok_or(Error::CoordinateOverflow)?,
        })
    }
}

pub fn transform(p: &Pattern, g: &D8Transform) -> Result<Pattern> {
    p.iter()
        .map(|c| g.apply(c))
        .collect::<Result<Vec<_>>>()
        .map(Pattern::from_cells)
}

/// Lexicographically least origin-normalized image of `p` under the eight
/// symmetries.
pub fn d8_canonical(p: &Pattern) -> Result<Pattern> {
    let mut best: Option<Pattern> = None;
    for s in Symmetry::ALL {
        let (img, _) = transform(p, &D8Transform::symmetry(s))?.normalized()?;
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    Ok(best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_closure_identity_inverse() {
        for a in Symmetry::ALL {
            assert_eq!(a.then(Symmetry::Identity), a);
            assert_eq!(a.then(a.inverse()), Symmetry::Identity);
            for b in Symmetry::ALL {
                let ab = a.then(b);
                let (x, y) = a.apply(3, 7).unwrap();
                let (x, y) = b.apply(x, y).unwrap();
                assert_eq!(ab.apply(3, 7).unwrap(), (x, y));
            }
        }
    }

    #[test]
    fn rot90_four_times_is_identity() {
        let r = Symmetry::Rot90;
        assert_eq!(r.then(r).then(r).then(r), Symmetry::Identity);
        assert_eq!(r.then(r), Symmetry::Rot180);
    }

    #[test]
    fn transform_inverse_roundtrip() {
        let p = Pattern::from_coords(&[(0, 0), (2, 1), (-3, 5)]);
        let g = D8Transform::new(Symmetry::FlipAntiDiag, 4, -9);
        let back = transform(&transform(&p, &g).unwrap(), &g.inverse().unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn overflow_is_reported() {
        let p = Pattern::from_coords(&[(i64::MIN, 0)]);
        let g = D8Transform::symmetry(Symmetry::FlipX);
        assert_eq!(transform(&p, &g), Err(Error::CoordinateOverflow));
    }
}
