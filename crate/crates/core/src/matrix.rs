//! Dense matrices over `F_p` for additive maps of `F_{q^m}`.
//!
//! The basis is the flat coordinate basis: basis vector `i` is the element
//! with code `p^i`. A matrix acts on the digit vector of an element.

use crate::error::PolyError;
use crate::field::{Elem, FieldTower};

/// The matrix of an `F_p`-linear map of `F_{q^m}`, `(n m) × (n m)` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMatrix {
    p: u32,
    dim: usize,
    // row-major, entries in [0, p)
    entries: Vec<u32>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut acc, mut base, mut e) = (1u64, a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Row-reduces `rows` (each of width `width`) in place over `F_p` and returns
/// the pivot columns.
fn row_reduce(p: u32, rows: &mut [Vec<u32>], width: usize) -> Vec<usize> {
    let pm = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = inv_mod(rows[r][col], p) as u64;
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * scale % pm) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col] as u64;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + (pm - pv as u64) * factor) % pm) as u32;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the null space of the stacked rows (all of width `width`).
fn null_space(p: u32, mut rows: Vec<Vec<u32>>, width: usize) -> Vec<Vec<u32>> {
    let pivots = row_reduce(p, &mut rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; width];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Every `F_p` combination of `basis`, as sorted elements.
pub(crate) fn span(tower: &FieldTower, basis: &[Vec<u32>]) -> Vec<Elem> {
    let p = tower.p();
    let dim = tower.degree() as usize;
    let count = (p as u64).pow(basis.len() as u32);
    let mut out = Vec::with_capacity(count as usize);
    let mut coeffs = vec![0u32; basis.len()];
    for _ in 0..count {
        let mut v = vec![0u32; dim];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = ((*x as u64 + *c as u64 * y as u64) % p as u64) as u32;
            }
        }
        out.push(tower.from_digits(&v).expect("digits in range"));
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    out.sort_unstable();
    out
}

impl AdditiveMatrix {
    /// The matrix of an additive map given as a closure; column `i` holds the
    /// digits of `f(p^i)`.
    pub fn from_fn(tower: &FieldTower, f: impl Fn(Elem) -> Elem) -> Self {
        let dim = tower.degree() as usize;
        let p = tower.p();
        let mut entries = vec![0u32; dim * dim];
        let mut basis = 1u32;
        for col in 0..dim {
            let image = tower.digits(f(Elem(basis)));
            for (row, d) in image.into_iter().enumerate() {
                entries[row * dim + col] = d;
            }
            basis *= p;
        }
        AdditiveMatrix { p, dim, entries }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        let dim = tower.degree() as usize;
        let mut entries = vec![0u32; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        AdditiveMatrix {
            p: tower.p(),
            dim,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim).map(<[u32]>::to_vec).collect()
    }

    pub fn apply(&self, tower: &FieldTower, x: Elem) -> Elem {
        let v = tower.digits(x);
        let pm = self.p as u64;
        let out: Vec<u32> = self
            .entries
            .chunks(self.dim)
            .map(|row| {
                (row.iter()
                    .zip(&v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % pm) as u32
            })
            .collect();
        tower.from_digits(&out).expect("digits in range")
    }

    /// `self · rhs`, i.e. the map "apply `rhs`, then `self`".
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let pm = self.p as u64;
        let mut entries = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let s: u64 = (0..d)
                    .map(|k| self.entries[i * d + k] as u64 * rhs.entries[k * d + j] as u64)
                    .sum();
                entries[i * d + j] = (s % pm) as u32;
            }
        }
        AdditiveMatrix {
            p: self.p,
            dim: d,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        row_reduce(self.p, &mut rows, self.dim).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    /// Basis of the null space, as digit vectors.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        null_space(self.p, self.rows(), self.dim)
    }

    /// Basis of the common null space of `self` and `other`.
    pub fn joint_null_space(&self, other: &Self) -> Vec<Vec<u32>> {
        let mut rows = self.rows();
        rows.extend(other.rows());
        null_space(self.p, rows, self.dim)
    }

    /// Every element of the null space, sorted by code.
    pub fn kernel(&self, tower: &FieldTower) -> Vec<Elem> {
        span(tower, &self.null_space())
    }

    pub fn inverse(&self) -> Result<Self, PolyError> {
        let d = self.dim;
        let mut rows: Vec<Vec<u32>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..d).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = row_reduce(self.p, &mut rows, 2 * d);
        if pivots.len() < d || pivots[d - 1] >= d {
            return Err(PolyError::NotInvertible);
        }
        let entries = rows.iter().flat_map(|r| r[d..].iter().copied()).collect();
        Ok(AdditiveMatrix {
            p: self.p,
            dim: d,
            entries,
        })
    }

    /// The unique `x` with `self · x = c`.
    pub fn solve(&self, tower: &FieldTower, c: Elem) -> Result<Elem, PolyError> {
        Ok(self.inverse()?.apply(tower, c))
    }
}
