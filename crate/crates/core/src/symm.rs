//! `F_q`-valued functions of the Frobenius conjugates `x, x^q, …, x^(q^(m-1))`:
//! the relative trace, the elementary symmetric functions `λ_j`, and the
//! power traces `μ_j(x) = Tr(x^j)`.
//!
//! Values are returned as elements of `F_{q^m}` whose code is below `q`,
//! which is the embedded `F_q` value.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::SymmError;
use crate::field::{Elem, FieldTower};
use crate::par;

#[inline]
fn subfield_valued(tower: &FieldTower, v: Elem, what: &str) -> Elem {
    assert!(
        tower.is_in_subfield(v),
        "{what} produced {v:?} outside F_q; tower arithmetic is broken"
    );
    v
}

/// The conjugates `x^(q^i)` for `i < m`.
pub fn conjugates(tower: &FieldTower, x: Elem) -> Vec<Elem> {
    let mut out = Vec::with_capacity(tower.m() as usize);
    let mut c = x;
    for _ in 0..tower.m() {
        out.push(c);
        c = tower.frobenius_q(c, 1);
    }
    out
}

/// `Tr_{F_{q^m}/F_q}(x)`.
pub fn trace_rel(tower: &FieldTower, x: Elem) -> Elem {
    let s = conjugates(tower, x)
        .into_iter()
        .fold(Elem::ZERO, |acc, c| tower.add(acc, c));
    subfield_valued(tower, s, "trace")
}

fn check_lambda_index(tower: &FieldTower, j: u32) -> Result<(), SymmError> {
    if j == 0 || j >= tower.m() {
        return Err(SymmError::IndexOutOfRange {
            kind: "lambda",
            j: j as u64,
            lo: 1,
            hi: tower.m() as u64 - 1,
        });
    }
    Ok(())
}

fn check_mu_index(tower: &FieldTower, j: u64) -> Result<(), SymmError> {
    let hi = tower.size() as u64 - 1;
    if j == 0 || j > hi {
        return Err(SymmError::IndexOutOfRange {
            kind: "mu",
            j,
            lo: 1,
            hi,
        });
    }
    Ok(())
}

/// `λ_j(x) = σ_j(x, x^q, …, x^(q^(m-1)))`, read off the expansion of
/// `Π_i (T + x^(q^i))`.
pub fn lambda_j(tower: &FieldTower, x: Elem, j: u32) -> Result<Elem, SymmError> {
    check_lambda_index(tower, j)?;
    Ok(lambda_unchecked(tower, x, j))
}

fn lambda_unchecked(tower: &FieldTower, x: Elem, j: u32) -> Elem {
    let j = j as usize;
    // e[k] = σ_k of the conjugates seen so far
    let mut e = vec![Elem::ZERO; j + 1];
    e[0] = Elem::ONE;
    for (seen, c) in conjugates(tower, x).into_iter().enumerate() {
        for k in (1..=j.min(seen + 1)).rev() {
            e[k] = tower.add(e[k], tower.mul(e[k - 1], c));
        }
    }
    subfield_valued(tower, e[j], "lambda")
}

/// `λ_j` by summing `x^(q^i1 + … + q^ij)` over all index sets
/// `i1 < … < ij`. Exponential in `m`; kept as an independent route.
pub fn lambda_j_by_subsets(tower: &FieldTower, x: Elem, j: u32) -> Result<Elem, SymmError> {
    check_lambda_index(tower, j)?;
    let m = tower.m() as usize;
    let q = tower.q() as u64;
    let mut acc = Elem::ZERO;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() != j {
            continue;
        }
        let exponent: u64 = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| q.pow(i as u32))
            .sum();
        acc = tower.add(acc, tower.pow(x, exponent));
    }
    Ok(acc)
}

/// `μ_j(x) = Tr(x^j)`, for `1 ≤ j ≤ q^m - 1`.
pub fn mu_j(tower: &FieldTower, x: Elem, j: u64) -> Result<Elem, SymmError> {
    check_mu_index(tower, j)?;
    Ok(trace_rel(tower, tower.pow(x, j)))
}

/// Selects one of the functions `Tr`, `λ_j`, `μ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetricKind {
    Trace,
    Lambda(u32),
    Mu(u64),
}

impl SymmetricKind {
    pub fn validate(self, tower: &FieldTower) -> Result<Self, SymmError> {
        match self {
            SymmetricKind::Trace => {}
            SymmetricKind::Lambda(j) => check_lambda_index(tower, j)?,
            SymmetricKind::Mu(j) => check_mu_index(tower, j)?,
        }
        Ok(self)
    }

    pub fn eval(self, tower: &FieldTower, x: Elem) -> Result<Elem, SymmError> {
        match self {
            SymmetricKind::Trace => Ok(trace_rel(tower, x)),
            SymmetricKind::Lambda(j) => lambda_j(tower, x, j),
            SymmetricKind::Mu(j) => mu_j(tower, x, j),
        }
    }

    /// Values on every element of `F_{q^m}`, in code order.
    pub fn table(self, tower: &FieldTower) -> Result<Vec<Elem>, SymmError> {
        self.validate(tower)?;
        Ok(par::map_indices(tower.size(), |x| {
            self.eval(tower, Elem(x)).expect("validated index")
        }))
    }
}

impl fmt::Display for SymmetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricKind::Trace => write!(f, "tr"),
            SymmetricKind::Lambda(j) => write!(f, "lambda:{j}"),
            SymmetricKind::Mu(j) => write!(f, "mu:{j}"),
        }
    }
}

impl FromStr for SymmetricKind {
    type Err = SymmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SymmError::UnknownKind(s.to_owned());
        if s == "tr" {
            return Ok(SymmetricKind::Trace);
        }
        let (name, j) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "lambda" => Ok(SymmetricKind::Lambda(j.parse().map_err(|_| bad())?)),
            "mu" => Ok(SymmetricKind::Mu(j.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// The exhaustive image of `kind` on `F_{q^m}`, sorted.
pub fn image_of(tower: &FieldTower, kind: SymmetricKind) -> Result<Vec<Elem>, SymmError> {
    let values: BTreeSet<Elem> = kind.table(tower)?.into_iter().collect();
    Ok(values.into_iter().collect())
}
