//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^m}`.
//!
//! An element of `F_{q^m}` is stored as its integer code. Writing the element
//! as `Σ_i d_i y^i` over `F_q` and each digit as `d_i = Σ_j c_ij t^j` over
//! `F_p`, the code is `Σ_i d_i q^i = Σ_ij c_ij p^(n i + j)`. The base-`p`
//! digits of a code are therefore exactly its flat `F_p` coordinates, and an
//! element of `F_q` embedded in `F_{q^m}` keeps its code.
//!
//! Multiplication goes through discrete log / antilog tables that are built
//! once per tower from plain polynomial multiplication with reduction; the
//! reduction path stays available as [`FieldTower::mul_by_reduction`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::FieldError;
use crate::irreducible::{is_irreducible, smallest_irreducible, CoeffRing, PrimeRing};

/// Default cap on the number of elements of `F_{q^m}`.
pub const DEFAULT_SIZE_LIMIT: u64 = 1 << 20;

/// An element of a tower, identified by its integer code.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which set of elements to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Full,
    Subfield,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Log/antilog tables for a cyclic multiplicative group of order `size - 1`.
#[derive(Clone, Debug)]
struct LogTables {
    // exp has 2 * (size - 1) entries so that log a + log b needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    order: u32,
}

impl LogTables {
    fn build(size: u32, mul: impl Fn(u32, u32) -> u32) -> Self {
        let order = size - 1;
        let pow = |mut b: u32, mut e: u64| {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, b);
                }
                b = mul(b, b);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(order as u64);
        let generator = (1..size)
            .find(|&g| factors.iter().all(|&r| pow(g, order as u64 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur;
            exp[(i + order) as usize] = cur;
            log[cur as usize] = i;
            cur = mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);
        LogTables { exp, log, order }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let l = self.log[a as usize];
        self.exp[((self.order - l) % self.order) as usize]
    }

    #[inline]
    fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % self.order as u64)) % self.order as u64) as usize]
    }
}

/// Digit-wise addition of base-`p` codes.
#[inline]
fn add_digits(p: u32, mut a: u32, mut b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        let d = (a % p + b % p) % p;
        out += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

#[inline]
fn neg_digits(p: u32, mut a: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        let d = (p - a % p) % p;
        out += d * place;
        place *= p;
        a /= p;
    }
    out
}

/// `F_q = F_p[t]/(base_poly)` on integer codes.
#[derive(Clone, Debug)]
struct BaseField {
    p: u32,
    q: u32,
    poly: Vec<u32>,
    tables: LogTables,
}

impl BaseField {
    fn new(p: u32, n: u32, poly: Vec<u32>) -> Self {
        let q = p.pow(n);
        let tables = LogTables::build(q, |a, b| Self::mul_by_reduction(p, n, &poly, a, b));
        BaseField { p, q, poly, tables }
    }

    fn digits(p: u32, n: u32, mut code: u32) -> Vec<u32> {
        (0..n)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect()
    }

    fn mul_by_reduction(p: u32, n: u32, poly: &[u32], a: u32, b: u32) -> u32 {
        let ring = PrimeRing(p);
        let da = Self::digits(p, n, a);
        let db = Self::digits(p, n, b);
        let mut prod = vec![0u32; 2 * n as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ring.add(prod[i + j], ring.mul(x, y));
            }
        }
        for k in (n as usize..prod.len()).rev() {
            let lead = prod[k];
            if lead != 0 {
                for (i, &c) in poly.iter().enumerate().take(n as usize) {
                    let idx = k - n as usize + i;
                    prod[idx] = ring.sub(prod[idx], ring.mul(lead, c));
                }
                prod[k] = 0;
            }
        }
        prod.iter()
            .take(n as usize)
            .rev()
            .fold(0, |acc, &d| acc * p + d)
    }
}

impl CoeffRing for BaseField {
    fn size(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        add_digits(self.p, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        add_digits(self.p, a, neg_digits(self.p, b))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.tables.mul(a, b)
    }
}

/// Parameters of a tower; also the on-disk field specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_poly: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_poly: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_limit: Option<u64>,
}

impl TowerSpec {
    pub fn new(p: u32, n: u32, m: u32) -> Self {
        TowerSpec {
            p,
            n,
            m,
            base_poly: None,
            ext_poly: None,
            size_limit: None,
        }
    }

    pub fn base_poly(mut self, poly: Vec<u32>) -> Self {
        self.base_poly = Some(poly);
        self
    }

    pub fn ext_poly(mut self, poly: Vec<u32>) -> Self {
        self.ext_poly = Some(poly);
        self
    }

    pub fn size_limit(mut self, limit: u64) -> Self {
        self.size_limit = Some(limit);
        self
    }

    pub fn build(&self) -> Result<FieldTower, FieldError> {
        FieldTower::from_spec(self)
    }
}

static NEXT_TOWER_ID: AtomicU64 = AtomicU64::new(1);

/// The tower `F_p ⊂ F_q = F_{p^n} ⊂ F_{q^m}`, with both defining polynomials.
///
/// Immutable after construction; share it freely across threads.
#[derive(Clone, Debug)]
pub struct FieldTower {
    id: u64,
    p: u32,
    n: u32,
    m: u32,
    size: u32,
    base: BaseField,
    ext_poly: Vec<u32>,
    tables: LogTables,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.m == other.m
            && self.base.poly == other.base.poly
            && self.ext_poly == other.ext_poly
    }
}

impl Eq for FieldTower {}

/// Builds a tower. Omitted polynomials default to the smallest monic
/// irreducible of the required degree.
pub fn make_tower(
    p: u32,
    n: u32,
    m: u32,
    base_poly: Option<Vec<u32>>,
    ext_poly: Option<Vec<u32>>,
) -> Result<FieldTower, FieldError> {
    FieldTower::from_spec(&TowerSpec {
        p,
        n,
        m,
        base_poly,
        ext_poly,
        size_limit: None,
    })
}

impl FieldTower {
    /// Tower with default defining polynomials and the default size limit.
    pub fn new(p: u32, n: u32, m: u32) -> Result<Self, FieldError> {
        make_tower(p, n, m, None, None)
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<Self, FieldError> {
        let TowerSpec { p, n, m, .. } = *spec;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 || m == 0 {
            return Err(FieldError::InvalidDegree { n, m });
        }
        let limit = spec.size_limit.unwrap_or(DEFAULT_SIZE_LIMIT);
        let exp = n * m;
        let size = (p as u64)
            .checked_pow(exp)
            .filter(|&s| s <= limit && s <= u32::MAX as u64);
        let size = match size {
            Some(s) => s as u32,
            None => return Err(FieldError::SizeLimitExceeded { p, exp, limit }),
        };

        let prime = PrimeRing(p);
        let base_poly = match &spec.base_poly {
            Some(poly) => {
                if !is_irreducible(&prime, poly, n) {
                    return Err(FieldError::Reducible {
                        which: "base",
                        poly: poly.clone(),
                        degree: n,
                    });
                }
                poly.clone()
            }
            None => smallest_irreducible(&prime, n),
        };
        let base = BaseField::new(p, n, base_poly);

        let ext_poly = match &spec.ext_poly {
            Some(poly) => {
                if !is_irreducible(&base, poly, m) {
                    return Err(FieldError::Reducible {
                        which: "extension",
                        poly: poly.clone(),
                        degree: m,
                    });
                }
                poly.clone()
            }
            None => smallest_irreducible(&base, m),
        };

        let tables = {
            let q = base.q;
            LogTables::build(size, |a, b| {
                mul_tower_reduction(&base, &ext_poly, m, q, a, b)
            })
        };

        Ok(FieldTower {
            id: NEXT_TOWER_ID.fetch_add(1, Ordering::Relaxed),
            p,
            n,
            m,
            size,
            base,
            ext_poly,
            tables,
        })
    }

    /// The parameters that rebuild this exact tower.
    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p,
            n: self.n,
            m: self.m,
            base_poly: Some(self.base.poly.clone()),
            ext_poly: Some(self.ext_poly.clone()),
            size_limit: None,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// `q = p^n`, the size of the middle field.
    pub fn q(&self) -> u32 {
        self.base.q
    }
    /// `Q = q^m`, the size of the top field.
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Number of `F_p` coordinates, `n * m`.
    pub fn degree(&self) -> u32 {
        self.n * self.m
    }
    pub fn base_poly(&self) -> &[u32] {
        &self.base.poly
    }
    pub fn ext_poly(&self) -> &[u32] {
        &self.ext_poly
    }

    pub fn element(&self, code: u64) -> Result<Elem, FieldError> {
        if code < self.size as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(FieldError::CodeOutOfRange {
                code,
                size: self.size,
            })
        }
    }

    /// Wraps `x` with a reference to this tower for operator-style use.
    pub fn wrap(&self, x: Elem) -> FieldElement<'_> {
        FieldElement { tower: self, x }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(add_digits(self.p, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(neg_digits(self.p, a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.tables.mul(a.0, b.0))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Elem(self.tables.inv(a.0)))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        Elem(self.tables.pow(a.0, e))
    }

    /// `c · 1` for an integer `c`, i.e. `c mod p` in the prime field.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    /// `x^p`.
    #[inline]
    pub fn frobenius_p(&self, x: Elem) -> Elem {
        self.pow(x, self.p as u64)
    }

    /// `x^(p^k)` by `k` applications of the `p`-power map.
    pub fn frobenius_p_iter(&self, x: Elem, k: u32) -> Elem {
        (0..k % self.degree()).fold(x, |acc, _| self.frobenius_p(acc))
    }

    /// `x^(q^k)` by repeated `p`-power maps.
    pub fn frobenius_q(&self, x: Elem, k: u32) -> Elem {
        self.frobenius_p_iter(x, (k % self.m) * self.n)
    }

    /// Whether `x` lies in `F_q`: every tower coordinate above index 0 is zero.
    #[inline]
    pub fn is_in_subfield(&self, x: Elem) -> bool {
        x.0 < self.base.q
    }

    /// Places an `F_q` code as the degree-0 tower coordinate.
    pub fn embed(&self, c: u32) -> Result<Elem, FieldError> {
        if c < self.base.q {
            Ok(Elem(c))
        } else {
            Err(FieldError::CodeOutOfRange {
                code: c as u64,
                size: self.base.q,
            })
        }
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn project(&self, x: Elem) -> Result<u32, FieldError> {
        if self.is_in_subfield(x) {
            Ok(x.0)
        } else {
            Err(FieldError::NotInSubfield(x))
        }
    }

    /// The `n * m` base-`p` digits of `x`, lowest first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        BaseField::digits(self.p, self.degree(), x.0)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem, FieldError> {
        if digits.len() != self.degree() as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(FieldError::CodeOutOfRange {
                code: u64::MAX,
                size: self.size,
            });
        }
        Ok(Elem(
            digits.iter().rev().fold(0, |acc, &d| acc * self.p + d),
        ))
    }

    /// Tower coordinates: `m` digits over `F_q`, each `n` residues mod `p`.
    pub fn coords(&self, x: Elem) -> Vec<Vec<u32>> {
        let flat = self.digits(x);
        flat.chunks(self.n as usize).map(<[u32]>::to_vec).collect()
    }

    pub fn from_coords(&self, coords: &[Vec<u32>]) -> Result<Elem, FieldError> {
        if coords.len() != self.m as usize || coords.iter().any(|c| c.len() != self.n as usize) {
            return Err(FieldError::CodeOutOfRange {
                code: u64::MAX,
                size: self.size,
            });
        }
        let flat: Vec<u32> = coords.iter().flatten().copied().collect();
        self.from_digits(&flat)
    }

    /// Every element of `F_{q^m}` (or of `F_q`) in increasing code order.
    pub fn enumerate(&self, which: Which) -> impl Iterator<Item = Elem> + Clone {
        let bound = match which {
            Which::Full => self.size,
            Which::Subfield => self.base.q,
        };
        (0..bound).map(Elem)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        self.enumerate(Which::Full)
    }

    pub fn subfield_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        self.enumerate(Which::Subfield)
    }

    /// Product by schoolbook multiplication over `F_q` and reduction modulo
    /// the extension polynomial. Slow; independent of the log tables.
    pub fn mul_by_reduction(&self, a: Elem, b: Elem) -> Elem {
        Elem(mul_tower_reduction(
            &self.base,
            &self.ext_poly,
            self.m,
            self.base.q,
            a.0,
            b.0,
        ))
    }

    /// Product of two `F_q` codes by reduction modulo the base polynomial.
    pub fn base_mul_by_reduction(&self, a: u32, b: u32) -> u32 {
        BaseField::mul_by_reduction(self.p, self.n, &self.base.poly, a, b)
    }
}

fn mul_tower_reduction(base: &BaseField, ext: &[u32], m: u32, q: u32, a: u32, b: u32) -> u32 {
    let m = m as usize;
    let da = BaseField::digits(q, m as u32, a);
    let db = BaseField::digits(q, m as u32, b);
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(x, y));
        }
    }
    for k in (m..prod.len()).rev() {
        let lead = prod[k];
        if lead != 0 {
            for (i, &c) in ext.iter().enumerate().take(m) {
                let idx = k - m + i;
                prod[idx] = base.sub(prod[idx], base.mul(lead, c));
            }
            prod[k] = 0;
        }
    }
    prod.iter().take(m).rev().fold(0, |acc, &d| acc * q + d)
}

/// An element together with its tower, for checked, operator-style arithmetic.
#[derive(Clone, Copy)]
pub struct FieldElement<'t> {
    tower: &'t FieldTower,
    x: Elem,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.x.0)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.tower.id == other.tower.id && self.x == other.x
    }
}

impl Eq for FieldElement<'_> {}

impl<'t> FieldElement<'t> {
    pub fn elem(self) -> Elem {
        self.x
    }

    pub fn code(self) -> u32 {
        self.x.0
    }

    pub fn tower(self) -> &'t FieldTower {
        self.tower
    }

    fn same(self, other: Self) -> Result<(), FieldError> {
        if self.tower.id == other.tower.id {
            Ok(())
        } else {
            Err(FieldError::MixedTowers)
        }
    }

    fn with(self, x: Elem) -> Self {
        FieldElement {
            tower: self.tower,
            x,
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, FieldError> {
        self.same(rhs)?;
        Ok(self.with(self.tower.add(self.x, rhs.x)))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, FieldError> {
        self.same(rhs)?;
        Ok(self.with(self.tower.sub(self.x, rhs.x)))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, FieldError> {
        self.same(rhs)?;
        Ok(self.with(self.tower.mul(self.x, rhs.x)))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, FieldError> {
        self.same(rhs)?;
        Ok(self.with(self.tower.div(self.x, rhs.x)?))
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        Ok(self.with(self.tower.inv(self.x)?))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.tower.pow(self.x, e))
    }

    pub fn frobenius_q(self, k: u32) -> Self {
        self.with(self.tower.frobenius_q(self.x, k))
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'t> $tr for FieldElement<'t> {
            type Output = FieldElement<'t>;
            /// Panics if the operands come from different towers.
            fn $method(self, rhs: Self) -> Self::Output {
                self.$checked(rhs).expect("operands from different towers")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<'t> Neg for FieldElement<'t> {
    type Output = FieldElement<'t>;
    fn neg(self) -> Self::Output {
        self.with(self.tower.neg(self.x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldTower {
        FieldTower::new(2, 1, 3).unwrap()
    }

    fn f16_over_f4() -> FieldTower {
        make_tower(2, 2, 2, Some(vec![1, 1, 1]), Some(vec![2, 1, 1])).unwrap()
    }

    #[test]
    fn default_polynomials() {
        let t = f8();
        assert_eq!(t.ext_poly(), &[1, 1, 0, 1]);
        assert_eq!(t.base_poly(), &[0, 1]);
        assert_eq!(t.size(), 8);
        let t = FieldTower::new(2, 2, 2).unwrap();
        assert_eq!(t.base_poly(), &[1, 1, 1]);
        // y^2 + y + t: code 6 is the first irreducible
        assert_eq!(t.ext_poly(), &[2, 1, 1]);
        assert_eq!(t, f16_over_f4());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldTower::new(4, 1, 1), Err(FieldError::NotPrime(4)));
        assert!(matches!(
            make_tower(2, 2, 2, Some(vec![1, 0, 1]), None),
            Err(FieldError::Reducible { which: "base", .. })
        ));
        // y^2 + y + 1 has the root t in F_4
        assert!(matches!(
            make_tower(2, 2, 2, None, Some(vec![1, 1, 1])),
            Err(FieldError::Reducible {
                which: "extension",
                ..
            })
        ));
        assert!(matches!(
            FieldTower::new(2, 7, 3),
            Err(FieldError::SizeLimitExceeded { .. })
        ));
        assert!(TowerSpec::new(2, 7, 3).size_limit(1 << 21).build().is_ok());
        assert!(matches!(
            FieldTower::new(3, 0, 2),
            Err(FieldError::InvalidDegree { .. })
        ));
    }

    #[test]
    fn small_products() {
        let t = f8();
        // t * t^2 = t^3 = t + 1
        assert_eq!(t.mul(Elem(2), Elem(4)), Elem(3));
        let f5 = FieldTower::new(5, 1, 1).unwrap();
        assert_eq!(f5.inv(Elem(2)), Ok(Elem(3)));
        assert_eq!(f5.inv(Elem(0)), Err(FieldError::DivisionByZero));
        assert_eq!(f5.neg(Elem(2)), Elem(3));
    }

    #[test]
    fn tables_match_reduction() {
        for (p, n, m) in [
            (2, 1, 3),
            (2, 2, 2),
            (3, 1, 2),
            (5, 1, 2),
            (3, 2, 2),
            (2, 3, 2),
        ] {
            let t = FieldTower::new(p, n, m).unwrap();
            for a in t.elements() {
                for b in t.elements() {
                    assert_eq!(t.mul(a, b), t.mul_by_reduction(a, b), "{p} {n} {m}");
                }
            }
        }
    }

    #[test]
    fn frobenius_in_f16() {
        let t = f16_over_f4();
        let y = Elem(4); // y has tower coords (0, 1)
                         // y^4 = y + 1
        assert_eq!(t.frobenius_q(y, 1), t.add(y, Elem::ONE));
        for x in t.elements() {
            assert_eq!(t.frobenius_q(x, t.m()), x);
            assert_eq!(t.frobenius_q(t.frobenius_q(x, 1), t.m() - 1), x);
            assert_eq!(t.frobenius_q(x, 1), t.pow(x, 4));
        }
        for c in t.subfield_elements() {
            assert_eq!(t.frobenius_q(c, 1), c);
        }
    }

    #[test]
    fn subfield_embedding() {
        let t = f16_over_f4();
        assert_eq!(t.embed(1).unwrap(), Elem::ONE);
        // t*y + 1 has a nonzero top coordinate
        let x = t.add(t.mul(Elem(2), Elem(4)), Elem::ONE);
        assert_eq!(t.project(x), Err(FieldError::NotInSubfield(x)));
        for c in 0..t.q() {
            assert_eq!(t.project(t.embed(c).unwrap()), Ok(c));
        }
        assert!(t.embed(4).is_err());
        for x in t.elements() {
            assert_eq!(t.is_in_subfield(x), t.frobenius_q(x, 1) == x);
        }
    }

    #[test]
    fn enumeration() {
        let t = f8();
        let all: Vec<u32> = t.elements().map(Elem::code).collect();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
        let t = f16_over_f4();
        let sub: Vec<Elem> = t.enumerate(Which::Subfield).collect();
        assert_eq!(sub.len(), 4);
        assert!(sub.iter().all(|&x| t.pow(x, 4) == x));
    }

    #[test]
    fn coords_round_trip() {
        let t = FieldTower::new(3, 2, 2).unwrap();
        for x in t.elements() {
            let c = t.coords(x);
            assert_eq!(c.len(), 2);
            assert_eq!(t.from_coords(&c), Ok(x));
            let digit: Vec<u32> = c.iter().map(|d| d[0] + 3 * d[1]).collect();
            assert_eq!(x.code(), digit[0] + 9 * digit[1]);
        }
    }

    #[test]
    fn wrapped_ops() {
        let a = f8();
        let b = f8();
        let x = a.wrap(Elem(3));
        let y = a.wrap(Elem(5));
        assert_eq!((x + (-x)).code(), 0);
        assert_eq!((x * y).elem(), a.mul(Elem(3), Elem(5)));
        assert_eq!(x.checked_add(b.wrap(Elem(1))), Err(FieldError::MixedTowers));
        assert_eq!(x.inv().unwrap().checked_mul(x).unwrap().code(), 1);
        assert_eq!(a.wrap(Elem(0)).inv(), Err(FieldError::DivisionByZero));
    }
}
