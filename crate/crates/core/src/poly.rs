//! Ordinary and linearized polynomials over a tower.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{PolyError, SymmError};
use crate::field::{Elem, FieldTower, Which};
use crate::matrix::AdditiveMatrix;

/// Field the coefficients of a [`SubfieldPoly`] are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    /// `F_q`
    Base,
    /// `F_{q^m}`
    Ext,
}

/// A dense polynomial, coefficients low-to-high, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubfieldPoly {
    coeffs: Vec<Elem>,
    field: CoeffField,
}

impl SubfieldPoly {
    pub fn new(
        tower: &FieldTower,
        coeffs: Vec<Elem>,
        field: CoeffField,
    ) -> Result<Self, PolyError> {
        for &c in &coeffs {
            tower.element(c.code() as u64)?;
            if field == CoeffField::Base && !tower.is_in_subfield(c) {
                return Err(PolyError::CoefficientNotInSubfield(c));
            }
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(SubfieldPoly { coeffs, field })
    }

    /// Polynomial over `F_q` from integer codes, low-to-high.
    pub fn over_base(tower: &FieldTower, codes: &[u32]) -> Result<Self, PolyError> {
        Self::new(
            tower,
            codes.iter().copied().map(Elem).collect(),
            CoeffField::Base,
        )
    }

    pub fn zero(field: CoeffField) -> Self {
        SubfieldPoly {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn constant(tower: &FieldTower, c: Elem) -> Result<Self, PolyError> {
        let field = if tower.is_in_subfield(c) {
            CoeffField::Base
        } else {
            CoeffField::Ext
        };
        Self::new(tower, vec![c], field)
    }

    /// Parses the text form `"2,1,1"` (codes low-to-high).
    pub fn parse(tower: &FieldTower, text: &str, field: CoeffField) -> Result<Self, PolyError> {
        let codes = parse_codes(text)?;
        Self::new(tower, codes.into_iter().map(Elem).collect(), field)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, tower: &FieldTower, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| tower.add(tower.mul(acc, x), c))
    }

    /// Values at every element of `F_q`, in code order.
    pub fn table_on_subfield(&self, tower: &FieldTower) -> Vec<Elem> {
        tower
            .enumerate(Which::Subfield)
            .map(|x| self.eval(tower, x))
            .collect()
    }
}

impl fmt::Display for SubfieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn parse_err(text: &str, reason: impl Into<String>) -> PolyError {
    PolyError::Parse {
        text: text.to_owned(),
        reason: reason.into(),
    }
}

fn parse_codes(text: &str) -> Result<Vec<u32>, PolyError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| parse_err(text, format!("{s:?}: {e}")))
        })
        .collect()
}

/// An additive polynomial `Σ a_i x^(p^i)` with `i` in `[0, n m)`.
///
/// Indices that are multiples of `n` give the `q`-polynomial terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearizedPoly {
    terms: BTreeMap<u32, Elem>,
}

impl LinearizedPoly {
    pub fn new(
        tower: &FieldTower,
        terms: impl IntoIterator<Item = (u32, Elem)>,
    ) -> Result<Self, PolyError> {
        let limit = tower.degree();
        let mut out: BTreeMap<u32, Elem> = BTreeMap::new();
        for (i, c) in terms {
            if i >= limit {
                return Err(PolyError::IndexOutOfRange { index: i, limit });
            }
            tower.element(c.code() as u64)?;
            let slot = out.entry(i).or_insert(Elem::ZERO);
            *slot = tower.add(*slot, c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LinearizedPoly { terms: out })
    }

    pub fn zero() -> Self {
        LinearizedPoly::default()
    }

    /// `x`
    pub fn identity() -> Self {
        LinearizedPoly {
            terms: BTreeMap::from([(0, Elem::ONE)]),
        }
    }

    /// `c x`
    pub fn scalar(c: Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        LinearizedPoly { terms }
    }

    /// `x^(q^k)`
    pub fn frobenius_q(tower: &FieldTower, k: u32) -> Self {
        LinearizedPoly {
            terms: BTreeMap::from([((k % tower.m()) * tower.n(), Elem::ONE)]),
        }
    }

    /// `Tr(x) = x + x^q + … + x^(q^(m-1))`
    pub fn trace(tower: &FieldTower) -> Self {
        LinearizedPoly {
            terms: (0..tower.m()).map(|i| (i * tower.n(), Elem::ONE)).collect(),
        }
    }

    /// `x^q - x`
    pub fn frobenius_minus_identity(tower: &FieldTower) -> Self {
        Self::new(
            tower,
            [
                ((tower.n()) % tower.degree(), Elem::ONE),
                (0, tower.neg(Elem::ONE)),
            ],
        )
        .expect("indices in range")
    }

    /// Parses `"(0,4),(1,1)"`: pairs `(i, code)` meaning `code · x^(p^i)`.
    pub fn parse_pairs(tower: &FieldTower, text: &str) -> Result<Self, PolyError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        for chunk in cleaned.split(')') {
            let chunk = chunk.trim_start_matches(',');
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| parse_err(text, "expected '('"))?;
            let (i, c) = body
                .split_once(',')
                .ok_or_else(|| parse_err(text, "expected (index,code)"))?;
            let i: u32 = i.parse().map_err(|_| parse_err(text, "bad index"))?;
            let c: u32 = c.parse().map_err(|_| parse_err(text, "bad code"))?;
            pairs.push((i, Elem(c)));
        }
        Self::new(tower, pairs)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Elem)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }

    pub fn coeff(&self, i: u32) -> Elem {
        self.terms.get(&i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All exponents are powers of `q`.
    pub fn is_q_poly(&self, tower: &FieldTower) -> bool {
        self.terms.keys().all(|i| i % tower.n() == 0)
    }

    /// All coefficients lie in `F_q`.
    pub fn has_subfield_coeffs(&self, tower: &FieldTower) -> bool {
        self.terms.values().all(|&c| tower.is_in_subfield(c))
    }

    /// `Σ a_i x^(p^i)`.
    pub fn eval(&self, tower: &FieldTower, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut power = x;
        let mut at = 0;
        for (&i, &c) in &self.terms {
            power = tower.frobenius_p_iter(power, i - at);
            at = i;
            acc = tower.add(acc, tower.mul(c, power));
        }
        acc
    }

    pub fn to_matrix(&self, tower: &FieldTower) -> AdditiveMatrix {
        AdditiveMatrix::from_fn(tower, |x| self.eval(tower, x))
    }

    /// Roots in `F_{q^m}`, sorted by code.
    pub fn kernel(&self, tower: &FieldTower) -> Vec<Elem> {
        self.to_matrix(tower).kernel(tower)
    }

    /// Whether the induced map is a bijection (matrix invertible over `F_p`).
    pub fn is_permutation(&self, tower: &FieldTower) -> bool {
        self.to_matrix(tower).is_invertible()
    }

    /// The unique `x` with `L(x) = c`.
    pub fn solve(&self, tower: &FieldTower, c: Elem) -> Result<Elem, PolyError> {
        self.to_matrix(tower).solve(tower, c)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("({i},{})", c.0))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Evaluates `L` at `x`.
pub fn eval_linearized(tower: &FieldTower, l: &LinearizedPoly, x: Elem) -> Elem {
    l.eval(tower, x)
}

pub fn to_matrix(tower: &FieldTower, l: &LinearizedPoly) -> AdditiveMatrix {
    l.to_matrix(tower)
}

pub fn kernel(tower: &FieldTower, l: &LinearizedPoly) -> Vec<Elem> {
    l.kernel(tower)
}

pub fn is_linearized_permutation(tower: &FieldTower, l: &LinearizedPoly) -> bool {
    l.is_permutation(tower)
}

pub fn linearized_solve(
    tower: &FieldTower,
    l: &LinearizedPoly,
    c: Elem,
) -> Result<Elem, PolyError> {
    l.solve(tower, c)
}

/// Whether `B ∘ L = L ∘ B` as maps of `F_{q^m}`.
pub fn check_commutation(tower: &FieldTower, l: &LinearizedPoly, b: &LinearizedPoly) -> bool {
    let ml = l.to_matrix(tower);
    let mb = b.to_matrix(tower);
    mb.compose(&ml) == ml.compose(&mb)
}

/// The Dickson polynomial `D_nn(x, a)` via `D_k = x D_(k-1) - a D_(k-2)`.
pub fn dickson_eval(tower: &FieldTower, nn: u32, a: Elem, x: Elem) -> Elem {
    let two = tower.from_int(2);
    if nn == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, x);
    for _ in 1..nn {
        let next = tower.sub(tower.mul(x, cur), tower.mul(a, prev));
        prev = cur;
        cur = next;
    }
    cur
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

/// Whether `x^j` permutes `F_q` (`Which::Subfield`) or `F_{q^m}` (`Which::Full`):
/// `gcd(j, size - 1) = 1`.
pub fn is_monomial_pp(tower: &FieldTower, j: u64, which: Which) -> Result<bool, SymmError> {
    if j == 0 {
        return Err(SymmError::IndexOutOfRange {
            kind: "monomial",
            j,
            lo: 1,
            hi: u64::MAX,
        });
    }
    let size = match which {
        Which::Full => tower.size(),
        Which::Subfield => tower.q(),
    } as u64;
    Ok(coprime(j, size - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> FieldTower {
        FieldTower::new(2, 2, 2).unwrap()
    }

    #[test]
    fn horner() {
        let f5 = FieldTower::new(5, 1, 1).unwrap();
        let h = SubfieldPoly::over_base(&f5, &[2, 1, 1]).unwrap();
        assert_eq!(h.eval(&f5, Elem(1)), Elem(4));
        assert_eq!(h.degree(), Some(2));
        let z = SubfieldPoly::over_base(&f5, &[0, 0]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        let c = SubfieldPoly::over_base(&f5, &[3]).unwrap();
        for x in f5.elements() {
            assert_eq!(z.eval(&f5, x), Elem::ZERO);
            assert_eq!(c.eval(&f5, x), Elem(3));
        }
    }

    #[test]
    fn subfield_coefficients_enforced() {
        let t = f16();
        assert_eq!(
            SubfieldPoly::over_base(&t, &[1, 5]),
            Err(PolyError::CoefficientNotInSubfield(Elem(5)))
        );
        assert!(SubfieldPoly::parse(&t, "1,5", CoeffField::Ext).is_ok());
        assert!(matches!(
            SubfieldPoly::parse(&t, "1,x", CoeffField::Ext),
            Err(PolyError::Parse { .. })
        ));
        assert!(SubfieldPoly::parse(&t, "1,16", CoeffField::Ext).is_err());
    }

    #[test]
    fn display_round_trip() {
        let t = f16();
        let l = LinearizedPoly::parse_pairs(&t, "(0, 4), (1,1)").unwrap();
        assert_eq!(l.to_string(), "(0,4),(1,1)");
        assert_eq!(LinearizedPoly::parse_pairs(&t, &l.to_string()).unwrap(), l);
        assert!(LinearizedPoly::parse_pairs(&t, "(9,1)").is_err());
        assert!(LinearizedPoly::parse_pairs(&t, "0,1").is_err());
        let h = SubfieldPoly::parse(&t, "2,1,1", CoeffField::Base).unwrap();
        assert_eq!(h.to_string(), "2,1,1");
    }

    #[test]
    fn linearized_basics() {
        let t = f16();
        let art = LinearizedPoly::frobenius_minus_identity(&t);
        for c in t.subfield_elements() {
            assert_eq!(art.eval(&t, c), Elem::ZERO);
        }
        assert_eq!(art.kernel(&t), t.subfield_elements().collect::<Vec<_>>());
        assert!(!art.is_permutation(&t));
        assert!(LinearizedPoly::frobenius_q(&t, 1).is_permutation(&t));
        assert!(art.is_q_poly(&t) && art.has_subfield_coeffs(&t));

        let f8 = FieldTower::new(2, 1, 3).unwrap();
        let sq = LinearizedPoly::new(&f8, [(1, Elem::ONE)]).unwrap();
        assert_eq!(sq.eval(&f8, Elem(2)), Elem(4));
        for x in t.elements() {
            for y in t.elements() {
                let l = LinearizedPoly::new(&t, [(1, Elem(7)), (3, Elem(9))]).unwrap();
                assert_eq!(l.eval(&t, t.add(x, y)), t.add(l.eval(&t, x), l.eval(&t, y)));
            }
        }
    }

    #[test]
    fn matrix_of_p_power_on_f4() {
        let f4 = FieldTower::new(2, 1, 2).unwrap();
        let m = LinearizedPoly::new(&f4, [(1, Elem::ONE)])
            .unwrap()
            .to_matrix(&f4);
        assert_eq!(m.rows(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(
            LinearizedPoly::identity().to_matrix(&f4),
            AdditiveMatrix::identity(&f4)
        );
    }

    #[test]
    fn trace_kernel_f8() {
        let f8 = FieldTower::new(2, 1, 3).unwrap();
        let tr = LinearizedPoly::trace(&f8);
        let ker = tr.kernel(&f8);
        assert_eq!(ker.len(), 4);
        let scan: Vec<Elem> = f8
            .elements()
            .filter(|&x| tr.eval(&f8, x).is_zero())
            .collect();
        assert_eq!(ker, scan);
    }

    #[test]
    fn solve_scalar_map() {
        let f8 = FieldTower::new(2, 1, 3).unwrap();
        let a = Elem(2);
        let a2 = f8.mul(a, a);
        let l = LinearizedPoly::scalar(a2);
        assert!(l.is_permutation(&f8));
        assert_eq!(l.solve(&f8, a2), Ok(Elem::ONE));
        assert_eq!(LinearizedPoly::identity().solve(&f8, Elem(6)), Ok(Elem(6)));
        assert_eq!(
            LinearizedPoly::trace(&f8).solve(&f8, Elem(1)),
            Err(PolyError::NotInvertible)
        );
    }

    #[test]
    fn commutation() {
        let t = f16();
        let art = LinearizedPoly::frobenius_minus_identity(&t);
        assert!(check_commutation(&t, &art, &LinearizedPoly::identity()));
        // c outside F_q does not commute with x^q - x
        assert!(!check_commutation(
            &t,
            &LinearizedPoly::scalar(Elem(4)),
            &art
        ));
        assert!(check_commutation(
            &t,
            &LinearizedPoly::scalar(Elem(2)),
            &art
        ));
    }

    #[test]
    fn dickson_small_degrees() {
        let f8 = FieldTower::new(2, 1, 3).unwrap();
        for a in f8.elements() {
            for x in f8.elements() {
                assert_eq!(dickson_eval(&f8, 1, a, x), x);
                // characteristic 2: D_5 = x^5 + a x^3 + a^2 x
                let expect = f8.add(
                    f8.add(f8.pow(x, 5), f8.mul(a, f8.pow(x, 3))),
                    f8.mul(f8.mul(a, a), x),
                );
                assert_eq!(dickson_eval(&f8, 5, a, x), expect);
            }
        }
        assert_eq!(dickson_eval(&f8, 0, Elem(3), Elem(5)), Elem::ZERO);
    }

    #[test]
    fn monomial_criterion() {
        let f4 = FieldTower::new(2, 2, 1).unwrap();
        assert_eq!(is_monomial_pp(&f4, 3, Which::Full), Ok(false));
        assert!(f4.elements().skip(1).all(|x| f4.pow(x, 3) == Elem::ONE));
        assert_eq!(is_monomial_pp(&f4, 1, Which::Full), Ok(true));
        let f64 = FieldTower::new(2, 3, 2).unwrap();
        assert_eq!(is_monomial_pp(&f64, 5, Which::Full), Ok(true));
        assert_eq!(is_monomial_pp(&f64, 3, Which::Subfield), Ok(true));
        assert!(is_monomial_pp(&f64, 0, Which::Full).is_err());
    }
}
