//! Sums `F(x) = Σ_i (L_i(x) + γ_i) h_i(B(x))` with additive `L_i`, `B`.
//!
//! Under the hypotheses `h_i(B(F_{q^m})) ⊆ F_q`, `B` commuting with every
//! `L_i` and `B` being `F_q`-linear, `F` permutes `F_{q^m}` exactly when
//!
//! 1. `G(x) = Σ_i (L_i(x) + B(γ_i)) h_i(x)` permutes `S = B(F_{q^m})`, and
//! 2. for every `y ∈ S`, the only `x` with `Σ_i L_i(x) h_i(y) = 0` and
//!    `B(x) = 0` is `x = 0`.

use serde::Serialize;

use crate::error::ConstructError;
use crate::field::{Elem, FieldTower};
use crate::matrix::{span, AdditiveMatrix};
use crate::oracle::{image, is_permutation_on, tabulate, FieldMap};
use crate::par;
use crate::poly::{check_commutation, LinearizedPoly, SubfieldPoly};
use crate::symm::trace_rel;

/// One summand `(L_i(x) + γ_i) h_i(B(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm21Term {
    pub l: LinearizedPoly,
    pub gamma: Elem,
    pub h: SubfieldPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm21Instance {
    terms: Vec<Thm21Term>,
    b: LinearizedPoly,
}

impl Thm21Instance {
    pub fn new(terms: Vec<Thm21Term>, b: LinearizedPoly) -> Result<Self, ConstructError> {
        if terms.is_empty() {
            return Err(ConstructError::EmptyInstance);
        }
        Ok(Thm21Instance { terms, b })
    }

    pub fn terms(&self) -> &[Thm21Term] {
        &self.terms
    }

    pub fn b(&self) -> &LinearizedPoly {
        &self.b
    }

    pub fn k(&self) -> usize {
        self.terms.len()
    }
}

/// `L1(x) + (L2(x) + γ) h(Tr(x))`.
pub fn cor21_instance(
    tower: &FieldTower,
    l1: LinearizedPoly,
    l2: LinearizedPoly,
    gamma: Elem,
    h: SubfieldPoly,
) -> Result<Thm21Instance, ConstructError> {
    let one = SubfieldPoly::constant(tower, Elem::ONE)?;
    Thm21Instance::new(
        vec![
            Thm21Term {
                l: l1,
                gamma: Elem::ZERO,
                h: one,
            },
            Thm21Term { l: l2, gamma, h },
        ],
        LinearizedPoly::trace(tower),
    )
}

/// `L(x) + x h(Tr(x))`.
pub fn cor22_instance(
    tower: &FieldTower,
    l: LinearizedPoly,
    h: SubfieldPoly,
) -> Result<Thm21Instance, ConstructError> {
    cor21_instance(tower, l, LinearizedPoly::identity(), Elem::ZERO, h)
}

/// `L(x) + γ h(Tr(x))`.
pub fn cor23_instance(
    tower: &FieldTower,
    l: LinearizedPoly,
    gamma: Elem,
    h: SubfieldPoly,
) -> Result<Thm21Instance, ConstructError> {
    cor21_instance(tower, l, LinearizedPoly::zero(), gamma, h)
}

/// First counterexample found by a hypothesis clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ValueOutsideSubfield {
        term: usize,
        x: Elem,
        value: Elem,
    },
    /// `map` is `None` for `B`, `Some(i)` for `L_i`.
    NotAdditive {
        map: Option<usize>,
        x: Elem,
    },
    NotCommuting {
        term: usize,
    },
    NotScalar {
        scalar: Elem,
        v: Elem,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Clause {
    fn from_witness(witness: Option<Witness>) -> Self {
        Clause {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Which hypotheses of the sum construction hold for an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm21Hypotheses {
    /// (a) `h_i(B(x)) ∈ F_q` for all `x` and `i`.
    pub subfield_values: Clause,
    /// (b) `B` and every `L_i` are additive.
    pub additive: Clause,
    /// (c) `B(L_i(x)) = L_i(B(x))`.
    pub commutes: Clause,
    /// (d) `B(c v) = c B(v)` for `c ∈ F_q`.
    pub scalar_law: Clause,
}

impl Thm21Hypotheses {
    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Names of the failing clauses, in order.
    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &Clause)> {
        [
            ("h_i(B(x)) in F_q", &self.subfield_values),
            ("additivity", &self.additive),
            ("B commutes with L_i", &self.commutes),
            ("B is F_q-linear", &self.scalar_law),
        ]
        .into_iter()
        .filter(|(_, c)| !c.holds)
    }
}

/// First `x` (in code order) at which the tabulated map fails
/// `f(x) = f(x - p^i) + f(p^i)`, `p^i` being the lowest nonzero digit of `x`.
/// No such `x` means the map agrees with an `F_p`-linear map everywhere.
fn additivity_witness(tower: &FieldTower, values: &[Elem]) -> Option<Elem> {
    let p = tower.p();
    (1..tower.size())
        .find(|&x| {
            let mut low = 1;
            while (x / low) % p == 0 {
                low *= p;
            }
            let rest = x - low;
            values[x as usize] != tower.add(values[rest as usize], values[low as usize])
        })
        .map(Elem)
}

/// Checks the hypotheses exhaustively. Witnesses are the first failures in
/// code order.
pub fn check_thm21_hypotheses(tower: &FieldTower, inst: &Thm21Instance) -> Thm21Hypotheses {
    let b_values = tabulate(tower, &|x| inst.b.eval(tower, x));

    let subfield_values = Clause::from_witness(par::find_map_first(tower.size(), |x| {
        let bx = b_values[x as usize];
        inst.terms.iter().enumerate().find_map(|(i, t)| {
            let v = t.h.eval(tower, bx);
            (!tower.is_in_subfield(v)).then_some(Witness::ValueOutsideSubfield {
                term: i,
                x: Elem(x),
                value: v,
            })
        })
    }));

    let additive = Clause::from_witness(
        additivity_witness(tower, &b_values)
            .map(|x| Witness::NotAdditive { map: None, x })
            .or_else(|| {
                inst.terms.iter().enumerate().find_map(|(i, t)| {
                    let values = tabulate(tower, &|x| t.l.eval(tower, x));
                    additivity_witness(tower, &values)
                        .map(|x| Witness::NotAdditive { map: Some(i), x })
                })
            }),
    );

    let commutes = Clause::from_witness(
        inst.terms
            .iter()
            .position(|t| !check_commutation(tower, &t.l, &inst.b))
            .map(|term| Witness::NotCommuting { term }),
    );

    let scalar_law = Clause::from_witness(tower.subfield_elements().find_map(|c| {
        (0..tower.degree()).find_map(|i| {
            let v = Elem(tower.p().pow(i));
            let lhs = inst.b.eval(tower, tower.mul(c, v));
            let rhs = tower.mul(c, b_values[v.0 as usize]);
            (lhs != rhs).then_some(Witness::NotScalar { scalar: c, v })
        })
    }));

    Thm21Hypotheses {
        subfield_values,
        additive,
        commutes,
        scalar_law,
    }
}

fn require_hypotheses(tower: &FieldTower, inst: &Thm21Instance) -> Result<(), ConstructError> {
    let hyp = check_thm21_hypotheses(tower, inst);
    let first = hyp.failures().next().map(|(name, clause)| {
        ConstructError::HypothesisViolation(format!("{name} fails: {:?}", clause.witness))
    });
    first.map_or(Ok(()), Err)
}

/// Evaluator of `F(x) = Σ_i (L_i(x) + γ_i) h_i(B(x))`.
#[derive(Clone, Copy, Debug)]
pub struct Thm21Map<'a> {
    tower: &'a FieldTower,
    inst: &'a Thm21Instance,
}

impl<'a> Thm21Map<'a> {
    /// Evaluator without any hypothesis check.
    pub fn new(tower: &'a FieldTower, inst: &'a Thm21Instance) -> Self {
        Thm21Map { tower, inst }
    }
}

impl FieldMap for Thm21Map<'_> {
    fn eval(&self, x: Elem) -> Elem {
        let t = self.tower;
        let bx = self.inst.b.eval(t, x);
        self.inst.terms.iter().fold(Elem::ZERO, |acc, term| {
            let lhs = t.add(term.l.eval(t, x), term.gamma);
            t.add(acc, t.mul(lhs, term.h.eval(t, bx)))
        })
    }
}

/// The evaluator of `F`, after checking the hypotheses.
pub fn build_thm21<'a>(
    tower: &'a FieldTower,
    inst: &'a Thm21Instance,
) -> Result<Thm21Map<'a>, ConstructError> {
    require_hypotheses(tower, inst)?;
    Ok(Thm21Map::new(tower, inst))
}

/// `B(F_{q^m})`, sorted.
pub fn image_of_b(tower: &FieldTower, inst: &Thm21Instance) -> Vec<Elem> {
    image(&|x| inst.b.eval(tower, x), tower.elements())
}

/// Condition 1: `G` is a bijection of `S = B(F_{q^m})` onto itself.
///
/// `G(S) ⊄ S` cannot happen under the hypotheses and is reported as
/// `ImageEscape`.
pub fn check_thm21_cond1(tower: &FieldTower, inst: &Thm21Instance) -> Result<bool, ConstructError> {
    let s = image_of_b(tower, inst);
    let b_gammas: Vec<Elem> = inst
        .terms
        .iter()
        .map(|t| inst.b.eval(tower, t.gamma))
        .collect();
    let g = |x: Elem| {
        inst.terms
            .iter()
            .zip(&b_gammas)
            .fold(Elem::ZERO, |acc, (t, &bg)| {
                let lhs = tower.add(t.l.eval(tower, x), bg);
                tower.add(acc, tower.mul(lhs, t.h.eval(tower, x)))
            })
    };
    Ok(is_permutation_on(tower, &s, &g)?.is_permutation)
}

/// Result of condition 2, with the first failing `(y, x)`: smallest `y ∈ S`,
/// then smallest nonzero `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cond2Report {
    pub holds: bool,
    pub first_counterexample: Option<(Elem, Elem)>,
}

impl Cond2Report {
    fn from(first: Option<(Elem, Elem)>) -> Self {
        Cond2Report {
            holds: first.is_none(),
            first_counterexample: first,
        }
    }
}

fn m_y(tower: &FieldTower, inst: &Thm21Instance, h_at_y: &[Elem], x: Elem) -> Elem {
    inst.terms
        .iter()
        .zip(h_at_y)
        .fold(Elem::ZERO, |acc, (t, &hy)| {
            tower.add(acc, tower.mul(t.l.eval(tower, x), hy))
        })
}

/// Condition 2 via the joint null space of `M_y` and `B` over `F_p`.
pub fn check_thm21_cond2(tower: &FieldTower, inst: &Thm21Instance) -> Cond2Report {
    let s = image_of_b(tower, inst);
    let b_matrix = inst.b.to_matrix(tower);
    if b_matrix.is_invertible() {
        return Cond2Report::from(None);
    }
    Cond2Report::from(par::find_map_first_in(&s, |&y| {
        let h_at_y: Vec<Elem> = inst.terms.iter().map(|t| t.h.eval(tower, y)).collect();
        let my = AdditiveMatrix::from_fn(tower, |x| m_y(tower, inst, &h_at_y, x));
        let basis = my.joint_null_space(&b_matrix);
        if basis.is_empty() {
            None
        } else {
            let x = span(tower, &basis)[1];
            Some((y, x))
        }
    }))
}

/// Condition 2 by scanning every element of `ker B`. Independent of the
/// linear algebra in [`check_thm21_cond2`].
pub fn check_thm21_cond2_by_scan(tower: &FieldTower, inst: &Thm21Instance) -> Cond2Report {
    let s = image_of_b(tower, inst);
    let ker_b: Vec<Elem> = tower
        .elements()
        .filter(|&x| !x.is_zero() && inst.b.eval(tower, x).is_zero())
        .collect();
    Cond2Report::from(s.iter().find_map(|&y| {
        let h_at_y: Vec<Elem> = inst.terms.iter().map(|t| t.h.eval(tower, y)).collect();
        ker_b
            .iter()
            .find(|&&x| m_y(tower, inst, &h_at_y, x).is_zero())
            .map(|&x| (y, x))
    }))
}

/// `cond1 ∧ cond2`, after checking the hypotheses.
pub fn predicate_thm21(tower: &FieldTower, inst: &Thm21Instance) -> Result<bool, ConstructError> {
    require_hypotheses(tower, inst)?;
    Ok(check_thm21_cond1(tower, inst)? && check_thm21_cond2(tower, inst).holds)
}

/// For a `q`-polynomial `L` with `F_q` coefficients that permutes
/// `F_{q^m}`: whether `s x + Tr(γ) h(x)` permutes `F_q`, `s` being the sum of
/// the coefficients of `L`.
pub fn predicate_cor23(
    tower: &FieldTower,
    l: &LinearizedPoly,
    gamma: Elem,
    h: &SubfieldPoly,
) -> Result<bool, ConstructError> {
    if !l.is_q_poly(tower) || !l.has_subfield_coeffs(tower) {
        return Err(ConstructError::HypothesisViolation(
            "L must be a q-polynomial with coefficients in F_q".into(),
        ));
    }
    if !l.is_permutation(tower) {
        return Err(ConstructError::NotPermutationL);
    }
    let s = l.terms().fold(Elem::ZERO, |acc, (_, c)| tower.add(acc, c));
    let tr_gamma = trace_rel(tower, gamma);
    let values: Vec<Elem> = tower
        .subfield_elements()
        .map(|x| tower.add(tower.mul(s, x), tower.mul(tr_gamma, h.eval(tower, x))))
        .collect();
    Ok(crate::oracle::is_bijective_table(&values))
}
