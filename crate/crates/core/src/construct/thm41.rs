//! Linear translators and maps `L1(x) + L2(γ) h(f(x))`.

use serde::Serialize;

use crate::error::ConstructError;
use crate::field::{Elem, FieldTower};
use crate::oracle::{is_bijective_table, FieldMap};
use crate::par;
use crate::poly::{LinearizedPoly, SubfieldPoly};
use crate::symm::SymmetricKind;

/// A function `F_q → F_q` given by its `q` values in code order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubfieldFn(Vec<Elem>);

impl SubfieldFn {
    pub fn from_table(tower: &FieldTower, values: Vec<Elem>) -> Result<Self, ConstructError> {
        if values.len() != tower.q() as usize {
            return Err(ConstructError::TableSize {
                got: values.len(),
                expected: tower.q() as usize,
            });
        }
        if let Some(&v) = values.iter().find(|&&v| !tower.is_in_subfield(v)) {
            return Err(ConstructError::HypothesisViolation(format!(
                "h takes the value {v:?} outside F_q"
            )));
        }
        Ok(SubfieldFn(values))
    }

    /// Samples a polynomial over `F_q` on `F_q`.
    pub fn from_poly(tower: &FieldTower, h: &SubfieldPoly) -> Result<Self, ConstructError> {
        Self::from_table(tower, h.table_on_subfield(tower))
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    #[inline]
    pub fn at(&self, x: Elem) -> Elem {
        self.0[x.0 as usize]
    }
}

/// A function `F_{q^m} → F_q` given by its `q^m` values in code order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldValuedFn(Vec<Elem>);

impl SubfieldValuedFn {
    pub fn from_table(tower: &FieldTower, values: Vec<Elem>) -> Result<Self, ConstructError> {
        if values.len() != tower.size() as usize {
            return Err(ConstructError::TableSize {
                got: values.len(),
                expected: tower.size() as usize,
            });
        }
        if let Some(&v) = values.iter().find(|&&v| !tower.is_in_subfield(v)) {
            return Err(ConstructError::HypothesisViolation(format!(
                "f takes the value {v:?} outside F_q"
            )));
        }
        Ok(SubfieldValuedFn(values))
    }

    pub fn from_kind(tower: &FieldTower, kind: SymmetricKind) -> Result<Self, ConstructError> {
        Self::from_table(tower, kind.table(tower)?)
    }

    pub fn from_map<M: FieldMap + ?Sized>(
        tower: &FieldTower,
        map: &M,
    ) -> Result<Self, ConstructError> {
        Self::from_table(tower, crate::oracle::tabulate(tower, map))
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_surjective(&self, tower: &FieldTower) -> bool {
        let mut seen = vec![false; tower.q() as usize];
        for v in &self.0 {
            seen[v.0 as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

impl FieldMap for SubfieldValuedFn {
    #[inline]
    fn eval(&self, x: Elem) -> Elem {
        self.0[x.0 as usize]
    }
}

/// Certificate that `alpha` is an `a`-linear translator of some `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearTranslatorCert {
    pub alpha: Elem,
    pub a: Elem,
}

/// Whether `f(x + u α) - f(x) = u a` for every `x ∈ F_{q^m}` and `u ∈ F_q`.
pub fn is_linear_translator<M: FieldMap + ?Sized>(
    tower: &FieldTower,
    f: &M,
    alpha: Elem,
    a: Elem,
) -> Result<bool, ConstructError> {
    if alpha.is_zero() {
        return Err(ConstructError::ZeroAlpha);
    }
    let shifts: Vec<(Elem, Elem)> = tower
        .subfield_elements()
        .map(|u| (tower.mul(u, alpha), tower.mul(u, a)))
        .collect();
    let violated = par::find_map_first(tower.size(), |x| {
        let x = Elem(x);
        let fx = f.eval(x);
        shifts
            .iter()
            .any(|&(ua, uc)| tower.sub(f.eval(tower.add(x, ua)), fx) != uc)
            .then_some(())
    });
    let holds = violated.is_none();
    if holds {
        assert_eq!(
            a,
            tower.sub(f.eval(alpha), f.eval(Elem::ZERO)),
            "translator constant must equal f(alpha) - f(0)"
        );
    }
    Ok(holds)
}

/// Every nonzero `α` that is a linear translator of `f`, in code order.
///
/// The constant is forced: `u = 1, x = 0` gives `a = f(α) - f(0)`.
pub fn find_linear_translators<M: FieldMap + ?Sized>(
    tower: &FieldTower,
    f: &M,
) -> Vec<LinearTranslatorCert> {
    let f0 = f.eval(Elem::ZERO);
    par::map_indices(tower.size(), |alpha| {
        if alpha == 0 {
            return None;
        }
        let alpha = Elem(alpha);
        let a = tower.sub(f.eval(alpha), f0);
        if !tower.is_in_subfield(a) {
            return None;
        }
        is_linear_translator(tower, f, alpha, a)
            .expect("alpha is nonzero")
            .then_some(LinearTranslatorCert { alpha, a })
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm41Instance {
    l1: LinearizedPoly,
    l2: LinearizedPoly,
    gamma: Elem,
    h: SubfieldFn,
    f: SubfieldValuedFn,
}

impl Thm41Instance {
    /// Checks that `L1` permutes `F_{q^m}` and that `f` is onto `F_q`.
    pub fn new(
        tower: &FieldTower,
        l1: LinearizedPoly,
        l2: LinearizedPoly,
        gamma: Elem,
        h: SubfieldFn,
        f: SubfieldValuedFn,
    ) -> Result<Self, ConstructError> {
        tower.element(gamma.0 as u64)?;
        if !l1.is_permutation(tower) {
            return Err(ConstructError::NotPermutationL1);
        }
        if !f.is_surjective(tower) {
            return Err(ConstructError::NotSurjectiveF);
        }
        Ok(Thm41Instance {
            l1,
            l2,
            gamma,
            h,
            f,
        })
    }

    pub fn l1(&self) -> &LinearizedPoly {
        &self.l1
    }
    pub fn l2(&self) -> &LinearizedPoly {
        &self.l2
    }
    pub fn gamma(&self) -> Elem {
        self.gamma
    }
    pub fn h(&self) -> &SubfieldFn {
        &self.h
    }
    pub fn f(&self) -> &SubfieldValuedFn {
        &self.f
    }
}

/// Certifies `α = L1^{-1}(L2(γ))` as a `b`-linear translator of `f`, with
/// `b = f(α) - f(0)`. `None` when `L2(γ) = 0`.
pub fn certify_thm41(
    tower: &FieldTower,
    inst: &Thm41Instance,
) -> Result<Option<LinearTranslatorCert>, ConstructError> {
    let l2g = inst.l2.eval(tower, inst.gamma);
    if l2g.is_zero() {
        return Ok(None);
    }
    let alpha = inst
        .l1
        .solve(tower, l2g)
        .map_err(|_| ConstructError::NotPermutationL1)?;
    let a = tower.sub(inst.f.eval(alpha), inst.f.eval(Elem::ZERO));
    if tower.is_in_subfield(a) && is_linear_translator(tower, &inst.f, alpha, a)? {
        Ok(Some(LinearTranslatorCert { alpha, a }))
    } else {
        Err(ConstructError::NotTranslator { alpha, a })
    }
}

/// Evaluator of `G(x) = L1(x) + L2(γ) h(f(x))`.
#[derive(Clone, Copy, Debug)]
pub struct Thm41Map<'a> {
    tower: &'a FieldTower,
    inst: &'a Thm41Instance,
    l2g: Elem,
}

impl FieldMap for Thm41Map<'_> {
    fn eval(&self, x: Elem) -> Elem {
        let t = self.tower;
        let hf = self.inst.h.at(self.inst.f.eval(x));
        t.add(self.inst.l1.eval(t, x), t.mul(self.l2g, hf))
    }
}

pub fn build_thm41<'a>(
    tower: &'a FieldTower,
    inst: &'a Thm41Instance,
) -> Result<Thm41Map<'a>, ConstructError> {
    certify_thm41(tower, inst)?;
    Ok(Thm41Map {
        tower,
        inst,
        l2g: inst.l2.eval(tower, inst.gamma),
    })
}

/// `L2(γ) = 0`, or `x + b h(x)` permutes `F_q` for the certified `b`.
pub fn predicate_thm41(tower: &FieldTower, inst: &Thm41Instance) -> Result<bool, ConstructError> {
    Ok(match certify_thm41(tower, inst)? {
        None => true,
        Some(cert) => is_bijective_table(&translated_values(tower, cert.a, &inst.h)),
    })
}

fn translated_values(tower: &FieldTower, b: Elem, h: &SubfieldFn) -> Vec<Elem> {
    tower
        .subfield_elements()
        .map(|x| tower.add(x, tower.mul(b, h.at(x))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_permutation;
    use crate::symm::trace_rel;

    fn f16() -> FieldTower {
        FieldTower::new(2, 2, 2).unwrap()
    }

    fn tr(t: &FieldTower) -> SubfieldValuedFn {
        SubfieldValuedFn::from_kind(t, SymmetricKind::Trace).unwrap()
    }

    #[test]
    fn trace_translators() {
        let t = f16();
        let f = tr(&t);
        let certs = find_linear_translators(&t, &f);
        assert_eq!(certs.len(), 15);
        for c in &certs {
            assert_eq!(c.a, trace_rel(&t, c.alpha));
        }
        let alpha = t
            .elements()
            .find(|&x| trace_rel(&t, x) == Elem::ONE)
            .unwrap();
        assert_eq!(is_linear_translator(&t, &f, alpha, Elem::ZERO), Ok(false));
        assert_eq!(
            is_linear_translator(&t, &f, Elem::ZERO, Elem::ZERO),
            Err(ConstructError::ZeroAlpha)
        );
    }

    #[test]
    fn constant_f_translators() {
        let t = f16();
        let f = |_: Elem| Elem(3);
        let certs = find_linear_translators(&t, &f);
        assert_eq!(certs.len(), 15);
        assert!(certs.iter().all(|c| c.a.is_zero()));
    }

    #[test]
    fn trace_of_square() {
        // f(x + uα) - f(x) = u^2 Tr(α^2): a translator iff Tr(α^2) = 0
        let t = f16();
        let f = |x: Elem| trace_rel(&t, t.mul(x, x));
        let certs = find_linear_translators(&t, &f);
        let expect: Vec<Elem> = t
            .elements()
            .skip(1)
            .filter(|&a| trace_rel(&t, t.mul(a, a)).is_zero())
            .collect();
        assert_eq!(certs.iter().map(|c| c.alpha).collect::<Vec<_>>(), expect);
        assert!(certs.iter().all(|c| c.a.is_zero()));
    }

    #[test]
    fn translator_table_checks() {
        let t = f16();
        assert!(SubfieldFn::from_table(&t, vec![Elem(0); 3]).is_err());
        assert!(SubfieldFn::from_table(&t, vec![Elem(0), Elem(5), Elem(0), Elem(0)]).is_err());
        assert!(SubfieldValuedFn::from_table(&t, vec![Elem(0); 16]).is_ok());
        let not_onto = SubfieldValuedFn::from_table(&t, vec![Elem(0); 16]).unwrap();
        let h = SubfieldFn::from_table(&t, vec![Elem(0); 4]).unwrap();
        assert_eq!(
            Thm41Instance::new(
                &t,
                LinearizedPoly::identity(),
                LinearizedPoly::identity(),
                Elem(1),
                h.clone(),
                not_onto
            ),
            Err(ConstructError::NotSurjectiveF)
        );
        assert_eq!(
            Thm41Instance::new(
                &t,
                LinearizedPoly::trace(&t),
                LinearizedPoly::identity(),
                Elem(1),
                h,
                tr(&t)
            ),
            Err(ConstructError::NotPermutationL1)
        );
    }

    #[test]
    fn frobenius_l1_translator() {
        let t = f16();
        let c = Elem(6);
        let gamma = Elem(9);
        let h = SubfieldFn::from_table(&t, vec![Elem(1), Elem(3), Elem(0), Elem(2)]).unwrap();
        let inst = Thm41Instance::new(
            &t,
            LinearizedPoly::frobenius_q(&t, 1),
            LinearizedPoly::scalar(c),
            gamma,
            h,
            tr(&t),
        )
        .unwrap();
        let cert = certify_thm41(&t, &inst).unwrap().unwrap();
        let cg = t.mul(c, gamma);
        assert_eq!(cert.alpha, t.frobenius_q(cg, t.m() - 1));
        assert_eq!(cert.a, trace_rel(&t, cert.alpha));
        let g = build_thm41(&t, &inst).unwrap();
        assert_eq!(
            predicate_thm41(&t, &inst).unwrap(),
            is_permutation(&t, &g).is_permutation
        );
    }

    #[test]
    fn zero_l2_gamma_gives_l1() {
        let t = f16();
        let h = SubfieldFn::from_table(&t, vec![Elem(2); 4]).unwrap();
        let inst = Thm41Instance::new(
            &t,
            LinearizedPoly::frobenius_q(&t, 1),
            LinearizedPoly::identity(),
            Elem::ZERO,
            h,
            tr(&t),
        )
        .unwrap();
        assert_eq!(certify_thm41(&t, &inst), Ok(None));
        assert_eq!(predicate_thm41(&t, &inst), Ok(true));
        let g = build_thm41(&t, &inst).unwrap();
        assert!(t.elements().all(|x| g.eval(x) == t.frobenius_q(x, 1)));
    }

    #[test]
    fn translated_map_cases() {
        let f5 = FieldTower::new(5, 1, 2).unwrap();
        let h =
            SubfieldFn::from_poly(&f5, &SubfieldPoly::over_base(&f5, &[0, 4]).unwrap()).unwrap();
        // b = 1, h = -x: x + b h(x) = 0
        assert!(!is_bijective_table(&translated_values(&f5, Elem(1), &h)));
        assert!(is_bijective_table(&translated_values(&f5, Elem(0), &h)));
        let zero = SubfieldFn::from_table(&f5, vec![Elem(0); 5]).unwrap();
        assert!(is_bijective_table(&translated_values(&f5, Elem(3), &zero)));
    }
}
