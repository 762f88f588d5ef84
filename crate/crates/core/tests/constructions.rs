use permpoly_core::construct::{
    build_thm21, check_thm21_cond2, check_thm21_cond2_by_scan, check_thm21_hypotheses,
    cor22_instance, cor23_instance, find_linear_translators, predicate_cor23, predicate_thm21,
    SubfieldValuedFn,
};
use permpoly_core::families::{polys_up_to, thm21_generated};
use permpoly_core::poly::LinearizedPoly;
use permpoly_core::symm::SymmetricKind;
use permpoly_core::{is_permutation, ConstructError, Elem, FieldTower};

fn q_polys(t: &FieldTower) -> Vec<LinearizedPoly> {
    let q = t.q();
    let mut out = Vec::new();
    for code in 0..q.pow(t.m()) {
        let mut c = code;
        let terms: Vec<(u32, Elem)> = (0..t.m())
            .map(|i| {
                let a = Elem(c % q);
                c /= q;
                (i * t.n(), a)
            })
            .collect();
        out.push(LinearizedPoly::new(t, terms).unwrap());
    }
    out
}

#[test]
fn cond2_routes_agree() {
    let t = FieldTower::new(2, 2, 2).unwrap();
    for (id, inst) in thm21_generated(&t).iter().step_by(5) {
        if !check_thm21_hypotheses(&t, inst).all_hold() {
            continue;
        }
        assert_eq!(
            check_thm21_cond2(&t, inst),
            check_thm21_cond2_by_scan(&t, inst),
            "{id}"
        );
    }
}

#[test]
fn identity_plus_x_h_translation() {
    for (p, n, m) in [(2, 2, 2), (3, 1, 2), (2, 1, 3)] {
        let t = FieldTower::new(p, n, m).unwrap();
        for l in q_polys(&t) {
            for h in polys_up_to(&t, 1) {
                let inst = cor22_instance(&t, l.clone(), h.clone()).unwrap();
                let pred = predicate_thm21(&t, &inst).unwrap();
                let oracle = is_permutation(&t, &build_thm21(&t, &inst).unwrap()).is_permutation;
                assert_eq!(pred, oracle, "Q={} L={l} h={h}", t.size());
            }
        }
    }
}

#[test]
fn coefficient_sum_criterion_matches_oracle() {
    let t = FieldTower::new(2, 2, 2).unwrap();
    let mut compared = 0;
    for l in q_polys(&t).into_iter().filter(|l| l.is_permutation(&t)) {
        for gamma in t.elements() {
            for h in polys_up_to(&t, 2) {
                let pred = predicate_cor23(&t, &l, gamma, &h).unwrap();
                let inst = cor23_instance(&t, l.clone(), gamma, h.clone()).unwrap();
                let oracle = is_permutation(&t, &build_thm21(&t, &inst).unwrap()).is_permutation;
                assert_eq!(pred, oracle, "L={l} gamma={gamma} h={h}");
                compared += 1;
            }
        }
    }
    assert!(compared > 1000);
}

#[test]
fn coefficient_sum_criterion_rejects_non_permutations() {
    let t = FieldTower::new(2, 2, 2).unwrap();
    let h = polys_up_to(&t, 1).swap_remove(2);
    let tr = LinearizedPoly::trace(&t);
    assert_eq!(
        predicate_cor23(&t, &tr, Elem::ZERO, &h),
        Err(ConstructError::NotPermutationL)
    );
    let p_linear = LinearizedPoly::new(&t, [(1, Elem::ONE)]).unwrap();
    assert!(matches!(
        predicate_cor23(&t, &p_linear, Elem::ZERO, &h),
        Err(ConstructError::HypothesisViolation(_))
    ));
}

#[test]
fn translator_constants_are_forced() {
    let t = FieldTower::new(2, 2, 3).unwrap();
    for kind in [
        SymmetricKind::Trace,
        SymmetricKind::Lambda(1),
        SymmetricKind::Lambda(2),
        SymmetricKind::Mu(5),
    ] {
        let f = SubfieldValuedFn::from_kind(&t, kind).unwrap();
        let f0 = f.values()[0];
        for cert in find_linear_translators(&t, &f) {
            assert!(!cert.alpha.is_zero());
            assert_eq!(
                cert.a,
                t.sub(f.values()[cert.alpha.0 as usize], f0),
                "{kind}"
            );
        }
    }
    let tr = SubfieldValuedFn::from_kind(&t, SymmetricKind::Trace).unwrap();
    assert_eq!(find_linear_translators(&t, &tr).len() as u32, t.size() - 1);
}
