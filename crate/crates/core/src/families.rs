//! Generated instance families for equivalence audits, and the search for
//! admissible `h` in the symmetric-function constructions.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::{
    build_thm21, build_thm3, build_thm41, check_thm21_cond1, check_thm21_cond2,
    check_thm21_hypotheses, cor21_instance, predicate_thm3, predicate_thm41, SubfieldFn,
    SubfieldValuedFn, Thm21Instance, Thm21Term, Thm3Instance, Thm3Variant, Thm41Instance,
};
use crate::error::ConstructError;
use crate::field::{Elem, FieldTower};
use crate::oracle::{audit_equivalence, is_bijective, is_permutation, AuditReport};
use crate::poly::{CoeffField, LinearizedPoly, SubfieldPoly};
use crate::symm::SymmetricKind;

/// Families larger than this are sampled instead of enumerated.
pub const DEFAULT_MAX_INSTANCES: usize = 1_000_000;

/// Keeps at most `limit` instances, chosen by a seeded sampler, in their
/// original order. Returns the seed when sampling happened.
pub fn sample_family<T>(
    instances: Vec<(String, T)>,
    limit: usize,
    seed: u64,
) -> (Vec<(String, T)>, Option<u64>) {
    if instances.len() <= limit {
        return (instances, None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = sample(&mut rng, instances.len(), limit).into_vec();
    keep.sort_unstable();
    let mut keep = keep.into_iter().peekable();
    let picked = instances
        .into_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(inst)
            } else {
                None
            }
        })
        .collect();
    (picked, Some(seed))
}

/// Every polynomial over `F_q` of degree at most `max_deg`, ordered by the
/// integer whose base-`q` digits are the coefficients, low-to-high.
pub fn polys_up_to(tower: &FieldTower, max_deg: u32) -> Vec<SubfieldPoly> {
    let q = tower.q() as u64;
    let len = max_deg as usize + 1;
    let count = q.pow(len as u32);
    (0..count)
        .map(|mut code| {
            let coeffs: Vec<u32> = (0..len)
                .map(|_| {
                    let d = (code % q) as u32;
                    code /= q;
                    d
                })
                .collect();
            SubfieldPoly::over_base(tower, &coeffs).expect("codes below q")
        })
        .collect()
}

pub fn thm3_family(
    tower: &FieldTower,
    variant: Thm3Variant,
    j: u64,
    max_deg: u32,
) -> Result<Vec<(String, Thm3Instance)>, ConstructError> {
    polys_up_to(tower, max_deg)
        .into_iter()
        .map(|h| Ok((format!("h={h}"), Thm3Instance::new(tower, variant, j, h)?)))
        .collect()
}

pub fn audit_thm3(
    tower: &FieldTower,
    variant: Thm3Variant,
    j: u64,
    max_deg: u32,
) -> Result<AuditReport, ConstructError> {
    let family = thm3_family(tower, variant, j, max_deg)?;
    let name = match variant {
        Thm3Variant::Lambda => format!("thm31 j={j} max_deg={max_deg}"),
        Thm3Variant::Mu => format!("thm32 j={j} max_deg={max_deg}"),
    };
    Ok(audit_equivalence(
        &name,
        &family,
        |inst| Some(predicate_thm3(tower, inst)),
        |inst| is_bijective(tower, &build_thm3(tower, inst)),
    ))
}

/// Every `h` of degree at most `max_deg` passing the predicate, each
/// confirmed by the full-field oracle.
pub fn search_h(
    tower: &FieldTower,
    variant: Thm3Variant,
    j: u64,
    max_deg: u32,
) -> Result<Vec<SubfieldPoly>, ConstructError> {
    Ok(thm3_family(tower, variant, j, max_deg)?
        .into_iter()
        .filter(|(_, inst)| {
            predicate_thm3(tower, inst)
                && is_permutation(tower, &build_thm3(tower, inst)).is_permutation
        })
        .map(|(_, inst)| inst.h().clone())
        .collect())
}

/// `a^2 x + x^2 (Tr(x)^3 - a Tr(x))` for every `a ∈ F_8^*`; needs `q = 8`.
pub fn thm21_example21(tower: &FieldTower) -> Result<Vec<(String, Thm21Instance)>, ConstructError> {
    if tower.p() != 2 || tower.q() != 8 {
        return Err(ConstructError::HypothesisViolation(
            "the Dickson example needs q = 8".into(),
        ));
    }
    tower
        .subfield_elements()
        .skip(1)
        .map(|a| {
            let h = SubfieldPoly::new(
                tower,
                vec![Elem::ZERO, tower.neg(a), Elem::ZERO, Elem::ONE],
                CoeffField::Base,
            )?;
            let inst = cor21_instance(
                tower,
                LinearizedPoly::scalar(tower.mul(a, a)),
                LinearizedPoly::new(tower, [(1, Elem::ONE)])?,
                Elem::ZERO,
                h,
            )?;
            Ok((format!("a={a}"), inst))
        })
        .collect()
}

/// Sums of one or two terms `(L(x) + γ) h(B(x))` with
/// `L ∈ {x, x^q, c x}` (`c` the largest code of `F_q`),
/// `B ∈ {Tr, x, x^q - x}`, `h` every polynomial over `F_q` of degree at most
/// one, and `γ ∈ {0, y}` with `y` the tower generator (code `q`).
///
/// Two-term sums range over unordered pairs, repeats allowed.
pub fn thm21_generated(tower: &FieldTower) -> Vec<(String, Thm21Instance)> {
    let c = Elem(tower.q() - 1);
    let ls = [
        ("x".to_string(), LinearizedPoly::identity()),
        ("x^q".to_string(), LinearizedPoly::frobenius_q(tower, 1)),
        (format!("{c}x"), LinearizedPoly::scalar(c)),
    ];
    let bs = [
        ("tr", LinearizedPoly::trace(tower)),
        ("x", LinearizedPoly::identity()),
        ("x^q-x", LinearizedPoly::frobenius_minus_identity(tower)),
    ];
    let gammas = [Elem::ZERO, Elem(tower.q() % tower.size())];
    let hs = polys_up_to(tower, 1);

    let mut terms = Vec::new();
    for (lname, l) in &ls {
        for h in &hs {
            for &gamma in &gammas {
                terms.push((
                    format!("({lname}+{gamma})*h[{h}]"),
                    Thm21Term {
                        l: l.clone(),
                        gamma,
                        h: h.clone(),
                    },
                ));
            }
        }
    }

    let mut out = Vec::new();
    for (bname, b) in &bs {
        for (i, (n1, t1)) in terms.iter().enumerate() {
            let inst = Thm21Instance::new(vec![t1.clone()], b.clone()).expect("one term");
            out.push((format!("B={bname}: {n1}"), inst));
            for (n2, t2) in &terms[i..] {
                let inst =
                    Thm21Instance::new(vec![t1.clone(), t2.clone()], b.clone()).expect("two terms");
                out.push((format!("B={bname}: {n1} + {n2}"), inst));
            }
        }
    }
    out
}

/// Hypothesis-failing instances are skipped; the rest compare
/// `cond1 ∧ cond2` with the oracle.
pub fn audit_thm21(
    tower: &FieldTower,
    name: &str,
    family: &[(String, Thm21Instance)],
) -> AuditReport {
    audit_equivalence(
        name,
        family,
        |inst| {
            if !check_thm21_hypotheses(tower, inst).all_hold() {
                return None;
            }
            let c1 = check_thm21_cond1(tower, inst).expect("hypotheses keep G inside S");
            Some(c1 && check_thm21_cond2(tower, inst).holds)
        },
        |inst| {
            is_bijective(
                tower,
                &build_thm21(tower, inst).expect("hypotheses checked"),
            )
        },
    )
}

/// `L1 ∈ {x, x^q}`, `L2 ∈ {x, y x}`, every `γ`, every table `h: F_q → F_q`,
/// and `f = Tr`.
pub fn thm41_family(tower: &FieldTower) -> Result<Vec<(String, Thm41Instance)>, ConstructError> {
    let y = Elem(tower.q() % tower.size());
    let l1s = [
        ("x", LinearizedPoly::identity()),
        ("x^q", LinearizedPoly::frobenius_q(tower, 1)),
    ];
    let l2s = [
        ("x".to_string(), LinearizedPoly::identity()),
        (format!("{y}x"), LinearizedPoly::scalar(y)),
    ];
    let f = SubfieldValuedFn::from_kind(tower, SymmetricKind::Trace)?;
    let q = tower.q() as u64;
    let tables: Vec<SubfieldFn> = (0..q.pow(q as u32))
        .map(|mut code| {
            let values = (0..q)
                .map(|_| {
                    let v = Elem((code % q) as u32);
                    code /= q;
                    v
                })
                .collect();
            SubfieldFn::from_table(tower, values)
        })
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    for (n1, l1) in &l1s {
        for (n2, l2) in &l2s {
            for gamma in tower.elements() {
                for (hi, h) in tables.iter().enumerate() {
                    let inst = Thm41Instance::new(
                        tower,
                        l1.clone(),
                        l2.clone(),
                        gamma,
                        h.clone(),
                        f.clone(),
                    )?;
                    out.push((format!("L1={n1} L2={n2} gamma={gamma} h#{hi}"), inst));
                }
            }
        }
    }
    Ok(out)
}

pub fn audit_thm41(
    tower: &FieldTower,
    name: &str,
    family: &[(String, Thm41Instance)],
) -> AuditReport {
    audit_equivalence(
        name,
        family,
        |inst| predicate_thm41(tower, inst).ok(),
        |inst| {
            is_bijective(
                tower,
                &build_thm41(tower, inst).expect("translator certified"),
            )
        },
    )
}
