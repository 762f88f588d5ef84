//! Ground-truth bijectivity checks by exhaustive evaluation.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::ConstructError;
use crate::field::{Elem, FieldTower};
use crate::par;

/// A total map on field elements.
pub trait FieldMap: Sync {
    fn eval(&self, x: Elem) -> Elem;
}

impl<F: Fn(Elem) -> Elem + Sync> FieldMap for F {
    fn eval(&self, x: Elem) -> Elem {
        self(x)
    }
}

/// Values of `map` on every element of `F_{q^m}`, in code order.
pub fn tabulate<M: FieldMap + ?Sized>(tower: &FieldTower, map: &M) -> Vec<Elem> {
    par::map_indices(tower.size(), |x| map.eval(Elem(x)))
}

/// Verdict of an exhaustive bijectivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub is_permutation: bool,
    pub domain_size: usize,
    pub image_size: usize,
    /// Smallest `x2` whose value repeats, paired with the first preimage `x1`.
    pub first_collision: Option<(Elem, Elem)>,
    #[serde(serialize_with = "ser_duration")]
    pub elapsed: Duration,
}

fn ser_duration<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl PermutationReport {
    /// Same verdict, ignoring timing.
    pub fn same_verdict(&self, other: &Self) -> bool {
        self.is_permutation == other.is_permutation
            && self.domain_size == other.domain_size
            && self.image_size == other.image_size
            && self.first_collision == other.first_collision
    }
}

fn report_from_values(
    tower: &FieldTower,
    domain: &[Elem],
    values: &[Elem],
    start: Instant,
) -> PermutationReport {
    const UNSEEN: u32 = u32::MAX;
    let mut first_pre = vec![UNSEEN; tower.size() as usize];
    let mut image_size = 0;
    let mut first_collision = None;
    for (&x, &y) in domain.iter().zip(values) {
        let slot = &mut first_pre[y.0 as usize];
        if *slot == UNSEEN {
            *slot = x.0;
            image_size += 1;
        } else if first_collision.is_none() {
            first_collision = Some((Elem(*slot), x));
        }
    }
    PermutationReport {
        is_permutation: first_collision.is_none(),
        domain_size: domain.len(),
        image_size,
        first_collision,
        elapsed: start.elapsed(),
    }
}

/// Whether `map` is a bijection of `F_{q^m}`.
pub fn is_permutation<M: FieldMap + ?Sized>(tower: &FieldTower, map: &M) -> PermutationReport {
    let start = Instant::now();
    let values = tabulate(tower, map);
    let domain: Vec<Elem> = tower.elements().collect();
    report_from_values(tower, &domain, &values, start)
}

/// Whether a precomputed table (indexed by code) is a bijection of `F_{q^m}`.
pub fn is_permutation_table(tower: &FieldTower, values: &[Elem]) -> PermutationReport {
    let start = Instant::now();
    let domain: Vec<Elem> = tower.elements().collect();
    report_from_values(tower, &domain, values, start)
}

/// Whether `map` restricted to `domain` is a bijection of `domain` onto itself.
///
/// `domain` must be sorted and duplicate-free. Fails with `ImageEscape` at the
/// first `x` (in code order) whose value lies outside `domain`.
pub fn is_permutation_on<M: FieldMap + ?Sized>(
    tower: &FieldTower,
    domain: &[Elem],
    map: &M,
) -> Result<PermutationReport, ConstructError> {
    let start = Instant::now();
    let values = par::map_slice(domain, |&x| map.eval(x));
    if let Some((x, value)) = domain
        .iter()
        .zip(&values)
        .find(|(_, v)| domain.binary_search(v).is_err())
    {
        return Err(ConstructError::ImageEscape {
            x: *x,
            value: *value,
        });
    }
    Ok(report_from_values(tower, domain, &values, start))
}

/// Sorted, distinct values of `map` on `domain`.
pub fn image<M: FieldMap + ?Sized>(map: &M, domain: impl Iterator<Item = Elem>) -> Vec<Elem> {
    let set: BTreeSet<Elem> = domain.map(|x| map.eval(x)).collect();
    set.into_iter().collect()
}

/// Whether a map on `F_q`, given as its `q` values in code order, is a bijection.
pub fn is_bijective_table(values: &[Elem]) -> bool {
    let mut seen = vec![false; values.len()];
    for v in values {
        match seen.get_mut(v.0 as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// One instance where the theorem predicate and the oracle differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub id: String,
    pub predicate: bool,
    pub oracle: bool,
}

/// Outcome of comparing a predicate with the oracle over a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub family: String,
    pub instances_checked: usize,
    pub agreements: usize,
    /// Instances rejected by their hypothesis check and not compared.
    pub skipped: usize,
    /// Oracle verdicts that were "permutation".
    pub permutations: usize,
    pub disagreements: Vec<Disagreement>,
    /// Seed used when the family was sampled rather than enumerated.
    pub seed: Option<u64>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs `predicate` and the oracle on each instance and records where they
/// differ.
///
/// `predicate` returns `None` for instances whose hypotheses fail; those are
/// counted as skipped. `builder` is only called for the others.
pub fn audit_equivalence<T, P, O>(
    family: &str,
    instances: &[(String, T)],
    predicate: P,
    oracle: O,
) -> AuditReport
where
    T: Sync,
    P: Fn(&T) -> Option<bool> + Sync + Send,
    O: Fn(&T) -> bool + Sync + Send,
{
    let verdicts: Vec<Option<(bool, bool)>> = par::map_slice(instances, |(_, inst)| {
        let pred = predicate(inst)?;
        Some((pred, oracle(inst)))
    });
    let mut report = AuditReport {
        family: family.to_owned(),
        instances_checked: 0,
        agreements: 0,
        skipped: 0,
        permutations: 0,
        disagreements: Vec::new(),
        seed: None,
    };
    for ((id, _), v) in instances.iter().zip(verdicts) {
        match v {
            None => report.skipped += 1,
            Some((pred, oracle)) => {
                report.instances_checked += 1;
                report.permutations += usize::from(oracle);
                if pred == oracle {
                    report.agreements += 1;
                } else {
                    report.disagreements.push(Disagreement {
                        id: id.clone(),
                        predicate: pred,
                        oracle,
                    });
                }
            }
        }
    }
    report
}

/// Bijectivity by presence bitmap, sequential; meant for the `oracle`
/// argument of [`audit_equivalence`], which already runs in parallel.
pub fn is_bijective<M: FieldMap + ?Sized>(tower: &FieldTower, map: &M) -> bool {
    let mut seen = vec![false; tower.size() as usize];
    for x in tower.elements() {
        let slot = &mut seen[map.eval(x).0 as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearizedPoly;

    #[test]
    fn frobenius_minus_identity_collides_at_one() {
        let t = FieldTower::new(2, 2, 2).unwrap();
        let l = LinearizedPoly::frobenius_minus_identity(&t);
        let r = is_permutation(&t, &|x| l.eval(&t, x));
        assert!(!r.is_permutation);
        assert_eq!(r.first_collision, Some((Elem(0), Elem(1))));
        assert_eq!(r.image_size, 4);
        assert_eq!(r.domain_size, 16);
    }

    #[test]
    fn identity_and_constants() {
        let t = FieldTower::new(3, 1, 2).unwrap();
        let r = is_permutation(&t, &|x: Elem| x);
        assert!(r.is_permutation && r.image_size == 9 && r.first_collision.is_none());
        assert_eq!(image(&|_| Elem(5), t.elements()), vec![Elem(5)]);
    }

    #[test]
    fn cubes_in_f4() {
        let t = FieldTower::new(2, 2, 1).unwrap();
        assert_eq!(
            image(&|x| t.pow(x, 3), t.elements()),
            vec![Elem(0), Elem(1)]
        );
    }

    #[test]
    fn subset_domain() {
        let t = FieldTower::new(2, 2, 2).unwrap();
        let sub: Vec<Elem> = t.subfield_elements().collect();
        let r = is_permutation_on(&t, &sub, &|x| t.pow(x, 2)).unwrap();
        assert!(r.is_permutation);
        let err = is_permutation_on(&t, &sub, &|x| t.mul(x, Elem(4))).unwrap_err();
        assert_eq!(
            err,
            ConstructError::ImageEscape {
                x: Elem(1),
                value: Elem(4)
            }
        );
    }

    #[test]
    fn empty_audit() {
        let t = FieldTower::new(2, 1, 1).unwrap();
        let none: Vec<(String, ())> = Vec::new();
        let r = audit_equivalence(
            "empty",
            &none,
            |_| Some(true),
            |_| is_bijective(&t, &|x: Elem| x),
        );
        assert_eq!(r.instances_checked, 0);
        assert!(r.is_clean());
    }

    #[test]
    fn bijective_tables() {
        assert!(is_bijective_table(&[Elem(1), Elem(0), Elem(2)]));
        assert!(!is_bijective_table(&[Elem(1), Elem(1), Elem(2)]));
        assert!(!is_bijective_table(&[Elem(3), Elem(1), Elem(2)]));
    }
}
