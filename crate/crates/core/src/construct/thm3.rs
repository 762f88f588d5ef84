//! Maps `x h(λ_j(x))` and `x h(μ_j(x))` with `h` over `F_q`.

use crate::error::ConstructError;
use crate::field::{Elem, FieldTower};
use crate::oracle::{is_bijective_table, FieldMap};
use crate::poly::{coprime, CoeffField, SubfieldPoly};
use crate::symm::SymmetricKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Thm3Variant {
    /// `x h(λ_j(x))`, `1 ≤ j ≤ m - 1`, `gcd(j, q - 1) = 1`.
    Lambda,
    /// `x h(μ_j(x))`, `1 ≤ j ≤ q^m - 1`, `gcd(j, q^m - 1) = 1`.
    Mu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm3Instance {
    variant: Thm3Variant,
    j: u64,
    h: SubfieldPoly,
}

impl Thm3Instance {
    pub fn new(
        tower: &FieldTower,
        variant: Thm3Variant,
        j: u64,
        h: SubfieldPoly,
    ) -> Result<Self, ConstructError> {
        let modulus = match variant {
            Thm3Variant::Lambda => {
                let j32 = u32::try_from(j).unwrap_or(u32::MAX);
                SymmetricKind::Lambda(j32).validate(tower)?;
                tower.q() as u64 - 1
            }
            Thm3Variant::Mu => {
                SymmetricKind::Mu(j).validate(tower)?;
                tower.size() as u64 - 1
            }
        };
        if !coprime(j, modulus) {
            return Err(ConstructError::GcdViolation { j, modulus });
        }
        if h.field() != CoeffField::Base {
            // re-validate as an F_q polynomial
            SubfieldPoly::new(tower, h.coeffs().to_vec(), CoeffField::Base)?;
        }
        Ok(Thm3Instance { variant, j, h })
    }

    pub fn variant(&self) -> Thm3Variant {
        self.variant
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn h(&self) -> &SubfieldPoly {
        &self.h
    }

    pub fn kind(&self) -> SymmetricKind {
        match self.variant {
            Thm3Variant::Lambda => SymmetricKind::Lambda(self.j as u32),
            Thm3Variant::Mu => SymmetricKind::Mu(self.j),
        }
    }
}

/// Evaluator of `x h(λ_j(x))` or `x h(μ_j(x))`.
#[derive(Clone, Copy, Debug)]
pub struct Thm3Map<'a> {
    tower: &'a FieldTower,
    inst: &'a Thm3Instance,
}

impl FieldMap for Thm3Map<'_> {
    fn eval(&self, x: Elem) -> Elem {
        let t = self.tower;
        let v = self.inst.kind().eval(t, x).expect("index validated");
        t.mul(x, self.inst.h.eval(t, v))
    }
}

pub fn build_thm3<'a>(tower: &'a FieldTower, inst: &'a Thm3Instance) -> Thm3Map<'a> {
    Thm3Map { tower, inst }
}

/// `h(0) ≠ 0` and `x h(x)^j` permutes `F_q`.
pub fn predicate_thm3(tower: &FieldTower, inst: &Thm3Instance) -> bool {
    if inst.h.eval(tower, Elem::ZERO).is_zero() {
        return false;
    }
    let values: Vec<Elem> = tower
        .subfield_elements()
        .map(|x| tower.mul(x, tower.pow(inst.h.eval(tower, x), inst.j)))
        .collect();
    is_bijective_table(&values)
}
