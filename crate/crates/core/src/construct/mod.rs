//! Builders and condition predicates for the permutation constructions.

mod thm21;
mod thm3;
mod thm41;

use std::fmt;
use std::str::FromStr;

pub use thm21::{
    build_thm21, check_thm21_cond1, check_thm21_cond2, check_thm21_cond2_by_scan,
    check_thm21_hypotheses, cor21_instance, cor22_instance, cor23_instance, image_of_b,
    predicate_cor23, predicate_thm21, Clause, Cond2Report, Thm21Hypotheses, Thm21Instance,
    Thm21Map, Thm21Term, Witness,
};
pub use thm3::{build_thm3, predicate_thm3, Thm3Instance, Thm3Map, Thm3Variant};
pub use thm41::{
    build_thm41, certify_thm41, find_linear_translators, is_linear_translator, predicate_thm41,
    LinearTranslatorCert, SubfieldFn, SubfieldValuedFn, Thm41Instance, Thm41Map,
};

/// Construction identifiers used in instance files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `Σ (L_i(x) + γ_i) h_i(B(x))`
    Thm21,
    /// `x h(λ_j(x))`
    Thm31,
    /// `x h(μ_j(x))`
    Thm32,
    /// `L1(x) + L2(γ) h(f(x))`
    Thm41,
    /// `L1(x) + (L2(x) + γ) h(Tr(x))`
    Cor21,
    /// `L(x) + x h(Tr(x))`
    Cor22,
    /// `L(x) + γ h(Tr(x))`
    Cor23,
    /// `L(x) + L(γ) h(f(x))`
    Cor41,
}

impl Construction {
    pub const ALL: [Construction; 8] = [
        Construction::Thm21,
        Construction::Thm31,
        Construction::Thm32,
        Construction::Thm41,
        Construction::Cor21,
        Construction::Cor22,
        Construction::Cor23,
        Construction::Cor41,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Construction::Thm21 => "thm21",
            Construction::Thm31 => "thm31",
            Construction::Thm32 => "thm32",
            Construction::Thm41 => "thm41",
            Construction::Cor21 => "cor21",
            Construction::Cor22 => "cor22",
            Construction::Cor23 => "cor23",
            Construction::Cor41 => "cor41",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown construction {s:?}"))
    }
}
