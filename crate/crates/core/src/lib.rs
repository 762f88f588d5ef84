//! Permutation polynomials over a tower `F_p ⊂ F_q ⊂ F_{q^m}`.
//!
//! Elements are integer codes whose base-`p` digits are coordinates in the
//! flat basis `{ y^i t^j }`, so elements of `F_q` keep their codes inside the
//! extension. Every construction has a predicate (the criterion stated over
//! the subfield or over a linear kernel) and a builder (the map itself); the
//! [`oracle`] decides the question by exhaustive evaluation and serves as the
//! reference for both.

pub mod construct;
pub mod error;
pub mod families;
pub mod field;
pub mod io;
mod irreducible;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod symm;

pub use error::{ConstructError, FieldError, PolyError, SymmError};
pub use field::{Elem, FieldElement, FieldTower, TowerSpec};
pub use oracle::{is_permutation, FieldMap, PermutationReport};
