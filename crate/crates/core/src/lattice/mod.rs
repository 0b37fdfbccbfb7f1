//! Elements and finite subgroups of `(Q/Z)^n`, the home of every diagonal
//! symmetry group in the crate.

mod group;
pub mod intmat;
mod torsion;

pub use group::FiniteDiagonalGroup;
pub use intmat::{smith_normal_form, IntMatrix, Smith};
pub use torsion::TorsionVector;
