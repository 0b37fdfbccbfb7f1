//! Exact computation of the equivariant Poincaré series, the equivariant
//! monodromy zeta function and the orbit invariant of a quasihomogeneous
//! polynomial with a diagonal abelian symmetry group, together with an exact
//! check of the relation
//!
//! ```text
//! Tau(Log P_X) − Or_X = Ind ζ̃_f
//! ```
//!
//! in the extended Burnside group of `C*·G`.

pub mod arith;
pub mod burnside;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod pipeline;
pub mod qhpoly;
pub mod repr;
pub mod strata;

pub use error::{Error, Result};
