//! Exact integer cohomology of the 3-Sasakian 7-manifolds S7_Omega.
//!
//! For a (k+2) x k integer matrix Omega whose deleted-rows minors
//! Delta_pq are all nonzero and rowwise coprime, this crate computes the
//! full integer cohomology ring of the associated manifold: the Betti
//! table, the degree-4 torsion group G_Omega with its cup-product
//! structure, and the first Pontrjagin class. The torsion order is
//! cross-checked by four independent routes (spanning-tree sums, a
//! weighted Kirchhoff determinant, Smith normal form, and a square
//! relations-matrix determinant), and the report is refused unless all
//! four agree.

pub mod classes;
pub mod cohomology;
pub mod error;
pub mod families;
pub mod idx;
pub mod linalg;
pub mod omega;
pub mod poly;
pub mod trees;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use omega::{ConditionReport, OmegaMatrix, SignSystem};
