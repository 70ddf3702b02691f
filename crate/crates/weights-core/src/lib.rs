//! Shared arithmetic for weight vectors: the graded ring `C[x_0..x_n]` with
//! `deg x_i = a_i`, the bigraded exterior algebra on generators `e_i`, and
//! lattice polytopes of dimension at most two.
//!
//! Everything here is exact. Dimensions are counted by enumeration and
//! volumes by integer shoelace sums.

mod exterior;
mod hom;
mod polytope;
pub mod ratser;
mod ring;

pub use exterior::{exterior_basis, exterior_dimension_total, ExteriorBasisElement};
pub use hom::BigradedHom;
pub use polytope::{convex_hull, cross, LatticePolytope, Point};
pub use ring::{graded_dim, monomial_basis, sheaf_cohomology_dim, Monomial, Weights};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("weight a_{index} = {value} is not a positive integer")]
    NonPositiveWeight { index: usize, value: i64 },
    #[error("cohomological degree {p} outside [0, {n}]")]
    DegreeOutOfRange { p: i64, n: usize },
    #[error("polytope is degenerate: {0}")]
    Degenerate(&'static str),
    #[error("too many weights ({0}); at most 62 are supported")]
    TooManyWeights(usize),
}
