//! Marked polytopes, their subdivisions and bisections, the weights a
//! bisection induces, and numeric tracking of how critical values of the
//! deformed potential split.

pub mod config;
pub mod critical;
pub mod marked;
pub mod track;
pub mod triangulate;
pub mod weights;

pub use config::{BisectConfig, CoefficientSpec, PointSpec};
pub use critical::{critical_values_univariate, eval_laurent, poly_roots, CriticalPoint, SOLVE_TOL};
pub use marked::{validate_bisection, validate_subdivision, Bisection, MarkedPolytope, Subdivision, ValidationReport, Violation};
pub use track::{assign, seeded_coefficients, track_splitting, SplitReport, Trajectory};
pub use triangulate::{triangulations_1d, Triangulation1d};
pub use weights::{
    coherence_weight, deform_coeffs, linearity_domains_match, reparameterized_weight, wall_functional, Affine,
    DeformedPotential, PLWeight,
};

use weights_core::{CoreError, Point};

#[derive(Debug, thiserror::Error)]
pub enum BisectError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("the cells share {0} vertices, not a wall")]
    NoWall(usize),
    #[error("no weight at {0:?}")]
    Unweighted(Point),
    #[error("exact coefficient overflows 64 bits")]
    Overflow,
    #[error("bad schedule: {0}")]
    Schedule(String),
    #[error("critical value tracking needs a configuration on a line")]
    NotOneDimensional,
    #[error("potential is constant")]
    ConstantPotential,
    #[error("no generic coefficients found from seed {0}")]
    NoGenericDraw(u64),
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
}
