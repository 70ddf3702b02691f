//! Vanishing cycles of the two-variable potential in an exact strip model:
//! intersection points, their degrees, the polygons that define products,
//! and the critical data of the potential.

pub mod critical;
pub mod points;
pub mod strip;
pub mod svg;
pub mod words;

pub use critical::{critical_data, h_poly_roots, monodromy_data, CriticalDatum, HRoots, MonodromyData, ROOT_TOL};
pub use points::{hom_space, intersections, maslov_degree, HomGenerator};
pub use strip::{build_curves, Gaussian, IntersectionPoint, Kind, Piece, Strip, StripCurve};
pub use svg::strip_svg;
pub use words::{
    classify_disc_word, classify_disc_word_shifted, higher_products_vanish, m2_product, word_from_corners, DiscWord,
    HigherProductReport, Letter, RejectReason, Sign, Verdict,
};

#[derive(Debug, thiserror::Error)]
pub enum AsideError {
    #[error("the strip model needs exactly two weights, got {0}")]
    NotTwoWeights(usize),
    #[error("weights must satisfy a0 <= a1, got ({0},{1})")]
    Unsorted(i64, i64),
    #[error("curve index {index} outside [0, {max}]")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("intersection needs j < k, got ({0}, {1})")]
    NotAscending(i64, i64),
    #[error("L_{0} and L_{1} have no {2:?} point")]
    NoSuchPoint(i64, i64, Kind),
    #[error("cannot compose ({2} -> {3}) after ({0} -> {1})")]
    EndpointMismatch(i64, i64, i64, i64),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("word length bound {0} is below 6")]
    WordBound(usize),
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
}
