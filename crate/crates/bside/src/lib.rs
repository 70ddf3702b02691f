//! The derived category side: Ext groups between the pushforwards
//! `i_* O(k)`, `0 <= k <= l - 2`, their Koszul dual collection `S_k`, the
//! projective resolutions relating the two, and the `c_m` bookkeeping that
//! certifies the collection generates.

mod dual;
mod generation;
mod quiver;
mod resolution;

pub use dual::{compose_dual, dual_ext, wedge_sign, DualElement};
pub use generation::{cm_sequence, generation_certificate, CmVector, GenerationReport, GenerationStep};
pub use quiver::{compose_quiver, ext_pushforward, quiver_basis, QuiverElement};
pub use resolution::{resolution_summands, verify_prop6_via_resolution, ResolutionSummand};

use thiserror::Error;
use weights_core::Weights;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsideError {
    #[error("object index {index} outside [0, {max}]")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("morphisms do not compose: {0} -> {1} followed by {2} -> {3}")]
    EndpointMismatch(i64, i64, i64, i64),
    #[error("m = {m} outside [0, {l}]")]
    StepOutOfRange { m: i64, l: i64 },
    #[error("invalid element: {0}")]
    InvalidElement(String),
}

pub(crate) fn check_index(w: &Weights, index: i64) -> Result<(), BsideError> {
    let max = w.l() - 2;
    if index < 0 || index > max {
        return Err(BsideError::IndexOutOfRange { index, max });
    }
    Ok(())
}
