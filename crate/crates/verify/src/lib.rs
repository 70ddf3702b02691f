//! Compares the strip model with the dual exceptional collection pair by
//! pair and triple by triple, and packages the outcome as a certificate.

pub mod certificate;
pub mod sweep;

pub use certificate::{
    hms_certificate, hms_certificate_with, Certificate, Checks, Conventions,
    Counterexample, Mutation, MutationKind, Options, PairDims, Side, StructureConstant, DEFAULT_WORD_LEN,
};
pub use sweep::{sweep, sweep_weights, sweep_with, SweepRow, SweepSummary};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("sweep bound must be at least 2, got {0}")]
    SweepBound(i64),
    #[error(transparent)]
    Aside(#[from] aside::AsideError),
    #[error(transparent)]
    Bside(#[from] bside::BsideError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
