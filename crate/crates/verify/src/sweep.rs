use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weights_core::Weights;

use crate::certificate::{hms_certificate_with, Certificate, Options};
use crate::VerifyError;

/// One line of the sweep table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a0: i64,
    pub a1: i64,
    pub l: i64,
    pub pass: bool,
    pub pairs: usize,
    pub structure_constants: usize,
    pub accepted_discs: u64,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub l_max: i64,
    pub pass: bool,
    pub rows: Vec<SweepRow>,
    pub certificates: Vec<Certificate>,
}

/// Weight pairs `1 <= a0 <= a1` with `a0 + a1 <= l_max`, ordered by
/// `l` then `a0`.
pub fn sweep_weights(l_max: i64) -> Vec<Weights> {
    (2..=l_max)
        .flat_map(|l| (1..=l / 2).map(move |a0| Weights::new(vec![a0, l - a0]).expect("positive weights")))
        .collect()
}

pub fn sweep(l_max: i64) -> Result<SweepSummary, VerifyError> {
    sweep_with(l_max, &Options::default())
}

pub fn sweep_with(l_max: i64, opts: &Options) -> Result<SweepSummary, VerifyError> {
    if l_max < 2 {
        return Err(VerifyError::SweepBound(l_max));
    }
    let certificates: Vec<Certificate> =
        sweep_weights(l_max).par_iter().map(|w| hms_certificate_with(w, opts)).collect::<Result<_, _>>()?;
    let rows: Vec<SweepRow> = certificates
        .iter()
        .map(|c| SweepRow {
            a0: c.weights.a()[0],
            a1: c.weights.a()[1],
            l: c.l,
            pass: c.pass,
            pairs: c.dimensions.len(),
            structure_constants: c.aside_digest.len(),
            accepted_discs: c.higher_products.accepted_by_length.values().sum(),
            digest: c.digest.clone(),
        })
        .collect();
    Ok(SweepSummary { l_max, pass: rows.iter().all(|r| r.pass), rows, certificates })
}

impl SweepSummary {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), VerifyError> {
        let mut wr = csv::Writer::from_writer(out);
        for row in &self.rows {
            wr.serialize(row)?;
        }
        wr.flush()?;
        Ok(())
    }
}
