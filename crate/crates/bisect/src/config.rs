use std::path::Path;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use weights_core::Point;

use crate::marked::{Bisection, MarkedPolytope};
use crate::track::seeded_coefficients;
use crate::BisectError;

/// A marked point: an integer on the line or a point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Line(i64),
    Plane([i64; 2]),
}

impl PointSpec {
    pub fn point(self) -> Point {
        match self {
            PointSpec::Line(x) => [x, 0],
            PointSpec::Plane(p) => p,
        }
    }
}

/// A coefficient written as an integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Int(i64),
    Text(String),
}

impl CoefficientSpec {
    pub fn value(&self) -> Result<Rational64, BisectError> {
        match self {
            CoefficientSpec::Int(n) => Ok(Rational64::from_integer(*n)),
            CoefficientSpec::Text(s) => s.trim().parse().map_err(|_| BisectError::BadConfiguration(format!("bad coefficient {s:?}"))),
        }
    }
}

fn default_schedule() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3]
}

fn default_tolerance() -> f64 {
    1e-4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectConfig {
    #[serde(rename = "A")]
    pub a: Vec<PointSpec>,
    #[serde(rename = "A0")]
    pub a0: Vec<PointSpec>,
    #[serde(rename = "A1")]
    pub a1: Vec<PointSpec>,
    /// One per point of `A`, in order. Drawn from `seed` when absent.
    #[serde(default)]
    pub coefficients: Option<Vec<CoefficientSpec>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_schedule")]
    pub t_schedule: Vec<f64>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn points(specs: &[PointSpec]) -> Vec<Point> {
    specs.iter().map(|p| p.point()).collect()
}

impl BisectConfig {
    pub fn load(path: &Path) -> Result<Self, BisectError> {
        let text = std::fs::read_to_string(path).map_err(|e| BisectError::BadConfiguration(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, BisectError> {
        serde_json::from_str(text).map_err(|e| BisectError::BadConfiguration(e.to_string()))
    }

    pub fn parent(&self) -> Result<MarkedPolytope, BisectError> {
        MarkedPolytope::hull_of(&points(&self.a))
    }

    pub fn bisection(&self) -> Result<Bisection, BisectError> {
        Bisection::from_marks(&points(&self.a0), &points(&self.a1))
    }

    /// Coefficients on a line configuration, keyed by exponent.
    pub fn line_coefficients(&self) -> Result<Vec<(i64, Rational64)>, BisectError> {
        if self.a.iter().any(|p| p.point()[1] != 0) {
            return Err(BisectError::NotOneDimensional);
        }
        match (&self.coefficients, self.seed) {
            (Some(cs), _) => {
                if cs.len() != self.a.len() {
                    return Err(BisectError::BadConfiguration(format!(
                        "{} coefficients for {} points",
                        cs.len(),
                        self.a.len()
                    )));
                }
                self.a.iter().zip(cs).map(|(p, c)| Ok((p.point()[0], c.value()?))).collect()
            }
            (None, Some(seed)) => seeded_coefficients(&self.bisection()?, seed, &self.t_schedule, self.tolerance),
            (None, None) => Err(BisectError::BadConfiguration("give coefficients or a seed".into())),
        }
    }
}
