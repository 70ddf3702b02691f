use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use aside::{higher_products_vanish, hom_space, intersections, m2_product, HigherProductReport};
use bside::{compose_dual, dual_ext, verify_prop6_via_resolution, DualElement};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use weights_core::{ExteriorBasisElement, Weights};

use crate::VerifyError;

/// Word length used for the higher product search unless overridden.
pub const DEFAULT_WORD_LEN: usize = 8;

/// One nonzero structure constant `left * right = coefficient * result`
/// for composable basis elements `right: i -> j` and `left: j -> k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StructureConstant {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub left: ExteriorBasisElement,
    pub right: ExteriorBasisElement,
    #[serde(with = "weights_core::ratser")]
    pub coefficient: Rational64,
    pub result: ExteriorBasisElement,
}

/// Dimensions by degree of both sides for one pair `j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDims {
    pub j: i64,
    pub k: i64,
    pub aside: BTreeMap<i64, usize>,
    pub bside: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub dimensions: bool,
    pub labels: bool,
    pub composition: bool,
    pub higher_products: bool,
    pub resolution: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.dimensions && self.labels && self.composition && self.higher_products && self.resolution
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub j: i64,
    pub k: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub index_mapping: String,
    pub weight_convention: String,
    pub label_map: String,
    pub resolutions: Vec<String>,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            index_mapping: "Hom(L_j, L_k) is compared with Ext(S_k, S_j) for 0 <= j < k <= l-2".into(),
            weight_convention: "deg e_i = 1, weight of e_J is the sum of a_i over J, truncated at k - j".into(),
            label_map: "arc point -> 1, (+,-) segment point -> e0, (-,+) segment point -> e1".into(),
            resolutions: vec![
                "segment intersection abscissae are solved from the line equations of the two pieces".into(),
                "slope of s_{j+} has intercept 2j + 1".into(),
                "resolution positions run from 0 to k".into(),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub weights: Weights,
    pub l: i64,
    pub conventions: Conventions,
    pub dimensions: Vec<PairDims>,
    pub aside_digest: Vec<StructureConstant>,
    pub bside_digest: Vec<StructureConstant>,
    pub higher_products: HigherProductReport,
    pub checks: Checks,
    pub first_counterexample: Option<Counterexample>,
    pub pass: bool,
    pub tool_version: String,
    /// Seconds since the Unix epoch. Not covered by `digest`.
    pub timestamp: u64,
    /// SHA-256 of the JSON with `timestamp` zeroed and `digest` empty.
    pub digest: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn compute_digest(&self) -> String {
        let blank = Certificate { timestamp: 0, digest: String::new(), ..self.clone() };
        let bytes = serde_json::to_vec(&blank).expect("certificate serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn digest_matches(&self) -> bool {
        self.compute_digest() == self.digest
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MutationKind {
    Negate,
    Drop,
}

/// A single corrupted structure constant, for checking that the
/// certificate notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub side: Side,
    /// Taken modulo the digest length.
    pub index: usize,
    pub kind: MutationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_word_len: usize,
    pub mutation: Option<Mutation>,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_word_len: DEFAULT_WORD_LEN, mutation: None }
    }
}

pub fn hms_certificate(w: &Weights) -> Result<Certificate, VerifyError> {
    hms_certificate_with(w, &Options::default())
}

fn check_weights(w: &Weights) -> Result<(), VerifyError> {
    match w.a() {
        [a0, a1] if a0 <= a1 => Ok(()),
        [a0, a1] => Err(VerifyError::InvalidWeights(format!("weights must be ascending, got {a0},{a1}"))),
        a => Err(VerifyError::InvalidWeights(format!("need exactly two weights, got {}", a.len()))),
    }
}

fn dual(j: i64, k: i64, subset: ExteriorBasisElement) -> DualElement {
    DualElement { source: j, target: k, subset }
}

pub fn hms_certificate_with(w: &Weights, opts: &Options) -> Result<Certificate, VerifyError> {
    check_weights(w)?;
    let top = w.l() - 2;
    let mut first: Option<Counterexample> = None;
    let mut fail = |check: &str, j: i64, k: i64, detail: String| {
        first.get_or_insert(Counterexample { check: check.into(), j, k, detail });
    };
    let mut checks = Checks { dimensions: true, labels: true, composition: true, higher_products: true, resolution: true };

    let mut dimensions = Vec::new();
    for j in 0..=top {
        for k in j + 1..=top {
            let a = hom_space(w, j, k)?;
            let b = dual_ext(w, k, j)?;
            let (da, db) = (a.dims_by_degree(), b.dims_by_degree());
            if da != db {
                checks.dimensions = false;
                fail("dimensions", j, k, format!("{da:?} vs {db:?}"));
            }
            let mut la: Vec<(i64, ExteriorBasisElement)> = a.basis.iter().map(|(d, g)| (*d, g.label())).collect();
            let mut lb: Vec<(i64, ExteriorBasisElement)> = b.basis.clone();
            la.sort();
            lb.sort();
            if la != lb {
                checks.labels = false;
                fail("labels", j, k, format!("{la:?} vs {lb:?}"));
            }
            let r = verify_prop6_via_resolution(w, k, j)?;
            let mut lr = r.basis.clone();
            lr.sort();
            if lr != lb {
                checks.resolution = false;
                fail("resolution", j, k, format!("{lr:?} vs {lb:?}"));
            }
            dimensions.push(PairDims { j, k, aside: da, bside: db });
        }
    }

    let mut aside_digest = Vec::new();
    let mut bside_digest = Vec::new();
    for i in 0..=top {
        for j in i + 1..=top {
            let right = intersections(w, i, j)?;
            for k in j + 1..=top {
                let left = intersections(w, j, k)?;
                for p0 in &right {
                    for p1 in &left {
                        for (c, p) in m2_product(w, p1, p0)? {
                            if p.degree != p0.degree + p1.degree {
                                checks.composition = false;
                                fail("composition", i, k, format!("degree of {p:?} is not additive"));
                            }
                            aside_digest.push(StructureConstant {
                                i,
                                j,
                                k,
                                left: p1.label.clone(),
                                right: p0.label.clone(),
                                coefficient: Rational64::from_integer(c),
                                result: p.label,
                            });
                        }
                    }
                }
                let bl = dual_ext(w, k, j)?;
                let br = dual_ext(w, j, i)?;
                for (_, v) in &br.basis {
                    for (_, u) in &bl.basis {
                        if let Some((c, e)) = compose_dual(w, &dual(j, k, u.clone()), &dual(i, j, v.clone()))? {
                            bside_digest.push(StructureConstant {
                                i,
                                j,
                                k,
                                left: u.clone(),
                                right: v.clone(),
                                coefficient: Rational64::from_integer(c),
                                result: e.subset,
                            });
                        }
                    }
                }
            }
        }
    }
    if let Some(m) = opts.mutation {
        let digest = match m.side {
            Side::A => &mut aside_digest,
            Side::B => &mut bside_digest,
        };
        if !digest.is_empty() {
            let at = m.index % digest.len();
            match m.kind {
                MutationKind::Negate => digest[at].coefficient = -digest[at].coefficient,
                MutationKind::Drop => {
                    digest.remove(at);
                }
            }
        }
    }
    aside_digest.sort();
    bside_digest.sort();
    if aside_digest != bside_digest {
        checks.composition = false;
        let diff = aside_digest
            .iter()
            .zip(&bside_digest)
            .find(|(a, b)| a != b)
            .map(|(a, b)| (a.clone(), Some(b.clone())))
            .or_else(|| {
                let n = aside_digest.len().min(bside_digest.len());
                aside_digest.get(n).or(bside_digest.get(n)).map(|a| (a.clone(), None))
            });
        if let Some((a, b)) = diff {
            fail("composition", a.i, a.k, format!("{a:?} vs {b:?}"));
        }
    }

    let higher_products = higher_products_vanish(w, opts.max_word_len)?;
    if !higher_products.pass {
        checks.higher_products = false;
        fail("higher_products", 0, top, format!("accepted discs by corners {:?}", higher_products.accepted_by_corners));
    }

    let mut cert = Certificate {
        weights: w.clone(),
        l: w.l(),
        conventions: Conventions::default(),
        dimensions,
        aside_digest,
        bside_digest,
        higher_products,
        pass: checks.all(),
        checks,
        first_counterexample: first,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        digest: String::new(),
    };
    cert.digest = cert.compute_digest();
    Ok(cert)
}
