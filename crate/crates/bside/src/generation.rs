use serde::{Deserialize, Serialize};
use weights_core::{ExteriorBasisElement, Weights};

use crate::BsideError;

/// The `m`-th vector in the lexicographic walk from `0` to `a` inside the box
/// `0 <= c_j <= a_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVector {
    pub m: i64,
    pub c: Vec<i64>,
}

impl CmVector {
    /// Checks the three defining conditions against `w`.
    pub fn satisfies_conditions(&self, w: &Weights) -> bool {
        let a = w.a();
        if self.c.iter().sum::<i64>() != self.m {
            return false;
        }
        let mut prefix_a = 0;
        let mut prefix_c = 0;
        for (&x, &c) in a.iter().zip(&self.c) {
            // Once the weights before this coordinate reach m, it stays zero.
            if prefix_a >= self.m && c != 0 {
                return false;
            }
            prefix_a += x;
            prefix_c += c;
            if prefix_a <= self.m && prefix_c != prefix_a {
                return false;
            }
        }
        self.c.iter().zip(a).all(|(&c, &x)| (0..=x).contains(&c))
    }
}

pub fn cm_sequence(w: &Weights, m: i64) -> Result<CmVector, BsideError> {
    if m < 0 || m > w.l() {
        return Err(BsideError::StepOutOfRange { m, l: w.l() });
    }
    let mut rest = m;
    let c = w
        .a()
        .iter()
        .map(|&a| {
            let take = rest.min(a);
            rest -= take;
            take
        })
        .collect();
    Ok(CmVector { m, c })
}

/// One step `K_m -> K_{m-1} -> L_{m-1}`: the coordinate that moved and the
/// twists `sum_{j in J} c_{m-1, j}` of the cokernel summands, `J` ranging
/// over subsets containing that coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStep {
    pub m: i64,
    pub moved: usize,
    pub c_prev: Vec<i64>,
    pub summands: Vec<(ExteriorBasisElement, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub weights: Weights,
    pub pass: bool,
    pub failures: Vec<String>,
    pub steps: Vec<GenerationStep>,
}

pub fn generation_certificate(w: &Weights) -> GenerationReport {
    let l = w.l();
    let n1 = w.len();
    let mut failures = Vec::new();
    let mut steps = Vec::new();
    let cs: Vec<CmVector> = (0..=l).map(|m| cm_sequence(w, m).expect("m in range")).collect();

    if cs[0].c.iter().any(|&x| x != 0) {
        failures.push("c_0 is not zero".into());
    }
    if cs[l as usize].c != w.a() {
        failures.push("c_l is not a".into());
    }
    for cm in &cs {
        if !cm.satisfies_conditions(w) {
            failures.push(format!("c_{} = {:?} violates the defining conditions", cm.m, cm.c));
        }
    }

    for m in 1..=l {
        let prev = &cs[m as usize - 1].c;
        let cur = &cs[m as usize].c;
        let diff: Vec<i64> = cur.iter().zip(prev).map(|(a, b)| a - b).collect();
        let moved = diff.iter().position(|&d| d == 1);
        let unit = moved.is_some() && diff.iter().filter(|&&d| d != 0).count() == 1;
        let Some(moved) = moved.filter(|_| unit) else {
            failures.push(format!("c_{m} - c_{} = {diff:?} is not a unit vector", m - 1));
            continue;
        };

        let mut summands = Vec::new();
        for mask in 0u64..1 << n1 {
            let j = ExteriorBasisElement::from_mask(mask);
            let twist: i64 = j.subset().iter().map(|&x| prev[x]).sum();
            if m < l && !(0..=l - 2).contains(&twist) {
                failures.push(format!("m = {m}, J = {j}: twist {twist} outside [0, {}]", l - 2));
            }
            if mask >> moved & 1 == 1 {
                summands.push((j, twist));
            }
        }

        if m == l {
            let full = (1u64 << n1) - 1;
            let mut tops = 0;
            for (j, twist) in &summands {
                if j.mask() == full {
                    if *twist != l - 1 {
                        failures.push(format!("top summand has twist {twist}, expected {}", l - 1));
                    }
                } else if *twist >= l - 1 {
                    failures.push(format!("proper J = {j} has twist {twist} >= {}", l - 1));
                }
                if *twist == l - 1 {
                    tops += 1;
                }
            }
            if tops != 1 {
                failures.push(format!("{tops} summands of twist l - 1 at m = l"));
            }
        }
        steps.push(GenerationStep { m, moved, c_prev: prev.clone(), summands });
    }

    GenerationReport { weights: w.clone(), pass: failures.is_empty(), failures, steps }
}
