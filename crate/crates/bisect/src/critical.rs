use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::BisectError;

/// Tolerance of the numeric root solve.
pub const SOLVE_TOL: f64 = 1e-9;

/// Roots of `sum coeffs[i] z^i`, the top coefficient nonzero: companion
/// matrix eigenvalues polished by Newton steps.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut m = DMatrix::<Complex64>::zeros(deg, deg);
    for col in 0..deg {
        m[(0, col)] = -coeffs[deg - 1 - col] / lead;
    }
    for r in 1..deg {
        m[(r, r - 1)] = Complex64::new(1.0, 0.0);
    }
    let (_, t) = nalgebra::Schur::new(m).unpack();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    t.diagonal()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..50 {
                let (v, dv) = eval(z);
                if dv.norm() < 1e-300 {
                    break;
                }
                let step = v / dv;
                z -= step;
                if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                    break;
                }
            }
            z
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub z: Complex64,
    pub value: Complex64,
}

pub fn eval_laurent(coeffs: &[(i64, Complex64)], z: Complex64) -> Complex64 {
    coeffs.iter().map(|&(a, c)| c * z.powi(a as i32)).sum()
}

/// Critical points of a Laurent polynomial in one variable on `C*`: the roots
/// of `z f'(z)` cleared of its lowest power of `z`. Sorted by value argument,
/// then modulus.
pub fn critical_values_univariate(coeffs: &[(i64, Complex64)]) -> Result<Vec<CriticalPoint>, BisectError> {
    let live: Vec<(i64, Complex64)> = coeffs.iter().copied().filter(|&(a, c)| a != 0 && c != Complex64::new(0.0, 0.0)).collect();
    if live.is_empty() {
        return Err(BisectError::ConstantPotential);
    }
    let lo = live.iter().map(|&(a, _)| a).min().unwrap();
    let hi = live.iter().map(|&(a, _)| a).max().unwrap();
    let mut poly = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
    for &(a, c) in &live {
        poly[(a - lo) as usize] += c * a as f64;
    }
    let mut out: Vec<CriticalPoint> =
        poly_roots(&poly).into_iter().map(|z| CriticalPoint { z, value: eval_laurent(coeffs, z) }).collect();
    out.sort_by(|a, b| {
        let key = |p: &CriticalPoint| (p.value.arg(), p.value.norm());
        key(a).partial_cmp(&key(b)).unwrap()
    });
    Ok(out)
}
