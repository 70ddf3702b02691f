use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use weights_core::Weights;

use crate::strip::Strip;
use crate::AsideError;

/// Tolerance for the numeric root solve and the double root test.
pub const ROOT_TOL: f64 = 1e-9;

/// The critical point `(z^i, ..., z^i)` with `z = exp(2 pi i / (l - 1))` and its
/// value `(l - 1) z^i`, kept in exact polar form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalDatum {
    pub index: i64,
    pub modulus: i64,
    /// Argument as a fraction of a full turn.
    #[serde(with = "weights_core::ratser")]
    pub turn: Rational64,
}

impl CriticalDatum {
    pub fn value(&self) -> Complex64 {
        let angle = 2.0 * PI * (*self.turn.numer() as f64) / (*self.turn.denom() as f64);
        Complex64::from_polar(self.modulus as f64, angle)
    }
}

pub fn critical_data(w: &Weights) -> Vec<CriticalDatum> {
    let m = w.l() - 1;
    (0..m)
        .map(|i| CriticalDatum { index: i, modulus: m, turn: Rational64::new(i, m) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HRoots {
    pub roots: Vec<Complex64>,
    /// Set when `h_q` has a root within tolerance of a double root.
    pub near_double_root: bool,
}

/// Roots of `h_q(x) = x^l - l^l x + l^l q`.
///
/// With `x = s y` and `s = l^(l/(l-1))` the polynomial becomes
/// `y^l - y + q/s`, whose companion matrix stays well scaled.
pub fn h_poly_roots(w: &Weights, q: Complex64) -> Result<HRoots, AsideError> {
    let strip = Strip::new(w)?;
    let l = strip.l() as usize;
    let lf = l as f64;
    let s = lf.powf(lf / (lf - 1.0));
    let c = q / s;

    // y^l + c1 y^(l-1) + ... + c_l with only c_{l-1} = -1 and c_l = c nonzero.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); l];
    coeffs[l - 2] = Complex64::new(-1.0, 0.0);
    coeffs[l - 1] = c;
    let mut m = DMatrix::<Complex64>::zeros(l, l);
    for (col, a) in coeffs.iter().enumerate() {
        m[(0, col)] = -a;
    }
    for r in 1..l {
        m[(r, r - 1)] = Complex64::new(1.0, 0.0);
    }
    let (_, t) = nalgebra::Schur::new(m).unpack();

    let f = |y: Complex64| y.powu(l as u32) - y + c;
    let df = |y: Complex64| lf * y.powu(l as u32 - 1) - 1.0;
    let mut roots: Vec<Complex64> = t
        .diagonal()
        .iter()
        .map(|&y0| {
            let mut y = y0;
            for _ in 0..50 {
                let d = df(y);
                if d.norm() < 1e-14 {
                    break;
                }
                let step = f(y) / d;
                y -= step;
                if step.norm() < 1e-16 * (1.0 + y.norm()) {
                    break;
                }
            }
            y * s
        })
        .collect();
    roots.sort_by(|a, b| {
        let key = |z: &Complex64| {
            let arg = if z.norm() < ROOT_TOL { 0.0 } else { z.arg().rem_euclid(2.0 * PI) };
            (arg, z.norm())
        };
        key(a).partial_cmp(&key(b)).unwrap()
    });

    // h_q / l^l at the critical points x = l z^i of h_q.
    let near_double_root = (0..l - 1).any(|i| {
        let x = Complex64::from_polar(lf, 2.0 * PI * i as f64 / (lf - 1.0));
        ((x / lf).powu(l as u32) - x + q).norm() <= ROOT_TOL
    });
    Ok(HRoots { roots, near_double_root })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyData {
    pub around_100: i64,
    pub around_010: i64,
    pub branch_ramification: i64,
    /// `a_0 = 1 - a_1` modulo `l - 1`.
    pub congruence_holds: bool,
}

pub fn monodromy_data(w: &Weights) -> Result<MonodromyData, AsideError> {
    let strip = Strip::new(w)?;
    let (a0, a1, m) = (strip.a0(), strip.a1(), strip.l() - 1);
    Ok(MonodromyData {
        around_100: a0,
        around_010: -a1,
        branch_ramification: m,
        congruence_holds: (a0 - (1 - a1)).rem_euclid(m) == 0,
    })
}
