use num_rational::Rational64;
use num_traits::CheckedMul;
use serde::{Deserialize, Serialize};
use weights_core::Point;

use crate::marked::Bisection;
use crate::BisectError;

/// An integral affine function `c0 + c . x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub c0: i64,
    pub c: [i64; 2],
}

impl Affine {
    pub fn eval(&self, p: Point) -> i64 {
        self.c0 + self.c[0] * p[0] + self.c[1] * p[1]
    }
}

/// Integer values on the marked points, sorted by point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLWeight {
    pub values: Vec<(Point, i64)>,
}

impl PLWeight {
    pub fn new(mut values: Vec<(Point, i64)>) -> Self {
        values.sort_unstable();
        values.dedup();
        PLWeight { values }
    }

    pub fn get(&self, p: Point) -> Option<i64> {
        self.values.binary_search_by(|(q, _)| q.cmp(&p)).ok().map(|i| self.values[i].1)
    }

    /// Values in point order, for configurations on a line.
    pub fn line_values(&self) -> Vec<i64> {
        self.values.iter().map(|&(_, v)| v).collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The primitive integral affine function vanishing on the wall `Q_0 n Q_1`
/// and negative on the `Q_1` side.
pub fn wall_functional(b: &Bisection) -> Result<Affine, BisectError> {
    let (q0, q1) = (&b.cell0.q, &b.cell1.q);
    let wall: Vec<Point> = q0.vertices().iter().copied().filter(|&v| q1.contains(v)).collect();
    let raw = match (q0.dim(), wall.as_slice()) {
        (1, [p]) => Affine { c0: -p[0], c: [1, 0] },
        (2, [p, q]) => {
            let n = [q[1] - p[1], p[0] - q[0]];
            let g = gcd(n[0], n[1]);
            let n = [n[0] / g, n[1] / g];
            Affine { c0: -(n[0] * p[0] + n[1] * p[1]), c: n }
        }
        _ => return Err(BisectError::NoWall(wall.len())),
    };
    let off = q1.vertices().iter().map(|&v| raw.eval(v)).find(|&x| x != 0).ok_or(BisectError::NoWall(wall.len()))?;
    Ok(if off < 0 { raw } else { Affine { c0: -raw.c0, c: [-raw.c[0], -raw.c[1]] } })
}

/// `eta`: zero on `A_0` and the wall functional on `A_1`.
pub fn coherence_weight(b: &Bisection) -> Result<PLWeight, BisectError> {
    let lambda = wall_functional(b)?;
    let mut values: Vec<(Point, i64)> = b.cell0.a.iter().map(|&p| (p, 0)).collect();
    values.extend(b.cell1.a.iter().filter(|p| !b.cell0.a.contains(p)).map(|&p| (p, lambda.eval(p))));
    Ok(PLWeight::new(values))
}

/// `tau = eta - lambda`, which vanishes on `A_1`.
pub fn reparameterized_weight(b: &Bisection) -> Result<PLWeight, BisectError> {
    let lambda = wall_functional(b)?;
    let eta = coherence_weight(b)?;
    Ok(PLWeight::new(eta.values.iter().map(|&(p, v)| (p, v - lambda.eval(p))).collect()))
}

/// Whether the concave extension of `eta` is `min(0, lambda)`, whose domains
/// of linearity are exactly `Q_0` and `Q_1`. This holds when `A_0` sits on
/// the nonnegative side of the wall with `eta = 0`, `A_1` on the nonpositive
/// side with `eta = lambda`, and each cell's vertices carry those values.
pub fn linearity_domains_match(b: &Bisection, eta: &PLWeight) -> Result<bool, BisectError> {
    let lambda = wall_functional(b)?;
    let ok0 = b.cell0.a.iter().all(|&p| lambda.eval(p) >= 0 && eta.get(p) == Some(0));
    let ok1 = b.cell1.a.iter().all(|&p| lambda.eval(p) <= 0 && eta.get(p) == Some(lambda.eval(p)));
    let bends = b.cell1.q.vertices().iter().any(|&v| lambda.eval(v) < 0);
    Ok(ok0 && ok1 && bends)
}

/// A Laurent polynomial `sum c_a t^(-psi(a)) z^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedPotential {
    pub coeffs: Vec<(Point, Rational64)>,
    pub weight: PLWeight,
    pub t: Rational64,
}

fn checked_pow(t: Rational64, e: i64) -> Option<Rational64> {
    let base = if e < 0 { t.recip() } else { t };
    let (mut n, mut d) = (1i64, 1i64);
    for _ in 0..e.unsigned_abs() {
        n = n.checked_mul(*base.numer())?;
        d = d.checked_mul(*base.denom())?;
    }
    Some(Rational64::new(n, d))
}

/// Exact coefficients of the deformed potential at its parameter `t`.
pub fn deform_coeffs(p: &DeformedPotential) -> Result<Vec<(Point, Rational64)>, BisectError> {
    if p.t <= Rational64::from_integer(0) {
        return Err(BisectError::Schedule("t must be positive".into()));
    }
    p.coeffs
        .iter()
        .map(|&(a, c)| {
            let psi = p.weight.get(a).ok_or(BisectError::Unweighted(a))?;
            let scale = checked_pow(p.t, -psi).ok_or(BisectError::Overflow)?;
            c.checked_mul(&scale).map(|v| (a, v)).ok_or(BisectError::Overflow)
        })
        .collect()
}
