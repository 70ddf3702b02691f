use itertools::Itertools;
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use weights_core::Point;

use crate::critical::{critical_values_univariate, CriticalPoint};
use crate::marked::Bisection;
use crate::weights::{coherence_weight, reparameterized_weight, wall_functional, PLWeight};
use crate::BisectError;

/// Assignments are searched exhaustively up to this many candidates.
const EXACT_ASSIGNMENT_LIMIT: usize = 8;

fn to_c(r: Rational64) -> Complex64 {
    Complex64::new(*r.numer() as f64 / *r.denom() as f64, 0.0)
}

fn deformed(coeffs: &[(i64, Rational64)], psi: &PLWeight, t: f64) -> Result<Vec<(i64, Complex64)>, BisectError> {
    coeffs
        .iter()
        .map(|&(a, c)| {
            let e = psi.get([a, 0]).ok_or(BisectError::Unweighted([a, 0]))?;
            Ok((a, to_c(c) * t.powi(-e as i32)))
        })
        .collect()
}

fn restricted(coeffs: &[(i64, Rational64)], marks: &[Point]) -> Vec<(i64, Complex64)> {
    coeffs.iter().filter(|(a, _)| marks.contains(&[*a, 0])).map(|&(a, c)| (a, to_c(c))).collect()
}

/// Injective map from `targets` into `candidates` minimising the total
/// distance: exhaustive for small inputs, nearest first otherwise.
pub fn assign(targets: &[Complex64], candidates: &[Complex64]) -> Option<Vec<usize>> {
    if targets.len() > candidates.len() {
        return None;
    }
    let cost = |perm: &[usize]| perm.iter().zip(targets).map(|(&i, t)| (candidates[i] - t).norm()).sum::<f64>();
    if candidates.len() <= EXACT_ASSIGNMENT_LIMIT {
        return (0..candidates.len())
            .permutations(targets.len())
            .min_by(|a, b| cost(a).partial_cmp(&cost(b)).unwrap());
    }
    let mut used = vec![false; candidates.len()];
    let mut out = Vec::new();
    for t in targets {
        let best = (0..candidates.len()).filter(|&i| !used[i]).min_by(|&i, &j| {
            (candidates[i] - t).norm().partial_cmp(&(candidates[j] - t).norm()).unwrap()
        })?;
        used[best] = true;
        out.push(best);
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub target: Complex64,
    pub values: Vec<Complex64>,
    pub raw_error: f64,
    /// Error of the first order extrapolation to `t = 0` from the last two
    /// schedule points.
    pub extrapolated_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub t_schedule: Vec<f64>,
    pub tolerance: f64,
    pub total: usize,
    pub m: usize,
    pub counts: Vec<usize>,
    pub clause_i: Vec<Trajectory>,
    pub clause_ii: Vec<Trajectory>,
    pub clause_ii_nonzero: bool,
    pub conserved: bool,
    pub pass: bool,
    pub failures: Vec<String>,
}

fn check_schedule(ts: &[f64]) -> Result<(), BisectError> {
    if ts.len() < 2 {
        return Err(BisectError::Schedule("need at least two values of t".into()));
    }
    if ts.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(BisectError::Schedule("t must be positive".into()));
    }
    if ts.windows(2).any(|p| p[1] >= p[0]) {
        return Err(BisectError::Schedule("t must strictly decrease".into()));
    }
    Ok(())
}

fn trajectory(target: Complex64, values: Vec<Complex64>, ts: &[f64], tol: f64) -> Trajectory {
    let n = values.len();
    let (t1, t2) = (ts[n - 2], ts[n - 1]);
    let (v1, v2) = (values[n - 2], values[n - 1]);
    let limit = (v2 * t1 - v1 * t2) / (t1 - t2);
    let raw_error = (v2 - target).norm();
    let extrapolated_error = (limit - target).norm();
    Trajectory { target, values, raw_error, extrapolated_error, converged: extrapolated_error <= tol }
}

/// Follows the critical values of `W_t` and of its rescaling along the
/// schedule. The values near `W|A_0` must converge to those of `W|A_0`, the
/// rescaled ones to the nonzero values of `W|A_1`, and together the two
/// families must use every critical point exactly once.
pub fn track_splitting(
    b: &Bisection,
    coeffs: &[(i64, Rational64)],
    t_schedule: &[f64],
    tolerance: f64,
) -> Result<SplitReport, BisectError> {
    if b.cell0.dim() != 1 || b.cell1.dim() != 1 {
        return Err(BisectError::NotOneDimensional);
    }
    check_schedule(t_schedule)?;
    let lambda = wall_functional(b)?;
    let eta = coherence_weight(b)?;
    let tau = reparameterized_weight(b)?;

    let values = |ps: &[CriticalPoint]| ps.iter().map(|p| p.value).collect::<Vec<_>>();
    let points = |ps: &[CriticalPoint]| ps.iter().map(|p| p.z).collect::<Vec<_>>();
    let crit0 = critical_values_univariate(&restricted(coeffs, &b.cell0.a))?;
    let crit1 = critical_values_univariate(&restricted(coeffs, &b.cell1.a))?;
    let (targets0, targets1) = (values(&crit0), values(&crit1));
    let mut failures = Vec::new();

    let mut counts = Vec::new();
    let mut traj0 = vec![Vec::new(); targets0.len()];
    let mut traj1 = vec![Vec::new(); targets1.len()];
    let mut conserved = true;
    let mut total = 0;
    for &t in t_schedule {
        let w = critical_values_univariate(&deformed(coeffs, &eta, t)?)?;
        let wt = critical_values_univariate(&deformed(coeffs, &tau, t)?)?;
        counts.push(w.len());
        total = total.max(w.len());
        // Match critical points rather than values: those of W|A_0 stay put,
        // those of W|A_1 sit at z = t^lambda_1 z~ in the original coordinate.
        let scale = t.powi(lambda.c[0] as i32);
        let mut joint = points(&crit0);
        joint.extend(crit1.iter().map(|p| p.z * scale));
        let (Some(m), Some(m1)) = (assign(&joint, &points(&w)), assign(&points(&crit1), &points(&wt))) else {
            failures.push(format!("t = {t}: too few critical points to match"));
            conserved = false;
            continue;
        };
        let (m0, m01) = m.split_at(crit0.len());
        for (k, &i) in m0.iter().enumerate() {
            traj0[k].push(w[i].value);
        }
        for (k, &i) in m1.iter().enumerate() {
            traj1[k].push(wt[i].value);
        }
        // The rescaled family must land on the same points of W_t.
        let back: Vec<Complex64> = m1.iter().map(|&i| wt[i].z * scale).collect();
        let near = back.iter().zip(m01).all(|(&z, &i)| (z - w[i].z).norm() <= 1e-6 * (1.0 + z.norm()));
        if !near || m.len() != w.len() {
            conserved = false;
        }
    }
    if counts.iter().any(|&c| c != total) {
        failures.push(format!("critical value counts vary along the schedule: {counts:?}"));
    }
    if !conserved {
        failures.push("the two families do not split the critical points".into());
    }

    let complete = failures.is_empty();
    let clause_i: Vec<Trajectory> = if complete {
        targets0.iter().zip(traj0).map(|(&g, v)| trajectory(g, v, t_schedule, tolerance)).collect()
    } else {
        Vec::new()
    };
    let clause_ii: Vec<Trajectory> = if complete {
        targets1.iter().zip(traj1).map(|(&g, v)| trajectory(g, v, t_schedule, tolerance)).collect()
    } else {
        Vec::new()
    };
    for (name, tr) in [("W|A0", &clause_i), ("W|A1", &clause_ii)] {
        for x in tr.iter().filter(|x| !x.converged) {
            failures.push(format!("{name} value {} not reached: error {:.3e}", x.target, x.extrapolated_error));
        }
    }
    let clause_ii_nonzero = targets1.iter().all(|v| v.norm() > 10.0 * tolerance);
    if !clause_ii_nonzero {
        failures.push("W|A1 has a zero critical value".into());
    }
    Ok(SplitReport {
        t_schedule: t_schedule.to_vec(),
        tolerance,
        total,
        m: targets0.len(),
        counts,
        clause_i,
        clause_ii,
        clause_ii_nonzero,
        conserved,
        pass: failures.is_empty(),
        failures,
    })
}

fn separated(values: &[Complex64], gap: f64) -> bool {
    values.iter().tuple_combinations().all(|(a, b)| (a - b).norm() > gap)
}

/// Small rationals drawn from `seed`, redrawn until the critical values of
/// `W|A_0`, `W|A_1` and of `W_t` along the schedule are pairwise at least
/// `10 * tolerance` apart and those of `W|A_1` are nonzero.
pub fn seeded_coefficients(
    b: &Bisection,
    seed: u64,
    t_schedule: &[f64],
    tolerance: f64,
) -> Result<Vec<(i64, Rational64)>, BisectError> {
    let parent = b.parent()?;
    let eta = coherence_weight(b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = 10.0 * tolerance;
    for _ in 0..100 {
        let coeffs: Vec<(i64, Rational64)> = parent
            .a
            .iter()
            .map(|p| {
                let mut num = 0;
                while num == 0 {
                    num = rng.random_range(-9..=9);
                }
                (p[0], Rational64::new(num, rng.random_range(1..=5)))
            })
            .collect();
        let crit = |c: &[(i64, Complex64)]| -> Result<Vec<Complex64>, BisectError> {
            Ok(critical_values_univariate(c)?.iter().map(|p| p.value).collect())
        };
        let v0 = crit(&restricted(&coeffs, &b.cell0.a))?;
        let v1 = crit(&restricted(&coeffs, &b.cell1.a))?;
        let mut ok = separated(&v0, gap) && separated(&v1, gap) && v1.iter().all(|v| v.norm() > gap);
        for &t in t_schedule {
            ok = ok && separated(&crit(&deformed(&coeffs, &eta, t)?)?, gap);
        }
        if ok {
            return Ok(coeffs);
        }
    }
    Err(BisectError::NoGenericDraw(seed))
}
