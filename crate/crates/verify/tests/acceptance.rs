//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use aside::{critical_data, h_poly_roots, intersections, maslov_degree, Kind};
use bisect::{coherence_weight, reparameterized_weight, track_splitting, BisectConfig};
use bside::{dual_ext, generation_certificate, verify_prop6_via_resolution};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use verify::{hms_certificate_with, sweep, Mutation, MutationKind, Options, Side, SweepSummary};
use weights_core::{graded_dim, sheaf_cohomology_dim, LatticePolytope, Weights};

const SWEEP_L: i64 = 25;
const SWEEP_BUDGET: Duration = Duration::from_secs(10);
const CRITICAL_TOL: f64 = 1e-9;
const CRITICAL_BUDGET: Duration = Duration::from_secs(1);
const PROP6_L: i64 = 15;
const GENERATION_L: i64 = 15;
const HILBERT_K: i64 = 50;
const SERRE_RANGE: (i64, i64) = (-40, 0);
const GRADED_SAMPLES: usize = 20;
const SPLIT_TOL: f64 = 1e-4;
const SPLIT_BUDGET: Duration = Duration::from_secs(2);
const MUTATIONS: usize = 10;
const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Nondecreasing weight vectors with `len` entries and total at most `l_max`.
fn weight_vectors(len: usize, l_max: i64) -> Vec<Weights> {
    fn go(len: usize, min: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weights>) {
        if cur.len() == len {
            out.push(Weights::new(cur.clone()).unwrap());
            return;
        }
        for a in min..=left {
            cur.push(a);
            go(len, a, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, l_max, &mut Vec::new(), &mut out);
    out
}

fn dimension_match(s: &SweepSummary, elapsed: Duration) -> Outcome {
    let pairs: usize = s.rows.iter().map(|r| r.pairs).sum();
    for c in &s.certificates {
        ensure(c.checks.dimensions && c.checks.labels, || format!("{} fails: {:?}", c.weights, c.first_counterexample))?;
        for p in &c.dimensions {
            ensure(p.aside == p.bside, || format!("{} pair ({}, {})", c.weights, p.j, p.k))?;
        }
    }
    ensure(elapsed < SWEEP_BUDGET, || format!("sweep took {elapsed:?}"))?;
    Ok(format!("{} weight pairs, {pairs} (j,k) pairs, {elapsed:.2?}", s.rows.len()))
}

fn composition_match(s: &SweepSummary) -> Outcome {
    let mut constants = 0;
    for c in &s.certificates {
        ensure(c.checks.composition && c.aside_digest == c.bside_digest, || format!("{} digests differ", c.weights))?;
        constants += c.aside_digest.len();
    }
    Ok(format!("{constants} nonzero structure constants agree"))
}

fn higher_products(s: &SweepSummary) -> Outcome {
    let mut discs = 0;
    for c in &s.certificates {
        let hp = &c.higher_products;
        ensure(hp.pass && hp.max_word_len == 8, || format!("{} higher products", c.weights))?;
        ensure(hp.accepted_by_corners.keys().all(|&k| k == 3), || format!("{}: {:?}", c.weights, hp.accepted_by_corners))?;
        discs += hp.accepted_by_corners.values().sum::<u64>();
    }
    Ok(format!("{discs} accepted discs, all with 3 corners"))
}

fn maslov() -> Outcome {
    let mut points = 0;
    for w in verify::sweep_weights(SWEEP_L) {
        let top = w.l() - 2;
        for j in 0..=top {
            for k in j + 1..=top {
                for p in intersections(&w, j, k).map_err(|e| e.to_string())? {
                    let mu = maslov_degree(&w, &p).map_err(|e| e.to_string())?;
                    let expected = if p.kind == Kind::Arc { 0 } else { 1 };
                    ensure(mu == expected && p.degree == mu, || format!("{w} {p:?}: {mu}"))?;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("{points} points, exact"))
}

fn critical_values() -> Outcome {
    let start = Instant::now();
    let w = Weights::new(vec![2, 3]).unwrap();
    let mut values: Vec<Complex64> = critical_data(&w).iter().map(|d| d.value()).collect();
    let expected = [Complex64::new(4.0, 0.0), Complex64::new(0.0, 4.0), Complex64::new(-4.0, 0.0), Complex64::new(0.0, -4.0)];
    ensure(values.len() == 4, || format!("{} critical values", values.len()))?;
    for e in expected {
        let i = values.iter().position(|v| (v - e).norm() <= CRITICAL_TOL).ok_or(format!("{e} missing"))?;
        values.remove(i);
        let r = h_poly_roots(&w, e).map_err(|e| e.to_string())?;
        ensure(r.near_double_root, || format!("no double root of h_q at q = {e}"))?;
    }
    for turn in [1.0 / 8.0, 3.0 / 8.0, 0.3, 0.9] {
        for modulus in [4.0, 3.9, 1.0] {
            let q = Complex64::from_polar(modulus, 2.0 * PI * turn);
            let r = h_poly_roots(&w, q).map_err(|e| e.to_string())?;
            ensure(!r.near_double_root, || format!("spurious double root at q = {q}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CRITICAL_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{{4, 4i, -4, -4i}} within {CRITICAL_TOL:e}, h_q fires only there, {elapsed:.2?}"))
}

fn prop6() -> Outcome {
    let mut checked = 0;
    for len in 1..=3 {
        for w in weight_vectors(len, PROP6_L) {
            for k in 0..w.object_count() {
                for i in 0..w.object_count() {
                    let mut a = dual_ext(&w, k, i).map_err(|e| e.to_string())?.basis;
                    let mut b = verify_prop6_via_resolution(&w, k, i).map_err(|e| e.to_string())?.basis;
                    a.sort();
                    b.sort();
                    ensure(a == b, || format!("{w} ({k}, {i})"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (k, i) pairs"))
}

fn generation() -> Outcome {
    let mut count = 0;
    for len in 1..=4 {
        for w in weight_vectors(len, GENERATION_L) {
            let r = generation_certificate(&w);
            ensure(r.pass, || format!("{w}: {:?}", r.failures))?;
            count += 1;
        }
    }
    Ok(format!("{count} weight vectors"))
}

/// Coefficients of `prod 1 / (1 - t^a_i)` up to `t^k`.
fn hilbert_series(w: &Weights, k: i64) -> Vec<u64> {
    let mut c = vec![0u64; k as usize + 1];
    c[0] = 1;
    for &a in w.a() {
        for d in a as usize..=k as usize {
            c[d] += c[d - a as usize];
        }
    }
    c
}

fn graded_ring() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..GRADED_SAMPLES {
        let len = rng.random_range(1..=4);
        let w = Weights::new((0..len).map(|_| rng.random_range(1..=6)).collect()).unwrap();
        let series = hilbert_series(&w, HILBERT_K + w.l() + SERRE_RANGE.0.abs());
        for k in 0..=HILBERT_K {
            ensure(graded_dim(&w, k) == series[k as usize], || format!("{w} degree {k}"))?;
        }
        let n = w.n() as i64;
        for k in SERRE_RANGE.0..=SERRE_RANGE.1 {
            let top = sheaf_cohomology_dim(&w, n, k).map_err(|e| e.to_string())?;
            let dual = if -k - w.l() >= 0 { series[(-k - w.l()) as usize] } else { 0 };
            let h0 = sheaf_cohomology_dim(&w, 0, k).map_err(|e| e.to_string())?;
            let expected_h0 = if k >= 0 { series[k as usize] } else { 0 };
            // On a weighted point H^0 and H^n are the same group.
            let expected_top = if n == 0 { dual + expected_h0 } else { dual };
            ensure(top == expected_top, || format!("{w} H^{n}(O({k})) = {top}, expected {expected_top}"))?;
            ensure(h0 == expected_h0 || n == 0, || format!("{w} H^0(O({k}))"))?;
        }
    }
    Ok(format!("{GRADED_SAMPLES} seeded weight vectors, K = {HILBERT_K}, k in [{}, {}]", SERRE_RANGE.0, SERRE_RANGE.1))
}

fn splitting() -> Outcome {
    let start = Instant::now();
    let cfg = BisectConfig::parse(
        r#"{"A": [-1, 0, 1, 2], "A0": [-1, 0, 1], "A1": [1, 2], "seed": 42, "t_schedule": [0.1, 0.01, 0.001]}"#,
    )
    .map_err(|e| e.to_string())?;
    let b = cfg.bisection().map_err(|e| e.to_string())?;
    let eta = coherence_weight(&b).map_err(|e| e.to_string())?.line_values();
    let tau = reparameterized_weight(&b).map_err(|e| e.to_string())?.line_values();
    ensure(eta == [0, 0, 0, -1], || format!("eta = {eta:?}"))?;
    ensure(tau == [-2, -1, 0, 0], || format!("tau = {tau:?}"))?;
    let coeffs = cfg.line_coefficients().map_err(|e| e.to_string())?;
    let r = track_splitting(&b, &coeffs, &cfg.t_schedule, SPLIT_TOL).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("{:?}", r.failures))?;
    ensure(r.counts.iter().all(|&c| c == 3) && r.m == 2 && r.total == 3, || format!("{:?} m = {}", r.counts, r.m))?;
    let worst = r.clause_i.iter().chain(&r.clause_ii).map(|t| t.extrapolated_error).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    ensure(elapsed < SPLIT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("3 = 2 + 1, worst error {worst:.1e} <= {SPLIT_TOL:e}, {elapsed:.2?}"))
}

fn volume() -> Outcome {
    let mut count = 0;
    for w in verify::sweep_weights(SWEEP_L) {
        let (a0, a1) = (w.a()[0], w.a()[1]);
        for (x, y) in [(a0, a1), (a1, a0)] {
            let q = LatticePolytope::polygon(&[[1, 0], [0, 1], [x, y]]).map_err(|e| e.to_string())?;
            ensure(q.normalized_volume() as i64 == w.l() - 1, || format!("{w}: {}", q.normalized_volume()))?;
        }
        count += 1;
    }
    Ok(format!("{count} weight pairs"))
}

fn mutations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let w = Weights::new(vec![2, 5]).unwrap();
    for _ in 0..MUTATIONS {
        let m = Mutation {
            side: if rng.random_bool(0.5) { Side::A } else { Side::B },
            index: rng.random_range(0..1000),
            kind: if rng.random_bool(0.5) { MutationKind::Negate } else { MutationKind::Drop },
        };
        let c = hms_certificate_with(&w, &Options { mutation: Some(m), ..Options::default() }).map_err(|e| e.to_string())?;
        ensure(!c.pass, || format!("{m:?} went unnoticed"))?;
    }
    Ok(format!("{MUTATIONS} seeded mutations all caught"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let summary = sweep(SWEEP_L);
    let elapsed = start.elapsed();
    let (c1, c2, c3): (Outcome, Outcome, Outcome) = match &summary {
        Ok(s) => (dimension_match(s, elapsed), composition_match(s), higher_products(s)),
        Err(e) => (Err(e.to_string()), Err(e.to_string()), Err(e.to_string())),
    };
    let results = [
        ("mirror dimension match", c1),
        ("mirror composition match", c2),
        ("higher products vanish", c3),
        ("Maslov degrees", maslov()),
        ("critical values of W_(2,3)", critical_values()),
        ("dual Ext via resolutions", prop6()),
        ("generation certificate", generation()),
        ("graded ring identities", graded_ring()),
        ("bisection splitting", splitting()),
        ("volume consistency", volume()),
        ("mutation sensitivity", mutations()),
    ];
    let mut ok = true;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                ok = false;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
