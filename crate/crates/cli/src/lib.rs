//! Command-line surface. Exit codes: 0 when every check passes, 1 when a
//! check fails (the report is still written), 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use weights_core::Weights;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "hms", version, about = "Exceptional collections and vanishing cycles for weighted projective lines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherent sheaf side.
    Bside {
        #[arg(value_enum)]
        action: BsideAction,
        #[command(flatten)]
        weights: WeightsArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Strip model of vanishing cycles.
    Aside {
        #[arg(value_enum)]
        action: AsideAction,
        #[command(flatten)]
        weights: WeightsArg,
        /// Also write a picture of the strip.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Evaluation point `re,im` for `hq`; defaults to every critical value.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Option<Complex64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check both sides and emit a certificate.
    Verify {
        #[arg(long, value_parser = parse_weights, conflicts_with = "sweep_l", required_unless_present = "sweep_l")]
        weights: Option<Weights>,
        /// Certify every pair `a0 <= a1` with `a0 + a1 <= N`.
        #[arg(long, value_name = "N")]
        sweep_l: Option<i64>,
        #[arg(long, default_value_t = verify::DEFAULT_WORD_LEN)]
        max_word_len: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bisections of marked polytopes.
    Bisect {
        #[arg(value_enum)]
        action: BisectAction,
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed in the configuration.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the tolerance in the configuration.
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BsideAction {
    Ext,
    Dual,
    Resolve,
    CertifyGeneration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsideAction {
    Homs,
    Points,
    Critical,
    Hq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BisectAction {
    Validate,
    Weights,
    Track,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct WeightsArg {
    /// Comma separated positive integers, e.g. `2,3`.
    #[arg(long, value_parser = parse_weights)]
    pub weights: Weights,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_weights(s: &str) -> Result<Weights, String> {
    Weights::parse(s)
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im, got {s}")),
    }
}

/// Complex numbers as `{re, im}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type Res<T> = Result<T, CliError>;

/// What a command produced: the text to emit and whether its checks passed.
struct Emit {
    text: String,
    pass: bool,
}

fn json<T: Serialize>(value: &T, pass: bool) -> Res<Emit> {
    Ok(Emit { text: serde_json::to_string_pretty(value)? + "\n", pass })
}

fn csv_rows<T: Serialize>(rows: &[T], pass: bool) -> Res<Emit> {
    let mut wr = csv::Writer::from_writer(Vec::new());
    for r in rows {
        wr.serialize(r)?;
    }
    let bytes = wr.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Emit { text: String::from_utf8(bytes)?, pass })
}

fn table<T: Serialize>(rows: &[T], format: Format, pass: bool) -> Res<Emit> {
    match format {
        Format::Json => json(&rows, pass),
        Format::Csv => csv_rows(rows, pass),
    }
}

fn json_only(format: Format, what: &str) -> Res<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Invalid(format!("{what} has no CSV form"))),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
        }
    };
    match execute(&cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(CliError::Invalid(msg) | CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
    }
}

fn execute(cmd: &Command) -> Res<bool> {
    let (emit, out) = match cmd {
        Command::Bside { action, weights, out } => (bside_cmd(*action, &weights.weights, out.format)?, out),
        Command::Aside { action, weights, svg, q, out } => {
            let emit = aside_cmd(*action, &weights.weights, *q, out.format)?;
            if let Some(path) = svg {
                let picture = aside::strip_svg(&weights.weights)?;
                fs::write(path, picture).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            (emit, out)
        }
        Command::Verify { weights, sweep_l, max_word_len, out } => {
            (verify_cmd(weights.as_ref(), *sweep_l, *max_word_len, out.format)?, out)
        }
        Command::Bisect { action, config, seed, tolerance, out } => {
            (bisect_cmd(*action, config, *seed, *tolerance, out.format)?, out)
        }
    };
    write_out(out.output.as_deref(), &emit.text)?;
    Ok(emit.pass)
}

#[derive(Serialize)]
struct DimRow {
    source: i64,
    target: i64,
    degree: i64,
    dim: usize,
}

fn dim_rows<L>(hom: &weights_core::BigradedHom<L>) -> Vec<DimRow> {
    hom.dims_by_degree()
        .into_iter()
        .map(|(degree, dim)| DimRow { source: hom.source, target: hom.target, degree, dim })
        .collect()
}

#[derive(Serialize)]
struct ResolutionRow {
    k: i64,
    position: usize,
    projective_index: i64,
    internal_shift: i64,
    witness: String,
}

#[derive(Serialize)]
struct Resolution {
    k: i64,
    positions: Vec<Vec<bside::ResolutionSummand>>,
    matches_dual_ext: bool,
}

fn bside_cmd(action: BsideAction, w: &Weights, format: Format) -> Res<Emit> {
    let objects = w.object_count();
    match action {
        BsideAction::Ext => {
            let mut rows = Vec::new();
            for j in 0..objects {
                for k in j..objects {
                    rows.extend(dim_rows(&bside::ext_pushforward(w, j, k)?));
                }
            }
            table(&rows, format, true)
        }
        BsideAction::Dual => {
            // Ext(S_k, S_i): source i, target k.
            let mut rows = Vec::new();
            for k in 0..objects {
                for i in 0..=k {
                    rows.extend(dim_rows(&bside::dual_ext(w, k, i)?));
                }
            }
            table(&rows, format, true)
        }
        BsideAction::Resolve => {
            let mut all = Vec::new();
            let mut pass = true;
            for k in 0..objects {
                let mut matches = true;
                for i in 0..objects {
                    let mut a = bside::dual_ext(w, k, i)?.basis;
                    let mut b = bside::verify_prop6_via_resolution(w, k, i)?.basis;
                    a.sort();
                    b.sort();
                    matches &= a == b;
                }
                pass &= matches;
                all.push(Resolution { k, positions: bside::resolution_summands(w, k)?, matches_dual_ext: matches });
            }
            match format {
                Format::Json => json(&all, pass),
                Format::Csv => {
                    let rows: Vec<ResolutionRow> = all
                        .iter()
                        .flat_map(|r| {
                            r.positions.iter().enumerate().flat_map(move |(position, ps)| {
                                ps.iter().map(move |s| ResolutionRow {
                                    k: r.k,
                                    position,
                                    projective_index: s.projective_index,
                                    internal_shift: s.internal_shift,
                                    witness: s.witness.to_string(),
                                })
                            })
                        })
                        .collect();
                    csv_rows(&rows, pass)
                }
            }
        }
        BsideAction::CertifyGeneration => {
            json_only(format, "certify-generation")?;
            let report = bside::generation_certificate(w);
            json(&report, report.pass)
        }
    }
}

#[derive(Serialize)]
struct PointRow {
    j: i64,
    k: i64,
    kind: String,
    x: String,
    y: String,
    shift: i64,
    degree: i64,
    maslov: i64,
    label: String,
}

fn rational(q: Rational64) -> String {
    q.to_string()
}

#[derive(Serialize)]
struct CriticalOut {
    weights: Weights,
    critical_values: Vec<CriticalRow>,
    monodromy: aside::MonodromyData,
}

#[derive(Serialize)]
struct CriticalRow {
    #[serde(flatten)]
    datum: aside::CriticalDatum,
    value: C,
}

#[derive(Serialize)]
struct HqOut {
    q: C,
    roots: Vec<C>,
    near_double_root: bool,
    /// Whether `q` is a critical value, by the closed form.
    critical: bool,
}

fn aside_cmd(action: AsideAction, w: &Weights, q: Option<Complex64>, format: Format) -> Res<Emit> {
    // Rejects anything but an ascending pair up front.
    aside::Strip::new(w)?;
    let top = w.l() - 2;
    match action {
        AsideAction::Homs => {
            let mut rows = Vec::new();
            for j in 0..=top {
                for k in j..=top {
                    rows.extend(dim_rows(&aside::hom_space(w, j, k)?));
                }
            }
            table(&rows, format, true)
        }
        AsideAction::Points => {
            let mut rows = Vec::new();
            let mut pass = true;
            for j in 0..=top {
                for k in j + 1..=top {
                    for p in aside::intersections(w, j, k)? {
                        let maslov = aside::maslov_degree(w, &p)?;
                        pass &= maslov == p.degree;
                        rows.push(PointRow {
                            j,
                            k,
                            kind: format!("{:?}", p.kind),
                            x: p.x.map(rational).unwrap_or_default(),
                            y: rational(p.y),
                            shift: p.shift,
                            degree: p.degree,
                            maslov,
                            label: p.label.to_string(),
                        });
                    }
                }
            }
            table(&rows, format, pass)
        }
        AsideAction::Critical => {
            json_only(format, "critical")?;
            let monodromy = aside::monodromy_data(w)?;
            let critical_values = aside::critical_data(w)
                .into_iter()
                .map(|d| CriticalRow { value: d.value().into(), datum: d })
                .collect();
            let pass = monodromy.congruence_holds;
            json(&CriticalOut { weights: w.clone(), critical_values, monodromy }, pass)
        }
        AsideAction::Hq => {
            json_only(format, "hq")?;
            let crit: Vec<Complex64> = aside::critical_data(w).iter().map(|d| d.value()).collect();
            let qs = match q {
                Some(q) => vec![q],
                None => crit.clone(),
            };
            let mut out = Vec::new();
            let mut pass = true;
            for q in qs {
                let r = aside::h_poly_roots(w, q)?;
                let critical = crit.iter().any(|c| (c - q).norm() <= aside::ROOT_TOL * (1.0 + c.norm()));
                pass &= r.near_double_root == critical;
                out.push(HqOut {
                    q: q.into(),
                    roots: r.roots.into_iter().map(C::from).collect(),
                    near_double_root: r.near_double_root,
                    critical,
                });
            }
            json(&out, pass)
        }
    }
}

#[derive(Serialize)]
struct SweepOut<'a> {
    l_max: i64,
    pass: bool,
    rows: &'a [verify::SweepRow],
}

fn verify_cmd(w: Option<&Weights>, sweep_l: Option<i64>, max_word_len: usize, format: Format) -> Res<Emit> {
    let opts = verify::Options { max_word_len, ..verify::Options::default() };
    match (w, sweep_l) {
        (Some(w), None) => {
            json_only(format, "a single certificate")?;
            let cert = verify::hms_certificate_with(w, &opts)?;
            Ok(Emit { text: cert.to_json() + "\n", pass: cert.pass })
        }
        (None, Some(n)) => {
            let s = verify::sweep_with(n, &opts)?;
            match format {
                Format::Json => json(&SweepOut { l_max: s.l_max, pass: s.pass, rows: &s.rows }, s.pass),
                Format::Csv => csv_rows(&s.rows, s.pass),
            }
        }
        _ => Err(CliError::Invalid("give exactly one of --weights and --sweep-l".into())),
    }
}

#[derive(Serialize)]
struct WeightsOut {
    wall_functional: bisect::Affine,
    eta: bisect::PLWeight,
    tau: bisect::PLWeight,
    linearity_domains_match: bool,
}

#[derive(Serialize)]
struct Coefficient {
    exponent: i64,
    #[serde(with = "weights_core::ratser")]
    value: Rational64,
}

#[derive(Serialize)]
struct TrackOut {
    seed: Option<u64>,
    coefficients: Vec<Coefficient>,
    report: bisect::SplitReport,
}

fn bisect_cmd(
    action: BisectAction,
    config: &Path,
    seed: Option<u64>,
    tolerance: Option<f64>,
    format: Format,
) -> Res<Emit> {
    json_only(format, "bisect output")?;
    let mut cfg = bisect::BisectConfig::load(config)?;
    if seed.is_some() {
        cfg.seed = seed;
        cfg.coefficients = None;
    }
    if let Some(t) = tolerance {
        cfg.tolerance = t;
    }
    let b = cfg.bisection()?;
    match action {
        BisectAction::Validate => {
            let report = bisect::validate_bisection(&b, &cfg.parent()?);
            json(&report, report.pass)
        }
        BisectAction::Weights => {
            let eta = bisect::coherence_weight(&b)?;
            let out = WeightsOut {
                wall_functional: bisect::wall_functional(&b)?,
                linearity_domains_match: bisect::linearity_domains_match(&b, &eta)?,
                tau: bisect::reparameterized_weight(&b)?,
                eta,
            };
            let pass = out.linearity_domains_match;
            json(&out, pass)
        }
        BisectAction::Track => {
            let coeffs = cfg.line_coefficients()?;
            let report = bisect::track_splitting(&b, &coeffs, &cfg.t_schedule, cfg.tolerance)?;
            let pass = report.pass;
            let out = TrackOut {
                seed: if cfg.coefficients.is_some() { None } else { cfg.seed },
                coefficients: coeffs.into_iter().map(|(exponent, value)| Coefficient { exponent, value }).collect(),
                report,
            };
            json(&out, pass)
        }
    }
}
