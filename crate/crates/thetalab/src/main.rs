//! Command-line surface for the thetalab library. Every subcommand maps
//! 1:1 to a library operation; numeric output carries the certified
//! error bound next to every value.
//!
//! Exit codes: 0 success, 2 precondition or usage error, 3 resource
//! exhaustion.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;
use serde::Serialize;
use serde_json::json;
use std::process::ExitCode;
use thetalab::bigcomplex::float_to_string;
use thetalab::local::ProbeKind;
use thetalab::series::{SeriesKind, SeriesSpec};
use thetalab::{BigComplex, Error, ReducedRational};

const SCHEMA: &str = "thetalab/1";
const DEFAULT_PRECISION: u32 = 192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "thetalab",
    about = "Quadratic Gauss sums, theta functions, and local analysis of Riemann's non-differentiable function",
    version
)]
struct Cli {
    /// Working precision in bits (>= 64). THETALAB_PRECISION overrides
    /// the default.
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,

    /// Seed for randomized sweeps (selftest).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Worker thread count. Orchestration is single-threaded and
    /// deterministic; this knob is accepted for interface stability and
    /// does not change any output.
    #[arg(long, global = true, default_value_t = 1)]
    thread_count: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-4)]
    h_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    h_max: f64,
    #[arg(long, default_value_t = 9)]
    steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GaussMode {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TrigKind {
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaPlane {
    /// z in the upper half-plane: Θ(z).
    Upper,
    /// s in the right half-plane: θ(s) = Θ(is).
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HolderSeries {
    Riemann,
    Weierstrass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeKindArg {
    Sine,
    CosineShifted,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quadratic Gauss sum S(b, a) = Σ_j e^{2πij²a/b}.
    GaussSum {
        #[arg(long)]
        b: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, value_enum, default_value_t = GaussMode::Both)]
        mode: GaussMode,
    },
    /// Smith's G(x) = C(x) + iS(x) at x = r/s.
    SmithG {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// Reciprocity ratio S(p,q) / (e^{iπ/4} sqrt(p/2q) S(4q,-p)).
    Reciprocity {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Landsberg–Schaar residual at (p, q).
    LandsbergSchaar {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Scaling ratio S(ka, kb) / S(a, b).
    Scaling {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        k: i64,
    },
    /// Theta function on the upper or right half-plane.
    Theta {
        #[arg(long)]
        re: f64,
        #[arg(long)]
        im: f64,
        #[arg(long, value_enum, default_value_t = ThetaPlane::Upper)]
        plane: ThetaPlane,
        /// Also report the transformation residual |Θ(z) − e^{iπ/4}z^{−1/2}Θ(−1/z)|.
        #[arg(long)]
        residual: bool,
    },
    /// F(z) = Σ e^{iπn²z}/(iπn²), Im z >= 0.
    FEval {
        #[arg(long)]
        re: f64,
        #[arg(long)]
        im: f64,
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Riemann-type series Σ sin(n²x)/n^α (or cos).
    Riemann {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = TrigKind::Sin)]
        kind: TrigKind,
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Weierstrass-type series Σ aⁿ cos(bⁿπx) (or sin).
    Weierstrass {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = TrigKind::Cos)]
        kind: TrigKind,
    },
    /// Classical non-differentiability criteria at (a, b).
    Criteria {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Differentiability classification of g at a rational (as "q/p").
    Classify {
        #[arg(long)]
        xi: String,
    },
    /// Fit ΔF ≈ κ√𝔷 − 𝔷/2 on a grid and compare with the predicted κ.
    Expansion {
        #[arg(long)]
        xi: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Symmetric difference-quotient derivative estimate of g at ξ.
    Derivative {
        #[arg(long)]
        xi: String,
    },
    /// Hölder exponent estimate by log-log regression of increments.
    Holder {
        #[arg(long, value_enum)]
        series: HolderSeries,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 4.0)]
        b: f64,
        #[arg(long, value_enum, default_value_t = TrigKind::Sin)]
        kind: TrigKind,
        #[arg(long)]
        x: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Difference-quotient growth table along h = b^{−k} (HT3).
    Ht3Probe {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, value_enum, default_value_t = ProbeKindArg::Sine)]
        kind: ProbeKindArg,
        #[arg(long, default_value_t = 20)]
        k_max: u32,
    },
    /// Davenport–Chowla identity diagnostic at x.
    Dc {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1_000_000)]
        lhs_terms: u64,
        #[arg(long, default_value_t = 10_000_000)]
        rhs_terms: u64,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Debug, Serialize)]
struct ComplexOut {
    re: String,
    im: String,
    re_f64: f64,
    im_f64: f64,
}

impl ComplexOut {
    fn from(z: &BigComplex) -> Self {
        let digits = (z.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        ComplexOut {
            re: float_to_string(&z.re, digits),
            im: float_to_string(&z.im, digits),
            re_f64: z.re.to_f64(),
            im_f64: z.im.to_f64(),
        }
    }
}

fn parse_xi(s: &str) -> Result<ReducedRational, Error> {
    s.parse::<ReducedRational>()
}

/// CSV with '.' decimal separator and 17 significant digits.
fn csv_num(v: f64) -> String {
    format!("{v:.17e}")
}

struct Emitter {
    format: OutputFormat,
    precision: u32,
}

impl Emitter {
    /// Emit one report: JSON wraps it in the versioned envelope, plain
    /// prints the summary lines, CSV prints header + rows (or key,value
    /// pairs when the report has no natural grid).
    fn emit<T: Serialize>(
        &self,
        command: &str,
        report: &T,
        plain_lines: Vec<String>,
        csv: Option<(Vec<&str>, Vec<Vec<String>>)>,
    ) {
        match self.format {
            OutputFormat::Json => {
                let doc = json!({
                    "schema": SCHEMA,
                    "command": command,
                    "precision_bits": self.precision,
                    "result": report,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
            OutputFormat::Plain => {
                for line in plain_lines {
                    println!("{line}");
                }
            }
            OutputFormat::Csv => match csv {
                Some((header, rows)) => {
                    println!("{}", header.join(","));
                    for row in rows {
                        println!("{}", row.join(","));
                    }
                }
                None => {
                    let value = serde_json::to_value(report).unwrap();
                    println!("key,value");
                    flatten_json("", &value, &mut |k, v| println!("{k},{v}"));
                }
            },
        }
    }
}

fn flatten_json(prefix: &str, v: &serde_json::Value, out: &mut impl FnMut(&str, String)) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_json(&key, val, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten_json(&format!("{prefix}[{i}]"), val, out);
            }
        }
        other => out(prefix, other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = cli
        .precision
        .or_else(|| {
            std::env::var("THETALAB_PRECISION")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_PRECISION);
    if precision < 64 {
        eprintln!("error: precision must be at least 64 bits");
        return ExitCode::from(2);
    }
    let emit = Emitter {
        format: cli.format,
        precision,
    };
    match run(&cli.command, precision, cli.seed, &emit) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Resource(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn trig_to_riemann(kind: TrigKind) -> SeriesKind {
    match kind {
        TrigKind::Sin => SeriesKind::RiemannSin,
        TrigKind::Cos => SeriesKind::RiemannCos,
    }
}

fn trig_to_weierstrass(kind: TrigKind) -> SeriesKind {
    match kind {
        TrigKind::Sin => SeriesKind::WeierstrassSin,
        TrigKind::Cos => SeriesKind::WeierstrassCos,
    }
}

fn run(cmd: &Command, prec: u32, seed: u64, emit: &Emitter) -> Result<(), Error> {
    match cmd {
        Command::GaussSum { b, a, mode } => {
            #[derive(Serialize)]
            struct Report {
                b: i64,
                a: i64,
                brute: Option<ComplexOut>,
                closed: Option<thetalab::ExactGaussSum>,
                closed_rendered: Option<String>,
                agreement: Option<bool>,
                abs_difference: Option<f64>,
            }
            let brute = match mode {
                GaussMode::Closed => None,
                _ => Some(thetalab::gauss::gauss_sum_bruteforce(*b, *a, prec)?),
            };
            let closed = match mode {
                GaussMode::Brute => None,
                _ => Some(thetalab::gauss::gauss_sum_closed(*b, *a)?),
            };
            let (agreement, abs_difference) = match (&brute, &closed) {
                (Some(bf), Some(cf)) => {
                    let d = bf.sub(&cf.to_bigcomplex(prec)).abs().to_f64();
                    (Some(d <= 2f64.powi(-48)), Some(d))
                }
                _ => (None, None),
            };
            let report = Report {
                b: *b,
                a: *a,
                brute: brute.as_ref().map(ComplexOut::from),
                closed,
                closed_rendered: closed.map(|c| c.to_string()),
                agreement,
                abs_difference,
            };
            let mut lines = vec![format!("S({b}, {a})")];
            if let Some(bf) = &report.brute {
                lines.push(format!("brute  = {} + {}i", bf.re_f64, bf.im_f64));
            }
            if let Some(cr) = &report.closed_rendered {
                lines.push(format!("closed = {cr}"));
            }
            if let Some(ag) = report.agreement {
                lines.push(format!(
                    "agreement = {ag} (|difference| = {:e})",
                    report.abs_difference.unwrap()
                ));
            }
            emit.emit("gauss-sum", &report, lines, None);
            Ok(())
        }
        Command::SmithG { r, s } => {
            #[derive(Serialize)]
            struct Report {
                r: i64,
                s: i64,
                value: ComplexOut,
            }
            let g = thetalab::gauss::smith_g(*r, *s, prec)?;
            let report = Report {
                r: *r,
                s: *s,
                value: ComplexOut::from(&g),
            };
            let lines = vec![format!(
                "G({r}/{s}) = {} + {}i",
                report.value.re_f64, report.value.im_f64
            )];
            emit.emit("smith-g", &report, lines, None);
            Ok(())
        }
        Command::Reciprocity { p, q } => {
            #[derive(Serialize)]
            struct Report {
                p: i64,
                q: i64,
                ratio: ComplexOut,
            }
            let ratio = thetalab::gauss::reciprocity_ratio(*p, *q, prec)?;
            let report = Report {
                p: *p,
                q: *q,
                ratio: ComplexOut::from(&ratio),
            };
            let lines = vec![format!(
                "ratio(p={p}, q={q}) = {} + {}i",
                report.ratio.re_f64, report.ratio.im_f64
            )];
            emit.emit("reciprocity", &report, lines, None);
            Ok(())
        }
        Command::LandsbergSchaar { p, q } => {
            #[derive(Serialize)]
            struct Report {
                p: i64,
                q: i64,
                residual: f64,
            }
            let r = thetalab::gauss::landsberg_schaar_residual(*p, *q, prec)?;
            let report = Report {
                p: *p,
                q: *q,
                residual: r.to_f64(),
            };
            let lines = vec![format!("residual(p={p}, q={q}) = {:e}", report.residual)];
            emit.emit("landsberg-schaar", &report, lines, None);
            Ok(())
        }
        Command::Scaling { a, b, k } => {
            #[derive(Serialize)]
            struct Report {
                a: i64,
                b: i64,
                k: i64,
                ratio: ComplexOut,
            }
            let ratio = thetalab::gauss::scaling_ratio(*a, *b, *k, prec)?;
            let report = Report {
                a: *a,
                b: *b,
                k: *k,
                ratio: ComplexOut::from(&ratio),
            };
            let lines = vec![format!(
                "S({k}*{a}, {k}*{b}) / S({a}, {b}) = {} + {}i",
                report.ratio.re_f64, report.ratio.im_f64
            )];
            emit.emit("scaling", &report, lines, None);
            Ok(())
        }
        Command::Theta {
            re,
            im,
            plane,
            residual,
        } => {
            #[derive(Serialize)]
            struct Report {
                re: f64,
                im: f64,
                plane: String,
                value: ComplexOut,
                error_bound: f64,
                transform_residual: Option<f64>,
            }
            let z = BigComplex::from_f64(*re, *im, prec);
            let v = match plane {
                ThetaPlane::Upper => thetalab::series::theta_upper(&z, prec)?,
                ThetaPlane::Right => thetalab::series::theta_right(&z, prec)?,
            };
            let transform_residual = if *residual && *plane == ThetaPlane::Upper {
                Some(thetalab::series::theta_transform_residual(&z, prec)?.to_f64())
            } else {
                None
            };
            let report = Report {
                re: *re,
                im: *im,
                plane: format!("{plane:?}").to_lowercase(),
                value: ComplexOut::from(&v.value),
                error_bound: v.error_bound,
                transform_residual,
            };
            let mut lines = vec![format!(
                "theta = {} + {}i  (error bound {:e})",
                report.value.re_f64, report.value.im_f64, report.error_bound
            )];
            if let Some(r) = report.transform_residual {
                lines.push(format!("transformation residual = {r:e}"));
            }
            emit.emit("theta", &report, lines, None);
            Ok(())
        }
        Command::FEval { re, im, max_terms } => {
            #[derive(Serialize)]
            struct Report {
                re: f64,
                im: f64,
                value: ComplexOut,
                error_bound: f64,
            }
            let z = BigComplex::from_f64(*re, *im, prec);
            let v = match max_terms {
                Some(n) => thetalab::series::f_eval_capped(&z, prec, *n)?,
                None => thetalab::series::f_eval(&z, prec)?,
            };
            let report = Report {
                re: *re,
                im: *im,
                value: ComplexOut::from(&v.value),
                error_bound: v.error_bound,
            };
            let lines = vec![format!(
                "F(z) = {} + {}i  (error bound {:e})",
                report.value.re_f64, report.value.im_f64, report.error_bound
            )];
            emit.emit("f-eval", &report, lines, None);
            Ok(())
        }
        Command::Riemann {
            x,
            alpha,
            kind,
            max_terms,
        } => {
            #[derive(Serialize)]
            struct Report {
                x: f64,
                alpha: f64,
                kind: SeriesKind,
                value: String,
                value_f64: f64,
                error_bound: f64,
            }
            let spec = SeriesSpec::riemann(trig_to_riemann(*kind), *alpha)?;
            let xf = Float::with_val(prec, *x);
            let v = match max_terms {
                Some(n) => thetalab::series::riemann_series_capped(&spec, &xf, prec, *n)?,
                None => thetalab::series::riemann_series(&spec, &xf, prec)?,
            };
            let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
            let report = Report {
                x: *x,
                alpha: *alpha,
                kind: spec.kind,
                value: float_to_string(&v.value, digits),
                value_f64: v.value.to_f64(),
                error_bound: v.error_bound,
            };
            let lines = vec![format!(
                "f(x) = {}  (error bound {:e})",
                report.value_f64, report.error_bound
            )];
            emit.emit("riemann", &report, lines, None);
            Ok(())
        }
        Command::Weierstrass { a, b, x, kind } => {
            #[derive(Serialize)]
            struct Report {
                a: f64,
                b: f64,
                x: f64,
                kind: SeriesKind,
                value: String,
                value_f64: f64,
                error_bound: f64,
                hardy_exponent: f64,
            }
            let spec = SeriesSpec::weierstrass(trig_to_weierstrass(*kind), *a, *b)?;
            let xf = Float::with_val(prec, *x);
            let v = thetalab::series::weierstrass_eval(&spec, &xf, prec)?;
            let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
            let report = Report {
                a: *a,
                b: *b,
                x: *x,
                kind: spec.kind,
                value: float_to_string(&v.value, digits),
                value_f64: v.value.to_f64(),
                error_bound: v.error_bound,
                hardy_exponent: spec.xi().unwrap(),
            };
            let lines = vec![
                format!(
                    "W(x) = {}  (error bound {:e})",
                    report.value_f64, report.error_bound
                ),
                format!("hardy exponent xi = {}", report.hardy_exponent),
            ];
            emit.emit("weierstrass", &report, lines, None);
            Ok(())
        }
        Command::Criteria { a, b } => {
            let report = thetalab::series::nondiff_criteria(*a, *b)?;
            let fmt_opt = |o: Option<bool>| match o {
                Some(v) => v.to_string(),
                None => "not applicable".to_string(),
            };
            let lines = vec![
                format!("weierstrass   = {}", report.weierstrass),
                format!("bromwich      = {}", report.bromwich),
                format!("dini_pair     = {}", report.dini_pair),
                format!("lerch_pair    = {}", report.lerch_pair),
                format!("dini_general  = {}", fmt_opt(report.dini_general)),
                format!("dini_general2 = {}", fmt_opt(report.dini_general2)),
                format!("hardy         = {}", report.hardy),
            ];
            emit.emit("criteria", &report, lines, None);
            Ok(())
        }
        Command::Classify { xi } => {
            let point = parse_xi(xi)?;
            let verdict = thetalab::local::classify_rational(point);
            let lines = vec![
                format!("point     = {}", verdict.point),
                format!("two_sided = {}", verdict.two_sided),
                format!("right     = {}", verdict.right),
                format!("left      = {}", verdict.left),
                format!("symmetric = {}", verdict.symmetric),
                if verdict.kappa.is_zero {
                    "kappa     = 0".to_string()
                } else {
                    format!(
                        "kappa     = {} * e^(i*{}π/4)",
                        verdict.kappa.magnitude, verdict.kappa.phase_eighths
                    )
                },
            ];
            emit.emit("classify", &verdict, lines, None);
            Ok(())
        }
        Command::Expansion { xi, grid } => {
            let point = parse_xi(xi)?;
            let report =
                thetalab::local::expansion_check(point, grid.h_min, grid.h_max, grid.steps, prec)?;
            let lines = vec![
                format!("point           = {}", report.point),
                format!(
                    "kappa_fitted    = {} + {}i",
                    report.kappa_fitted_re, report.kappa_fitted_im
                ),
                format!(
                    "kappa_predicted = {} + {}i",
                    report.kappa_predicted_re, report.kappa_predicted_im
                ),
                format!("kappa_error     = {:e}", report.kappa_error),
                format!("max_model_residual = {:e}", report.max_model_residual),
                format!("fitted_exponent = {}", report.fitted_exponent),
                format!("exact_match     = {}", report.exact_match),
            ];
            let csv_rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        csv_num(r.h),
                        csv_num(r.delta_f_re),
                        csv_num(r.delta_f_im),
                        csv_num(r.model_re),
                        csv_num(r.model_im),
                        csv_num(r.residual_normalized),
                    ]
                })
                .collect();
            emit.emit(
                "expansion",
                &report,
                lines,
                Some((
                    vec![
                        "h",
                        "delta_f_re",
                        "delta_f_im",
                        "model_re",
                        "model_im",
                        "residual_normalized",
                    ],
                    csv_rows,
                )),
            );
            Ok(())
        }
        Command::Derivative { xi } => {
            let point = parse_xi(xi)?;
            let report = thetalab::local::derivative_estimate(point, prec)?;
            let mut lines = vec![format!("point = {}", report.point)];
            for q in &report.quotients {
                lines.push(format!("Q({:e}) = {}", q.h, q.quotient));
            }
            lines.push(format!("estimate  = {}", report.estimate));
            lines.push(format!("diverging = {}", report.diverging));
            let csv_rows = report
                .quotients
                .iter()
                .map(|q| vec![csv_num(q.h), csv_num(q.quotient)])
                .collect();
            emit.emit(
                "derivative",
                &report,
                lines,
                Some((vec!["h", "quotient"], csv_rows)),
            );
            Ok(())
        }
        Command::Holder {
            series,
            alpha,
            a,
            b,
            kind,
            x,
            grid,
        } => {
            let spec = match series {
                HolderSeries::Riemann => SeriesSpec::riemann(trig_to_riemann(*kind), *alpha)?,
                HolderSeries::Weierstrass => {
                    SeriesSpec::weierstrass(trig_to_weierstrass(*kind), *a, *b)?
                }
            };
            let report = thetalab::local::holder_exponent(
                &spec, *x, grid.h_min, grid.h_max, grid.steps, prec,
            )?;
            let mut lines = vec![
                format!("estimated_exponent  = {}", report.estimated_exponent),
                format!("regression_residual = {:e}", report.regression_residual),
                format!("inconclusive        = {}", report.inconclusive),
            ];
            if let Some(xi) = spec.xi() {
                lines.push(format!("hardy exponent xi   = {xi}"));
            }
            let csv_rows = report
                .increments
                .iter()
                .map(|q| vec![csv_num(q.h), csv_num(q.quotient)])
                .collect();
            emit.emit(
                "holder",
                &report,
                lines,
                Some((vec!["h", "increment"], csv_rows)),
            );
            Ok(())
        }
        Command::Ht3Probe { a, b, kind, k_max } => {
            let kind = match kind {
                ProbeKindArg::Sine => ProbeKind::SineAtZero,
                ProbeKindArg::CosineShifted => ProbeKind::CosineAtHalf,
            };
            let report = thetalab::local::infinite_derivative_probe(*a, *b, kind, *k_max)?;
            let mut lines = vec![format!(
                "hypothesis (ab >= 1 and a(b+1) < 2) met: {}",
                report.hypothesis_met
            )];
            for row in &report.rows {
                lines.push(format!("k={:2}  h={:e}  quotient={}", row.k, row.h, row.quotient));
            }
            let csv_rows = report
                .rows
                .iter()
                .map(|r| vec![r.k.to_string(), csv_num(r.h), csv_num(r.quotient)])
                .collect();
            emit.emit(
                "ht3-probe",
                &report,
                lines,
                Some((vec!["k", "h", "quotient"], csv_rows)),
            );
            Ok(())
        }
        Command::Dc {
            x,
            lhs_terms,
            rhs_terms,
        } => {
            let table = thetalab::exact::liouville_sieve(*lhs_terms as usize)?;
            let xf = Float::with_val(192, *x);
            let report = thetalab::davenport::dc_report(&xf, &table, *lhs_terms, *rhs_terms)?;
            let mut lines = vec![format!(
                "rhs = {}  (certified to {:e})",
                report.rhs, report.rhs_error_bound
            )];
            for p in &report.partials {
                lines.push(format!(
                    "N={:10}  lhs={:+.12}  |lhs-rhs|={:e}",
                    p.n_terms, p.lhs_partial, p.residual_vs_rhs
                ));
            }
            let csv_rows = report
                .partials
                .iter()
                .map(|p| {
                    vec![
                        p.n_terms.to_string(),
                        csv_num(p.lhs_partial),
                        csv_num(p.residual_vs_rhs),
                    ]
                })
                .collect();
            emit.emit(
                "dc",
                &report,
                lines,
                Some((vec!["n_terms", "lhs_partial", "residual_vs_rhs"], csv_rows)),
            );
            Ok(())
        }
        Command::Selftest => {
            let report = selftest(prec, seed)?;
            let lines = report
                .checks
                .iter()
                .map(|c| format!("{} ... {}", c.name, if c.pass { "ok" } else { "FAIL" }))
                .collect();
            emit.emit("selftest", &report, lines, None);
            if report.checks.iter().all(|c| c.pass) {
                Ok(())
            } else {
                Err(Error::precondition("selftest failed"))
            }
        }
    }
}

#[derive(Serialize)]
struct SelftestCheck {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: u64,
    checks: Vec<SelftestCheck>,
}

/// A condensed invariant suite: closed form vs brute force on a random
/// sample, reciprocity constancy, theta transformation, classification
/// spot checks, and the saw-tooth normalization.
fn selftest(prec: u32, seed: u64) -> Result<SelftestReport, Error> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(SelftestCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // Closed form vs brute force on random reduced pairs.
    let mut worst = 0f64;
    for _ in 0..50 {
        let p = rng.gen_range(1..=300i64);
        let q = rng.gen_range(-60..=60i64);
        if q == 0 || thetalab::exact::gcd(p as i128, q as i128) != 1 {
            continue;
        }
        let brute = thetalab::gauss::gauss_sum_bruteforce(p, q, prec)?;
        let closed = thetalab::gauss::gauss_sum_closed(p, q)?.to_bigcomplex(prec);
        worst = worst.max(brute.sub(&closed).abs().to_f64());
    }
    push(
        "gauss closed form vs brute force",
        worst <= 2f64.powi(-48),
        format!("max |difference| = {worst:e}"),
    );

    // Reciprocity ratio constancy.
    let mut ratios = Vec::new();
    while ratios.len() < 20 {
        let p = rng.gen_range(1..=99i64);
        let q = rng.gen_range(1..=49i64);
        if thetalab::exact::gcd(p as i128, (2 * q) as i128) != 1 {
            continue;
        }
        match thetalab::gauss::reciprocity_ratio(p, q, prec) {
            Ok(r) => ratios.push((r.re.to_f64(), r.im.to_f64())),
            Err(Error::DegenerateRatio(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let dev = ratios
        .iter()
        .map(|(re, im)| ((re - 0.5).abs()).max(im.abs()))
        .fold(0.0, f64::max);
    push(
        "reciprocity ratio constant 1/2",
        dev <= 1e-12,
        format!("max deviation = {dev:e}"),
    );

    // Theta transformation on random z.
    let mut rworst = 0f64;
    for _ in 0..10 {
        let re = rng.gen_range(-5.0..5.0);
        let im = rng.gen_range(0.05..10.0);
        let z = BigComplex::from_f64(re, im, prec);
        rworst = rworst.max(thetalab::series::theta_transform_residual(&z, prec)?.to_f64());
    }
    push(
        "theta transformation residual",
        rworst <= 2f64.powi(-90),
        format!("max residual = {rworst:e}"),
    );

    // Classification spot checks.
    let v13 = thetalab::local::classify_rational(parse_xi("1/3")?);
    let v12 = thetalab::local::classify_rational(parse_xi("1/2")?);
    push(
        "classification parity table",
        v13.two_sided == thetalab::local::TwoSidedStatus::DerivativeZero
            && v12.right == thetalab::local::DiffStatus::Zero
            && v12.left == thetalab::local::DiffStatus::Infinite,
        "spot checks at 1/3, 1/2".to_string(),
    );

    // Saw-tooth normalization.
    push(
        "saw-tooth normalization",
        thetalab::series::sawtooth_psi(5.0) == 0.0
            && (thetalab::series::sawtooth_psi(0.25) + 0.25).abs() < 1e-15,
        "psi(5)=0, psi(1/4)=-1/4".to_string(),
    );

    Ok(SelftestReport { seed, checks })
}
