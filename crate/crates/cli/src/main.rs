//! Command-line surface: radius constants, the k-term coefficient
//! table, sampled geometric verification, counterexamples, and image
//! curve plots (CSV/SVG).
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure,
//! 3 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use harmonic_radius::harmonic::{
    self, Coupling, DilatationSpec, GridSpec, HarmonicMap, VerificationReport,
};
use harmonic_radius::psi::PsiSpec;
use harmonic_radius::radius::{
    self, BernardiKind, CloseToConvexVariant, ConvexReading, RadiusResult, UniformKind,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "harmonic-radius", version, about = "Radius constants and verification for harmonic mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CouplingArg {
    Product,
    Derivative,
}

impl From<CouplingArg> for Coupling {
    fn from(c: CouplingArg) -> Self {
        match c {
            CouplingArg::Product => Coupling::Product,
            CouplingArg::Derivative => Coupling::Derivative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a radius constant for a theorem/psi pair.
    Radius {
        /// univalence | fully-starlike | fully-starlike-improved |
        /// sense-preserving | fully-convex | bernardi-fully-starlike |
        /// bernardi-fully-convex | bernardi-uniformly-starlike |
        /// uniformly-starlike | uniformly-convex | strongly-starlike |
        /// close-to-convex | close-to-convex-lemniscate |
        /// close-to-convex-monomial | close-to-convex-sg | convexity
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value = "janowski:1,-1")]
        psi: String,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Monomial dilatation degree for close-to-convex-monomial.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the k-term fully-convex root table (beta x k grid).
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample a geometric margin at 0.99x the computed radius.
    Verify {
        /// sense-preserving | fully-starlike | fully-convex | close-to-convex
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value = "janowski:1,-1")]
        psi: String,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value = "identity")]
        dilatation: String,
        #[arg(long, value_enum, default_value_t = CouplingArg::Product)]
        coupling: CouplingArg,
        /// Check at this radius instead of 0.99x the computed one.
        #[arg(long)]
        radius_override: Option<f64>,
        /// Grid resolution per axis (>= 64).
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit image curves of concentric circles under the map.
    Plot {
        #[arg(long, default_value = "lemniscate")]
        psi: String,
        #[arg(long, default_value = "identity")]
        dilatation: String,
        #[arg(long, value_enum, default_value_t = CouplingArg::Product)]
        coupling: CouplingArg,
        #[arg(long)]
        radius: f64,
        /// Angular samples per circle (>= 64).
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the generator catalog.
    ListPsi,
    /// Run the classical counterexample suite.
    Counterexamples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Numeric(harmonic_radius::Error),
    Io(String, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "{m}"),
            Self::Numeric(e) => write!(f, "{e}"),
            Self::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl From<harmonic_radius::Error> for CliError {
    fn from(e: harmonic_radius::Error) -> Self {
        use harmonic_radius::Error as E;
        match e {
            E::Parameter(_) | E::UnknownPsi(_) | E::NegativeBernardiOrder(_) => {
                Self::Usage(e.to_string())
            }
            other => Self::Numeric(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Numeric(_) | Self::Io(..) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code: u8 = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Radius {
            theorem,
            psi,
            beta,
            alpha,
            degree,
            format,
            output,
        } => {
            let records = compute_radius(&theorem, &psi, beta, alpha, degree)?;
            let body = match format {
                Format::Json => to_json(&records)?,
                Format::Text => records.iter().map(record_text).collect::<Vec<_>>().join(""),
                _ => return Err(CliError::Usage("radius supports text or json".into())),
            };
            write_out(output, &body)
        }
        Command::Table1 { format, output } => {
            let rows = table1_rows()?;
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("beta,s5,s10,s20,s_inf\n");
                    for row in &rows {
                        let _ = writeln!(
                            s,
                            "{},{:.6},{:.6},{:.6},{:.6}",
                            row.beta, row.s5, row.s10, row.s20, row.s_inf
                        );
                    }
                    s
                }
                Format::Json => to_json(&rows)?,
                Format::Text => {
                    let mut s = String::from("beta      S5        S10       S20       S_inf\n");
                    for row in &rows {
                        let _ = writeln!(
                            s,
                            "{:<9} {:<9.6} {:<9.6} {:<9.6} {:<9.6}",
                            row.beta, row.s5, row.s10, row.s20, row.s_inf
                        );
                    }
                    s
                }
                Format::Svg => return Err(CliError::Usage("table1 supports csv, json or text".into())),
            };
            write_out(output, &body)
        }
        Command::Verify {
            theorem,
            psi,
            beta,
            dilatation,
            coupling,
            radius_override,
            samples,
            format,
            output,
        } => {
            if samples < 64 {
                return Err(CliError::Usage("samples must be >= 64".into()));
            }
            let report = verify(
                &theorem,
                &psi,
                beta,
                &dilatation,
                coupling.into(),
                radius_override,
                samples,
            )?;
            let body = match format {
                Format::Json => to_json(&report)?,
                _ => report_text(&report),
            };
            write_out(output, &body)?;
            Ok(if report.pass { 0 } else { 3 })
        }
        Command::Plot {
            psi,
            dilatation,
            coupling,
            radius,
            samples,
            format,
            output,
        } => {
            if samples < 64 {
                return Err(CliError::Usage("samples must be >= 64".into()));
            }
            if !(0.0 < radius && radius < 1.0) {
                return Err(CliError::Usage("radius must lie in (0, 1)".into()));
            }
            let map = build_map(&psi, &dilatation, coupling.into())?;
            let curves = sample_curves(&map, radius, samples);
            let body = match format {
                Format::Csv => curves_csv(&curves),
                Format::Svg => curves_svg(&curves),
                _ => return Err(CliError::Usage("plot supports csv or svg".into())),
            };
            write_out(output, &body)
        }
        Command::ListPsi => {
            let mut body = String::new();
            for name in PsiSpec::catalog_names() {
                let _ = writeln!(body, "{name}");
            }
            write_out(None, &body)
        }
        Command::Counterexamples { format, output } => {
            let reports = harmonic::counterexample_suite();
            // G is sense-reversing: its margin check is expected to fail
            let all_as_expected = reports
                .iter()
                .all(|r| r.pass != (r.check_id == "G-sense-preserving"));
            let body = match format {
                Format::Json => to_json(&reports)?,
                _ => reports.iter().map(report_text).collect::<Vec<_>>().join(""),
            };
            write_out(output, &body)?;
            Ok(if all_as_expected { 0 } else { 3 })
        }
    }
}

/// One radius record; convexity commands emit one per reading.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct RadiusRecord {
    theorem: String,
    psi: String,
    parameters: BTreeMap<String, f64>,
    value: f64,
    branch: String,
    residual: f64,
    sharp: bool,
    notes: String,
}

fn record(theorem: &str, psi: &str, parameters: BTreeMap<String, f64>, r: &RadiusResult) -> RadiusRecord {
    let branch = serde_json::to_value(r.branch)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    RadiusRecord {
        theorem: theorem.into(),
        psi: psi.into(),
        parameters,
        value: r.value,
        branch,
        residual: r.residual,
        sharp: r.sharp,
        notes: format!("{} [{}]", r.notes, r.equation_id),
    }
}

fn record_text(r: &RadiusRecord) -> String {
    let params = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "{} psi={} {} value={:.12} branch={} residual={:.3e} sharp={}\n  {}\n",
        r.theorem, r.psi, params, r.value, r.branch, r.residual, r.sharp, r.notes
    )
}

fn compute_radius(
    theorem: &str,
    psi_name: &str,
    beta: f64,
    alpha: f64,
    degree: u32,
) -> CliResult<Vec<RadiusRecord>> {
    let spec = PsiSpec::parse(psi_name)?;
    let mut params = BTreeMap::new();
    let one = |r: RadiusResult, params: BTreeMap<String, f64>| -> Vec<RadiusRecord> {
        vec![record(theorem, psi_name, params, &r)]
    };
    let with_beta = |params: &mut BTreeMap<String, f64>| {
        params.insert("beta".into(), beta);
    };
    Ok(match theorem {
        "univalence" => one(radius::univalence_radius(&spec)?, params),
        "fully-starlike" => {
            with_beta(&mut params);
            one(radius::fully_starlike_radius(&spec, beta)?, params)
        }
        "fully-starlike-improved" => {
            with_beta(&mut params);
            one(
                radius::fully_starlike_radius_improved(&spec, beta, false)?,
                params,
            )
        }
        "sense-preserving" => {
            with_beta(&mut params);
            one(
                radius::fully_starlike_radius_improved(&spec, beta, true)?,
                params,
            )
        }
        "fully-convex" => {
            with_beta(&mut params);
            // both readings of the convolution equation, always
            let mut out = Vec::new();
            for (label, reading) in [
                ("fully-convex[proof_consistent]", ConvexReading::ProofConsistent),
                ("fully-convex[table_printed]", ConvexReading::TablePrinted),
            ] {
                let r = radius::fully_convex_radius(&spec, beta, reading)?;
                out.push(record(label, psi_name, params.clone(), &r));
            }
            out
        }
        "bernardi-fully-starlike" => {
            with_beta(&mut params);
            one(
                radius::bernardi_radius(&spec, beta, BernardiKind::FullyStarlike)?,
                params,
            )
        }
        "bernardi-fully-convex" => {
            with_beta(&mut params);
            one(
                radius::bernardi_radius(&spec, beta, BernardiKind::FullyConvex)?,
                params,
            )
        }
        "bernardi-uniformly-starlike" => one(
            radius::bernardi_radius(&spec, beta, BernardiKind::UniformlyStarlike)?,
            params,
        ),
        "uniformly-starlike" => one(radius::uniform_radius(&spec, UniformKind::Starlike)?, params),
        "uniformly-convex" => one(radius::uniform_radius(&spec, UniformKind::Convex)?, params),
        "strongly-starlike" => {
            params.insert("alpha".into(), alpha);
            one(radius::strongly_starlike_radius(&spec, alpha)?, params)
        }
        "close-to-convex" => one(
            radius::close_to_convex_radius(&CloseToConvexVariant::General(spec))?,
            params,
        ),
        "close-to-convex-lemniscate" => one(
            radius::close_to_convex_radius(&CloseToConvexVariant::Lemniscate)?,
            params,
        ),
        "close-to-convex-monomial" => {
            params.insert("degree".into(), degree as f64);
            one(
                radius::close_to_convex_radius(&CloseToConvexVariant::Monomial(degree))?,
                params,
            )
        }
        "close-to-convex-sg" => one(
            radius::close_to_convex_radius(&CloseToConvexVariant::SigmoidSg)?,
            params,
        ),
        "convexity" => one(spec.convexity_radius()?, params),
        other => {
            return Err(CliError::Usage(format!(
                "unknown theorem: {other} (see `radius --help` for the list)"
            )))
        }
    })
}

#[derive(Serialize)]
struct TableRow {
    beta: f64,
    s5: f64,
    s10: f64,
    s20: f64,
    s_inf: f64,
}

fn table1_rows() -> CliResult<Vec<TableRow>> {
    let spec = PsiSpec::KappaExp;
    let mut rows = Vec::new();
    for beta in [0.0, 0.5, 0.9] {
        rows.push(TableRow {
            beta,
            s5: harmonic::table1_root(&spec, beta, Some(5))?,
            s10: harmonic::table1_root(&spec, beta, Some(10))?,
            s20: harmonic::table1_root(&spec, beta, Some(20))?,
            s_inf: harmonic::table1_root(&spec, beta, None)?,
        });
    }
    Ok(rows)
}

fn parse_dilatation(name: &str) -> CliResult<DilatationSpec> {
    let usage = || {
        CliError::Usage(format!(
            "unknown dilatation: {name} (identity | constant:re,im | monomial:n,theta0 | mobius:re,im)"
        ))
    };
    if name == "identity" {
        return Ok(DilatationSpec::Identity);
    }
    let (kind, rest) = name.split_once(':').ok_or_else(usage)?;
    let parts: Vec<&str> = rest.split(',').collect();
    let f = |s: &str| s.trim().parse::<f64>().map_err(|_| usage());
    match (kind, parts.as_slice()) {
        ("constant", [re, im]) => {
            Ok(DilatationSpec::constant(Complex64::new(f(re)?, f(im)?))?)
        }
        ("mobius", [re, im]) => Ok(DilatationSpec::mobius(Complex64::new(f(re)?, f(im)?))?),
        ("monomial", [n, theta0]) => {
            let n: u32 = n.trim().parse().map_err(|_| usage())?;
            Ok(DilatationSpec::monomial(n, f(theta0)?)?)
        }
        _ => Err(usage()),
    }
}

fn build_map(psi: &str, dilatation: &str, coupling: Coupling) -> CliResult<HarmonicMap> {
    let spec = PsiSpec::parse(psi)?;
    let phi = parse_dilatation(dilatation)?;
    Ok(harmonic::build_harmonic(&spec, &phi, coupling, 64)?)
}

fn verify(
    theorem: &str,
    psi: &str,
    beta: f64,
    dilatation: &str,
    coupling: Coupling,
    radius_override: Option<f64>,
    samples: usize,
) -> CliResult<VerificationReport> {
    let spec = PsiSpec::parse(psi)?;
    let map = build_map(psi, dilatation, coupling)?;
    let grid = GridSpec {
        radial: samples,
        angular: samples,
    };
    let computed = match theorem {
        "sense-preserving" => radius::univalence_radius(&spec)?.value,
        "fully-starlike" => radius::fully_starlike_radius(&spec, beta)?.value,
        "fully-convex" => {
            radius::fully_convex_radius(&spec, beta, ConvexReading::ProofConsistent)?.value
        }
        "close-to-convex" => {
            radius::close_to_convex_radius(&CloseToConvexVariant::General(spec))?.value
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown verification check: {other}"
            )))
        }
    };
    let r = radius_override.unwrap_or(0.99 * computed);
    if !(0.0 < r && r < 1.0) {
        return Err(CliError::Usage(format!("radius {r} outside (0, 1)")));
    }
    let report = match theorem {
        "sense-preserving" => harmonic::sense_preserving_margin(&map, r, &grid),
        "fully-starlike" => harmonic::fully_starlike_margin(&map, r, beta, &grid)?,
        "fully-convex" => harmonic::fully_convex_margin(&map, r, beta, &grid)?,
        "close-to-convex" => harmonic::close_to_convex_probe(&map, r, 32, samples)?,
        _ => unreachable!(),
    };
    Ok(report)
}

fn report_text(r: &VerificationReport) -> String {
    format!(
        "{}: {} margin={:.9} at (r={:.6}, theta={:.6}) grid={}x{} radius={:.9}\n  {}\n",
        r.check_id,
        if r.pass { "pass" } else { "FAIL" },
        r.min_margin,
        r.witness.0,
        r.witness.1,
        r.grid.0,
        r.grid.1,
        r.radius,
        r.notes
    )
}

struct Curve {
    id: usize,
    points: Vec<(f64, Complex64)>, // (theta, f(r_j e^{i theta}))
}

/// The boundary circle |z| = r plus 8 interior circles r j/9.
fn sample_curves(map: &HarmonicMap, r: f64, samples: usize) -> Vec<Curve> {
    (1..=9)
        .map(|j| {
            let rj = r * j as f64 / 9.0;
            let points = (0..samples)
                .map(|i| {
                    let theta = TAU * i as f64 / samples as f64;
                    (theta, map.eval(Complex64::from_polar(rj, theta)))
                })
                .collect();
            Curve { id: j, points }
        })
        .collect()
}

fn curves_csv(curves: &[Curve]) -> String {
    let mut s = String::from("curve_id,theta,re,im\n");
    for c in curves {
        for (theta, w) in &c.points {
            let _ = writeln!(s, "{},{:.12},{:.12},{:.12}", c.id, theta, w.re, w.im);
        }
    }
    s
}

fn curves_svg(curves: &[Curve]) -> String {
    let (mut lo_re, mut hi_re) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_im, mut hi_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for (_, w) in &c.points {
            lo_re = lo_re.min(w.re);
            hi_re = hi_re.max(w.re);
            lo_im = lo_im.min(w.im);
            hi_im = hi_im.max(w.im);
        }
    }
    // uniform scale into the unit square, centered, 5% padding
    let span = (hi_re - lo_re).max(hi_im - lo_im).max(1e-300) / 0.9;
    let (c_re, c_im) = (0.5 * (lo_re + hi_re), 0.5 * (lo_im + hi_im));
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n",
    );
    for c in curves {
        let mut d = String::new();
        for (k, (_, w)) in c.points.iter().enumerate() {
            let x = 0.5 + (w.re - c_re) / span;
            let y = 0.5 - (w.im - c_im) / span;
            let _ = write!(d, "{}{:.6} {:.6} ", if k == 0 { "M" } else { "L" }, x, y);
        }
        d.push('Z');
        let _ = writeln!(
            s,
            "<path id=\"curve-{}\" d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.002\"/>",
            c.id, d
        );
    }
    s.push_str("</svg>\n");
    s
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))
}

fn write_out(output: Option<PathBuf>, body: &str) -> CliResult<u8> {
    match output {
        Some(path) => std::fs::write(&path, body)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?,
        None => print!("{body}"),
    }
    Ok(0)
}
