use std::fmt::Write as _;
use std::path::Path;

use carleson::blaschke::{blaschke_log_modulus, carleson_constant, separation_constant};
use carleson::harness::{
    generate_counterexample, generate_radial, generate_separated_random, verify_theorem_chain, zero_one_problem,
    CounterexampleSpec,
};
use carleson::hoffman::{corresponding_decomposition, decompose};
use carleson::pick::{min_norm, solve, SchurStep};
use carleson::{analyze, Complex64, Decomposition, DiskPoint, PickProblem, PointSequence};
use serde::Serialize;

use crate::config::RunConfig;
use crate::document::PointSetDocument;
use crate::error::{CliError, CliResult, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK};
use crate::json;

/// Rendered output plus the process exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            exit_code: EXIT_OK,
        }
    }
}

pub fn cmd_analyze(seq: &PointSequence) -> CliResult<Outcome> {
    Ok(Outcome::ok(json::to_string(&analyze(seq))))
}

fn need_two(seq: &PointSequence) -> CliResult<()> {
    if seq.len() < 2 {
        return Err(CliError::Input(format!("need at least 2 points, got {}", seq.len())));
    }
    Ok(())
}

fn decomposition_for(seq: &PointSequence, delta: Option<f64>, cfg: &RunConfig) -> CliResult<Decomposition> {
    need_two(seq)?;
    Ok(match delta {
        Some(d) => decompose(seq, d, cfg.grid_resolution)?,
        None => corresponding_decomposition(seq, cfg.grid_resolution)?,
    })
}

pub fn cmd_decompose(seq: &PointSequence, delta: Option<f64>, cfg: &RunConfig) -> CliResult<Outcome> {
    let dec = decomposition_for(seq, delta, cfg)?;
    Ok(Outcome::ok(json::to_string(&dec)))
}

/// Parses `re` or `re,im`.
pub fn parse_target(text: &str) -> CliResult<Complex64> {
    let bad = || CliError::Usage(format!("target {text:?} is not of the form re[,im]"));
    let mut parts = text.split(',');
    let re: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(s) => s.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

#[derive(Serialize)]
struct InterpolationReport<'a> {
    min_norm: f64,
    construction_norm: f64,
    feasibility_margin: f64,
    residuals: Vec<f64>,
    schur_steps: &'a [SchurStep],
}

pub fn cmd_interpolate(
    seq: &PointSequence,
    targets: &[Complex64],
    boundary_csv: Option<&Path>,
    cfg: &RunConfig,
) -> CliResult<Outcome> {
    if targets.len() != seq.len() {
        return Err(CliError::Usage(format!(
            "{} targets given for {} points",
            targets.len(),
            seq.len()
        )));
    }
    let problem = PickProblem::new(seq.clone(), targets.to_vec())?;
    let sol = solve(&problem, &cfg.pick_options())?;
    if let Some(path) = boundary_csv {
        let f = &sol.interpolant;
        let mut csv = String::from("theta,re,im,modulus\n");
        for k in 0..cfg.boundary_grid {
            let theta = std::f64::consts::TAU * k as f64 / cfg.boundary_grid as f64;
            let v = f.eval(Complex64::from_polar(1.0, theta));
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                json::format_f64(theta),
                json::format_f64(v.re),
                json::format_f64(v.im),
                json::format_f64(v.norm())
            );
        }
        std::fs::write(path, csv).map_err(|e| CliError::io(path, e))?;
    }
    let report = InterpolationReport {
        min_norm: sol.min_norm,
        construction_norm: sol.construction_norm,
        feasibility_margin: sol.feasibility_margin,
        residuals: sol.residuals(&problem),
        schur_steps: &sol.interpolant.schur_steps,
    };
    Ok(Outcome::ok(json::to_string(&report)))
}

pub fn cmd_verify(seq: &PointSequence, cfg: &RunConfig) -> CliResult<Outcome> {
    need_two(seq)?;
    let report = verify_theorem_chain(seq, &cfg.chain_config())?;
    let exit_code = if !report.hypothesis_ok {
        EXIT_DOMAIN
    } else if !report.hard_steps_pass() {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        text: json::to_string(&report),
        exit_code,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleSummary {
    pub gap: f64,
    pub separation_constant: f64,
    pub carleson_constant: f64,
    pub zero_one_min_norm: f64,
}

#[derive(Serialize)]
struct CounterexampleReport<'a> {
    spec: CounterexampleSpec,
    document: PointSetDocument,
    decomposition: &'a Decomposition,
    summary: CounterexampleSummary,
}

fn summarize(
    spec: &CounterexampleSpec,
    cfg: &RunConfig,
) -> CliResult<(PointSequence, Decomposition, CounterexampleSummary)> {
    let (seq, dec) = generate_counterexample(spec, cfg.grid_resolution)?;
    let m = min_norm(&zero_one_problem(&dec)?, &cfg.pick_options())?;
    let summary = CounterexampleSummary {
        gap: spec.gap,
        separation_constant: separation_constant(seq.points()),
        carleson_constant: carleson_constant(seq.points()),
        zero_one_min_norm: m,
    };
    Ok((seq, dec, summary))
}

pub fn cmd_counterexample(spec: &CounterexampleSpec, points_out: Option<&Path>, cfg: &RunConfig) -> CliResult<Outcome> {
    let (seq, dec, summary) = summarize(spec, cfg)?;
    if let Some(path) = points_out {
        crate::document::save(path, &seq)?;
    }
    let report = CounterexampleReport {
        spec: *spec,
        document: PointSetDocument::from_sequence(&seq),
        decomposition: &dec,
        summary,
    };
    Ok(Outcome::ok(json::to_string(&report)))
}

/// One summary row per gap.
pub fn cmd_counterexample_sweep(base: &CounterexampleSpec, gaps: &[f64], cfg: &RunConfig) -> CliResult<Outcome> {
    let rows = gaps
        .iter()
        .map(|&gap| summarize(&CounterexampleSpec { gap, ..*base }, cfg).map(|r| r.2))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Outcome::ok(json::to_string(&rows)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Full,
    Part0,
    Part1,
}

/// Radius around each zero inside which the field is reported as NaN.
pub const ZERO_MASK: f64 = 1e-6;

/// Largest modulus kept on the Cartesian grid.
pub const FIELD_RADIUS: f64 = 0.999;

pub fn field_grid(resolution: usize) -> Vec<Complex64> {
    let step = |i: usize| -1.0 + 2.0 * i as f64 / (resolution - 1) as f64;
    let mut out = Vec::new();
    for iy in 0..resolution {
        for ix in 0..resolution {
            let z = Complex64::new(step(ix), step(iy));
            if z.norm() < FIELD_RADIUS {
                out.push(z);
            }
        }
    }
    out
}

pub fn field_csv(zeros: &[DiskPoint], resolution: usize) -> CliResult<String> {
    let mut csv = String::from("x,y,log_modulus\n");
    for z in field_grid(resolution) {
        let value = if zeros.iter().any(|p| (p.value() - z).norm() < ZERO_MASK) {
            f64::NAN
        } else {
            blaschke_log_modulus(zeros, z)?
        };
        let v = if value.is_nan() {
            "NaN".to_owned()
        } else {
            json::format_f64(value)
        };
        let _ = writeln!(csv, "{},{},{v}", json::format_f64(z.re), json::format_f64(z.im));
    }
    Ok(csv)
}

pub fn cmd_field(seq: &PointSequence, which: FieldKind, delta: Option<f64>, cfg: &RunConfig) -> CliResult<Outcome> {
    let zeros = match which {
        FieldKind::Full => seq.points().to_vec(),
        FieldKind::Part0 => decomposition_for(seq, delta, cfg)?.points0(),
        FieldKind::Part1 => decomposition_for(seq, delta, cfg)?.points1(),
    };
    Ok(Outcome::ok(field_csv(&zeros, cfg.grid_resolution)?))
}

pub enum GenerateKind {
    Radial { ratio: f64 },
    Random { min_sep: f64 },
}

pub fn cmd_generate(kind: &GenerateKind, count: usize, cfg: &RunConfig) -> CliResult<Outcome> {
    let seq = match *kind {
        GenerateKind::Radial { ratio } => generate_radial(ratio, count)?,
        GenerateKind::Random { min_sep } => generate_separated_random(count, min_sep, cfg.seed)?,
    };
    Ok(Outcome::ok(PointSetDocument::from_sequence(&seq).to_json()))
}
