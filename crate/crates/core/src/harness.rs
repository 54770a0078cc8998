//! Test-sequence generators, the zero/one interpolation problem, and a
//! numerical walk through the chain of inequalities showing that a separated
//! sequence admitting one zero/one interpolant on a corresponding Hoffman
//! decomposition satisfies the Carleson condition.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blaschke::{
    blaschke_eval, blaschke_eval_excluding, carleson_constant, separation_constant, within_guard, PointSequence,
};
use crate::boundary::boundary_sup;
use crate::error::{Error, Result};
use crate::geometry::DiskPoint;
use crate::hoffman::{corresponding_decomposition, Decomposition, DEFAULT_RESOLUTION};
use crate::pick::{solve, PickOptions, PickProblem};

/// Sampling radius for random sequences.
const RANDOM_RADIUS: f64 = 0.95;
const MAX_REJECTIONS: usize = 100_000;

/// `λ_n = 1 - ratio^n` for `n = 1..=count`.
pub fn generate_radial(ratio: f64, count: usize) -> Result<PointSequence> {
    if !(ratio > 0.0 && ratio < 1.0) || count == 0 {
        return Err(Error::InvalidParameter(format!(
            "radial family needs ratio in (0, 1) and count >= 1, got ({ratio}, {count})"
        )));
    }
    let points = radial_points(ratio, count)?;
    PointSequence::new(points, Some(format!("radial({ratio}, {count})")))
}

fn radial_points(ratio: f64, count: usize) -> Result<Vec<DiskPoint>> {
    (1..=count)
        .map(|n| {
            let x = 1.0 - ratio.powi(n as i32);
            if !within_guard(x) {
                return Err(Error::BoundaryGuard { ratio, count });
            }
            DiskPoint::from_re_im(x, 0.0)
        })
        .collect()
}

/// Rejection sampling, uniform on the disk of radius 0.95, keeping points at
/// pseudohyperbolic distance at least `min_sep` from those already accepted.
pub fn generate_separated_random(count: usize, min_sep: f64, seed: u64) -> Result<PointSequence> {
    if count == 0 || !(0.0..1.0).contains(&min_sep) {
        return Err(Error::InvalidParameter(format!(
            "need count >= 1 and min_sep in [0, 1), got ({count}, {min_sep})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<DiskPoint> = Vec::with_capacity(count);
    let mut rejections = 0;
    while accepted.len() < count {
        let r = RANDOM_RADIUS * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let z = Complex64::from_polar(r, theta);
        let ok = accepted
            .iter()
            .all(|p| crate::geometry::pseudohyperbolic_distance(z, p.value()) >= min_sep.max(1e-6));
        if ok {
            accepted.push(DiskPoint::new(z)?);
        } else {
            rejections += 1;
            if rejections >= MAX_REJECTIONS {
                return Err(Error::PackingFailure {
                    count,
                    min_sep,
                    attempts: rejections,
                });
            }
        }
    }
    PointSequence::new(accepted, Some(format!("random({count}, {min_sep}, {seed})")))
}

/// Pairs of points at a fixed pseudohyperbolic gap, split even/odd.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterexampleSpec {
    pub num_pairs: usize,
    pub gap: f64,
    pub base_radial_ratio: f64,
}

impl CounterexampleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_pairs < 2 {
            return Err(Error::InvalidParameter("num_pairs must be at least 2".into()));
        }
        if !(self.gap > 0.0 && self.gap <= 0.1) {
            return Err(Error::InvalidParameter(format!(
                "gap must lie in (0, 0.1], got {}",
                self.gap
            )));
        }
        if !(self.base_radial_ratio > 0.0 && self.base_radial_ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ratio must lie in (0, 1), got {}",
                self.base_radial_ratio
            )));
        }
        Ok(())
    }
}

/// Base points `μ_n = 1 - ratio^n`, each followed by its partner at
/// pseudohyperbolic distance `gap` further along the real axis. Pairs with
/// even `n` (1-based) form part 0, odd `n` part 1. The partition is declared;
/// `(a, b)` are fitted on the exclusion grid with `δ = 2·gap` for reporting.
pub fn generate_counterexample(spec: &CounterexampleSpec, resolution: usize) -> Result<(PointSequence, Decomposition)> {
    spec.validate()?;
    let ratio = spec.base_radial_ratio;
    let mut points = Vec::with_capacity(2 * spec.num_pairs);
    let mut part0 = Vec::new();
    let mut part1 = Vec::new();
    for (k, mu) in radial_points(ratio, spec.num_pairs)?.into_iter().enumerate() {
        let x = mu.value().re;
        // real y > x with (y - x)/(1 - x y) = gap
        let partner = (x + spec.gap) / (1.0 + spec.gap * x);
        if !within_guard(partner) {
            return Err(Error::BoundaryGuard {
                ratio,
                count: spec.num_pairs,
            });
        }
        let part = if (k + 1) % 2 == 0 { &mut part0 } else { &mut part1 };
        part.push(points.len());
        part.push(points.len() + 1);
        points.push(mu);
        points.push(DiskPoint::from_re_im(partner, 0.0)?);
    }
    let label = format!(
        "counterexample(pairs={}, gap={}, ratio={})",
        spec.num_pairs, spec.gap, ratio
    );
    let seq = PointSequence::new(points, Some(label))?;
    let dec = Decomposition::from_parts(seq.clone(), part0, part1, 2.0 * spec.gap, resolution)?;
    Ok((seq, dec))
}

/// Targets 0 on part 0 and 1 on part 1.
pub fn zero_one_problem(dec: &Decomposition) -> Result<PickProblem> {
    let mut targets = vec![Complex64::new(0.0, 0.0); dec.base.len()];
    for &i in &dec.part1 {
        targets[i] = Complex64::new(1.0, 0.0);
    }
    PickProblem::new(dec.base.clone(), targets)
}

/// `(inf_{μ∈Λ₁} |B₀(μ)|, inf_{μ∈Λ₀} |B₁(μ)|)`, straight from the products.
pub fn cross_product_minima(dec: &Decomposition) -> (f64, f64) {
    let p0 = dec.points0();
    let p1 = dec.points1();
    let eta1 = p1
        .iter()
        .map(|mu| blaschke_eval(&p0, mu.value()).norm())
        .fold(f64::INFINITY, f64::min);
    let eta2 = p0
        .iter()
        .map(|mu| blaschke_eval(&p1, mu.value()).norm())
        .fold(f64::INFINITY, f64::min);
    (eta1, eta2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainConfig {
    pub grid_resolution: usize,
    pub boundary_grid: usize,
    pub pick: PickOptions,
    /// Sequences with separation at or below this are treated as not separated.
    pub separation_threshold: f64,
    /// Relative tolerance of every pass/fail check.
    pub tolerance: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            grid_resolution: DEFAULT_RESOLUTION,
            boundary_grid: 4096,
            pick: PickOptions::default(),
            separation_threshold: 1e-6,
            tolerance: 1e-6,
        }
    }
}

/// One inequality `value ≥ bound` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepCheck {
    pub index: usize,
    pub point: Complex64,
    pub value: f64,
    pub bound: f64,
    /// `value / bound - 1`.
    pub margin: f64,
    pub pass: bool,
}

impl StepCheck {
    fn new(index: usize, point: Complex64, value: f64, bound: f64, tol: f64) -> Self {
        let margin = value / bound - 1.0;
        StepCheck {
            index,
            point,
            value,
            bound,
            margin,
            pass: margin >= -tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub hypothesis_ok: bool,
    pub separation_constant: f64,
    pub delta: f64,
    pub part0: Vec<usize>,
    pub part1: Vec<usize>,
    pub min_norm: Option<f64>,
    /// Boundary sup-norm of the zero/one interpolant `f`.
    pub c: Option<f64>,
    pub eta: Option<f64>,
    /// Same for `g = 1 - f`.
    pub c_g: Option<f64>,
    pub eta_g: Option<f64>,
    pub fitted_a: Option<f64>,
    pub fitted_log_a: Option<f64>,
    pub fitted_b: Option<f64>,
    /// `|B₀(μ)| ≥ η` for `μ ∈ Λ₁`.
    pub step_a: Vec<StepCheck>,
    /// `|B₁(μ)| ≥ η_g` for `μ ∈ Λ₀`.
    pub step_b: Vec<StepCheck>,
    /// `|B_{Λ_i∖{μ}}(μ)| ≥ (a/δ)·η_i^{1/b}` on both parts.
    pub step_c: Vec<StepCheck>,
    /// `|B_{Λ∖{μ}}(μ)| ≥ (a/δ)·η^{1+1/b}` with `η = min(η, η_g)`.
    #[serde(rename = "final")]
    pub final_bound: Vec<StepCheck>,
    pub carleson_direct: f64,
}

impl ChainReport {
    /// Steps A and B follow from the interpolant alone and must hold.
    pub fn hard_steps_pass(&self) -> bool {
        self.hypothesis_ok && self.step_a.iter().chain(&self.step_b).all(|s| s.pass)
    }
}

pub fn verify_theorem_chain(seq: &PointSequence, cfg: &ChainConfig) -> Result<ChainReport> {
    if seq.len() < 2 {
        return Err(Error::InvalidParameter("the chain needs at least two points".into()));
    }
    let points = seq.points();
    let sep = separation_constant(points);
    let delta = sep / 2.0;
    let carleson_direct = carleson_constant(points);
    let mut report = ChainReport {
        hypothesis_ok: false,
        separation_constant: sep,
        delta,
        part0: Vec::new(),
        part1: Vec::new(),
        min_norm: None,
        c: None,
        eta: None,
        c_g: None,
        eta_g: None,
        fitted_a: None,
        fitted_log_a: None,
        fitted_b: None,
        step_a: Vec::new(),
        step_b: Vec::new(),
        step_c: Vec::new(),
        final_bound: Vec::new(),
        carleson_direct,
    };
    if sep <= cfg.separation_threshold {
        return Ok(report);
    }

    let dec = corresponding_decomposition(seq, cfg.grid_resolution)?;
    report.hypothesis_ok = (dec.delta - sep / 2.0).abs() <= 1e-12;
    report.part0 = dec.part0.clone();
    report.part1 = dec.part1.clone();
    report.fitted_a = Some(dec.fitted_a);
    report.fitted_log_a = Some(dec.fitted_log_a);
    report.fitted_b = Some(dec.fitted_b);
    if !report.hypothesis_ok {
        return Ok(report);
    }

    let problem = zero_one_problem(&dec)?;
    let solution = solve(&problem, &cfg.pick)?;
    let f = &solution.interpolant;
    let hints = f.hints();
    // |B₀| = 1 on the circle, so ‖F‖ = ‖f‖ for f = B₀F.
    let c = f.sup_norm_boundary(cfg.boundary_grid)?;
    let c_g = boundary_sup(|z| Complex64::new(1.0, 0.0) - f.eval(z), cfg.boundary_grid, &hints)?;
    let eta = 1.0 / c;
    let eta_g = 1.0 / c_g;
    report.min_norm = Some(solution.min_norm);
    report.c = Some(c);
    report.eta = Some(eta);
    report.c_g = Some(c_g);
    report.eta_g = Some(eta_g);

    let p0 = dec.points0();
    let p1 = dec.points1();
    let tol = cfg.tolerance;
    let (log_a, b) = (dec.fitted_log_a, dec.fitted_b);
    // (a/δ)·η^p in logs, since a itself may underflow
    let scaled = |eta: f64, p: f64| (log_a - delta.ln() + p * eta.ln()).exp();

    for &i in &dec.part1 {
        let mu = points[i].value();
        report
            .step_a
            .push(StepCheck::new(i, mu, blaschke_eval(&p0, mu).norm(), eta, tol));
    }
    for &i in &dec.part0 {
        let mu = points[i].value();
        report
            .step_b
            .push(StepCheck::new(i, mu, blaschke_eval(&p1, mu).norm(), eta_g, tol));
    }

    let others =
        |part: &[usize], i: usize| -> Vec<DiskPoint> { part.iter().filter(|&&k| k != i).map(|&k| points[k]).collect() };
    for (part, side_eta) in [(&dec.part1, eta), (&dec.part0, eta_g)] {
        let bound = scaled(side_eta, 1.0 / b);
        for &i in part.iter() {
            let mu = points[i].value();
            let value = blaschke_eval(&others(part, i), mu).norm();
            report.step_c.push(StepCheck::new(i, mu, value, bound, tol));
        }
    }
    report.step_c.sort_by_key(|s| s.index);

    let final_bound = scaled(eta.min(eta_g), 1.0 + 1.0 / b);
    for (i, p) in points.iter().enumerate() {
        let mu = p.value();
        let value = blaschke_eval_excluding(points, i, mu)?.norm();
        report.final_bound.push(StepCheck::new(i, mu, value, final_bound, tol));
    }
    Ok(report)
}
