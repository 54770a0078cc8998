//! Minimal-norm bounded analytic interpolation.
//!
//! Feasibility of `f(λ_j) = w_j` with `‖f‖∞ ≤ M` is decided by positive
//! semidefiniteness of the Pick matrix; the minimal norm is found by
//! bisection, and an explicit interpolant is built with the Schur
//! (Nevanlinna) recursion.
//!
//! Pick matrices of nodes spread along a radius behave like Hilbert
//! matrices, and an eigenvalue test at a trace-relative tolerance accepts
//! norms well below the true minimum. The Schur recursion is a pivoted
//! factorization of the same matrix in a Möbius-normalized basis (pivot `k`
//! is positive iff `|p_k| < 1`), so feasibility requires both the eigenvalue
//! test and a successful recursion.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::blaschke::{excluded_log_moduli, PointSequence};
use crate::boundary::boundary_sup;
use crate::error::{Error, Result};
use crate::geometry::{mobius_transform, DiskPoint};

/// Schur parameters may exceed the unit modulus by this much before the
/// recursion is declared broken.
const PARAM_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PickOptions {
    /// Relative PSD tolerance, scaled by `max(1, trace/n)`.
    pub psd_tol: f64,
    /// Bisection stops when the bracket is narrower than this times the upper bound.
    pub bisect_rel_tol: f64,
    /// The interpolant is constructed at `min_norm * (1 + construction_slack)`.
    pub construction_slack: f64,
}

impl Default for PickOptions {
    fn default() -> Self {
        PickOptions {
            psd_tol: 1e-10,
            bisect_rel_tol: 1e-8,
            construction_slack: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PickProblem {
    nodes: PointSequence,
    targets: Vec<Complex64>,
}

impl PickProblem {
    pub fn new(nodes: PointSequence, targets: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != targets.len() {
            return Err(Error::LengthMismatch {
                nodes: nodes.len(),
                targets: targets.len(),
            });
        }
        if targets.iter().any(|w| !(w.re.is_finite() && w.im.is_finite())) {
            return Err(Error::InvalidParameter("targets must be finite".into()));
        }
        Ok(PickProblem { nodes, targets })
    }

    pub fn nodes(&self) -> &PointSequence {
        &self.nodes
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn max_target(&self) -> f64 {
        self.targets.iter().map(|w| w.norm()).fold(0.0, f64::max)
    }

    /// `∑ |w_j| / |B_j(λ_j)|`: the norm bound of `∑ w_j φ_j`, always feasible.
    pub fn weak_family_bound(&self) -> f64 {
        excluded_log_moduli(self.nodes.points())
            .into_iter()
            .zip(&self.targets)
            .map(|(l, w)| w.norm() * (-l).exp())
            .sum()
    }
}

/// Entry `(j, k)` is `(M² - w_j conj(w_k)) / (1 - λ_j conj(λ_k))`.
pub fn pick_matrix(problem: &PickProblem, m: f64) -> DMatrix<Complex64> {
    let n = problem.len();
    let nodes = problem.nodes.points();
    let w = &problem.targets;
    let m2 = Complex64::new(m * m, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut p = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        let lj = nodes[j].value();
        for k in j..n {
            let lk = nodes[k].value();
            let entry = (m2 - w[j] * w[k].conj()) / (one - lj * lk.conj());
            if j == k {
                p[(j, j)] = Complex64::new(entry.re, 0.0);
            } else {
                p[(j, k)] = entry;
                p[(k, j)] = entry.conj();
            }
        }
    }
    p
}

/// `max(1, trace / n)`.
pub fn trace_scale(p: &DMatrix<Complex64>) -> f64 {
    let n = p.nrows().max(1);
    let trace: f64 = (0..p.nrows()).map(|i| p[(i, i)].re).sum();
    (trace / n as f64).max(1.0)
}

pub fn smallest_eigenvalue(p: &DMatrix<Complex64>) -> f64 {
    if p.nrows() == 0 {
        return 0.0;
    }
    p.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Smallest Pick eigenvalue at `m`, divided by the trace scale.
pub fn feasibility_margin(problem: &PickProblem, m: f64) -> f64 {
    let p = pick_matrix(problem, m);
    smallest_eigenvalue(&p) / trace_scale(&p)
}

pub fn is_feasible(problem: &PickProblem, m: f64, psd_tol: f64) -> bool {
    m >= 0.0 && feasibility_margin(problem, m) >= -psd_tol && schur_parameters(problem, m).is_ok()
}

/// Smallest `M` for which the Pick matrix is positive semidefinite.
pub fn min_norm(problem: &PickProblem, opts: &PickOptions) -> Result<f64> {
    let mut lo = problem.max_target();
    if is_feasible(problem, lo, opts.psd_tol) {
        return Ok(lo);
    }
    let upper = problem.weak_family_bound();
    if !upper.is_finite() || !is_feasible(problem, upper, opts.psd_tol) {
        return Err(Error::BracketFailure { upper });
    }
    let mut hi = upper;
    let width = opts.bisect_rel_tol * upper;
    while hi - lo >= width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if is_feasible(problem, mid, opts.psd_tol) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurStep {
    pub node: DiskPoint,
    pub parameter: Complex64,
}

/// `f = scale · g₁` with `g_k = (p_k + b_k g_{k+1}) / (1 + conj(p_k) b_k g_{k+1})`
/// and the last `g` constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalInterpolant {
    pub schur_steps: Vec<SchurStep>,
    pub scale: f64,
}

impl RationalInterpolant {
    pub fn constant(value: Complex64) -> Self {
        let scale = value.norm();
        let parameter = if scale > 0.0 { value / scale } else { value };
        RationalInterpolant {
            schur_steps: vec![SchurStep {
                node: DiskPoint::origin(),
                parameter,
            }],
            scale,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let Some((last, rest)) = self.schur_steps.split_last() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut g = last.parameter;
        for step in rest.iter().rev() {
            let t = mobius_transform(step.node, z) * g;
            g = (step.parameter + t) / (Complex64::new(1.0, 0.0) + step.parameter.conj() * t);
        }
        g * self.scale
    }

    pub fn sup_norm_boundary(&self, grid: usize) -> Result<f64> {
        boundary_sup(|z| self.eval(z), grid, &self.hints())
    }

    /// Interpolation nodes, for clustering boundary samples.
    pub fn hints(&self) -> Vec<Complex64> {
        self.schur_steps.iter().map(|s| s.node.value()).collect()
    }
}

/// Runs the Schur recursion at norm `m`. Requires feasibility at `m·(1+1e-6)`.
pub fn construct_interpolant(problem: &PickProblem, m: f64, opts: &PickOptions) -> Result<RationalInterpolant> {
    if !is_feasible(problem, m * (1.0 + 1e-6), opts.psd_tol) {
        return Err(Error::Infeasible { norm: m });
    }
    Ok(RationalInterpolant {
        schur_steps: schur_parameters(problem, m)?,
        scale: m,
    })
}

/// Forward Schur recursion on the targets scaled by `1/m`.
fn schur_parameters(problem: &PickProblem, m: f64) -> Result<Vec<SchurStep>> {
    let nodes = problem.nodes.points();
    let n = nodes.len();
    let mut w: Vec<Complex64> = if m > 0.0 {
        problem.targets.iter().map(|&t| t / m).collect()
    } else {
        vec![Complex64::new(0.0, 0.0); n]
    };
    let one = Complex64::new(1.0, 0.0);
    let mut steps = Vec::with_capacity(n);

    for k in 0..n {
        let mut p = w[k];
        let r = p.norm();
        if r > 1.0 + PARAM_SLACK {
            return Err(Error::RecursionBreakdown { step: k, modulus: r });
        }
        if r >= 1.0 - f64::EPSILON {
            // Unimodular parameter: the only solution is this constant, so
            // every remaining value must agree with it.
            p /= r;
            let consistent = w[k + 1..].iter().all(|&v| (v - p).norm() <= 1e-9);
            if !consistent {
                return Err(Error::RecursionBreakdown { step: k, modulus: r });
            }
            steps.push(SchurStep {
                node: nodes[k],
                parameter: p,
            });
            break;
        }
        steps.push(SchurStep {
            node: nodes[k],
            parameter: p,
        });
        for j in k + 1..n {
            let b = mobius_transform(nodes[k], nodes[j].value());
            w[j] = (w[j] - p) / ((one - p.conj() * w[j]) * b);
        }
    }
    Ok(steps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PickSolution {
    pub min_norm: f64,
    /// Norm the interpolant was constructed at.
    pub construction_norm: f64,
    pub interpolant: RationalInterpolant,
    /// Smallest Pick eigenvalue over trace scale at the construction norm.
    pub feasibility_margin: f64,
}

impl PickSolution {
    /// `|f(λ_j) - w_j|` for every node.
    pub fn residuals(&self, problem: &PickProblem) -> Vec<f64> {
        problem
            .nodes
            .points()
            .iter()
            .zip(&problem.targets)
            .map(|(p, &w)| (self.interpolant.eval(p.value()) - w).norm())
            .collect()
    }
}

pub fn solve(problem: &PickProblem, opts: &PickOptions) -> Result<PickSolution> {
    let min_norm = min_norm(problem, opts)?;
    let construction_norm = min_norm * (1.0 + opts.construction_slack);
    let interpolant = construct_interpolant(problem, construction_norm, opts)?;
    Ok(PickSolution {
        min_norm,
        construction_norm,
        interpolant,
        feasibility_margin: feasibility_margin(problem, construction_norm),
    })
}
