//! δ-Hoffman decompositions: splitting a sequence `Λ = Λ₀ ∪ Λ₁` so that the
//! two Blaschke products satisfy `a|B₀|^{1/b} ≤ |B₁| ≤ (1/a)|B₀|^b` away from
//! the pseudohyperbolic disks `D(λ, δ)`.
//!
//! The constants `(a, b)` are fitted on a finite exclusion grid. The fit is
//! made symmetric in the two parts (the mirrored sandwich with `B₀` and `B₁`
//! exchanged holds with the same constants), so swapping the parts leaves
//! both constants unchanged.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::blaschke::{separation_constant, PointSequence};
use crate::error::{Error, Result};
use crate::geometry::{log_mobius_modulus, pseudohyperbolic_distance, DiskPoint};

pub const MIN_RESOLUTION: usize = 32;
pub const DEFAULT_RESOLUTION: usize = 128;

/// Sequences up to this length are partitioned by exhaustive search.
pub const EXHAUSTIVE_MAX: usize = 16;

const LOG_ZERO_EPS: f64 = 1e-14;

/// Relative shave applied to `log a` so the sandwich survives rounding when
/// re-evaluated.
const LOG_A_SHAVE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionGrid {
    pub points: Vec<Complex64>,
    pub delta: f64,
    pub resolution: usize,
}

impl ExclusionGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Cartesian grid over `[-R, R)²` with `R = min(0.999, max|λ| + 0.05)`,
/// keeping points with `|z| < R` and `|b_λ(z)| ≥ δ` for every `λ`.
///
/// Nodes are `-R + 2R·i/resolution`, so doubling the resolution yields a
/// superset of the previous grid.
pub fn exclusion_grid(points: &[DiskPoint], delta: f64, resolution: usize) -> Result<ExclusionGrid> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "grid resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let max_r = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let r = (max_r + 0.05).min(0.999);
    let coord = |i: usize| -r + (2.0 * r * i as f64) / resolution as f64;

    let mut kept = Vec::new();
    for iy in 0..resolution {
        let y = coord(iy);
        for ix in 0..resolution {
            let z = Complex64::new(coord(ix), y);
            if z.norm() >= r {
                continue;
            }
            if points.iter().all(|p| pseudohyperbolic_distance(z, p.value()) >= delta) {
                kept.push(z);
            }
        }
    }
    if kept.is_empty() {
        return Err(Error::EmptyGrid { delta });
    }
    Ok(ExclusionGrid {
        points: kept,
        delta,
        resolution,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparabilityFit {
    /// `exp(log_a)`; underflows to 0 when `log_a < -745`.
    pub a: f64,
    pub log_a: f64,
    pub b: f64,
    pub worst_point: Complex64,
}

/// Fits `(a, b)` from the log-moduli `L₀`, `L₁` of the two products on a grid.
fn fit_from_logs(l0: &[f64], l1: &[f64], grid: &[Complex64]) -> Result<ComparabilityFit> {
    let mut b = 1.0f64;
    let mut worst = 0usize;
    let mut worst_ratio = f64::NEG_INFINITY;
    for (g, (&x0, &x1)) in l0.iter().zip(l1).enumerate() {
        for x in [x0, x1] {
            if x > -LOG_ZERO_EPS {
                return Err(Error::DegenerateFit {
                    value: x,
                    re: grid[g].re,
                    im: grid[g].im,
                });
            }
        }
        let ratio = (x1 / x0).max(x0 / x1);
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst = g;
        }
        b = b.max(ratio);
    }
    let log_a = log_a_for(l0, l1, b);
    let log_a = log_a - LOG_A_SHAVE * log_a.abs().max(1.0);
    Ok(ComparabilityFit {
        a: log_a.exp(),
        log_a,
        b,
        worst_point: grid[worst],
    })
}

/// `min` over the grid of `L₁ - L₀/b`, `b·L₀ - L₁` and their mirrors.
fn log_a_for(l0: &[f64], l1: &[f64], b: f64) -> f64 {
    l0.iter()
        .zip(l1)
        .map(|(&x0, &x1)| (x1 - x0 / b).min(b * x0 - x1).min(x0 - x1 / b).min(b * x1 - x0))
        .fold(0.0, f64::min)
}

fn log_moduli_on(points: &[DiskPoint], grid: &[Complex64]) -> Vec<f64> {
    grid.iter()
        .map(|&z| points.iter().map(|p| log_mobius_modulus(p.value(), z)).sum())
        .collect()
}

/// Empirical Hoffman constants for `B₀ = B_{part0}`, `B₁ = B_{part1}` on `grid`.
pub fn comparability_fit(part0: &[DiskPoint], part1: &[DiskPoint], grid: &ExclusionGrid) -> Result<ComparabilityFit> {
    if part0.is_empty() || part1.is_empty() {
        return Err(Error::InvalidParameter("both parts must be nonempty".into()));
    }
    if grid.is_empty() {
        return Err(Error::EmptyGrid { delta: grid.delta });
    }
    let l0 = log_moduli_on(part0, &grid.points);
    let l1 = log_moduli_on(part1, &grid.points);
    fit_from_logs(&l0, &l1, &grid.points)
}

/// Grid points where `a|B₀|^{1/b} ≤ |B₁| ≤ (1/a)|B₀|^b` fails, checked in logs.
pub fn sandwich_violations(
    part0: &[DiskPoint],
    part1: &[DiskPoint],
    grid: &[Complex64],
    log_a: f64,
    b: f64,
) -> Vec<Complex64> {
    let l0 = log_moduli_on(part0, grid);
    let l1 = log_moduli_on(part1, grid);
    grid.iter()
        .zip(l0.iter().zip(&l1))
        .filter(|(_, (&x0, &x1))| !(log_a + x0 / b <= x1 && x1 <= b * x0 - log_a))
        .map(|(&z, _)| z)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub base: PointSequence,
    pub part0: Vec<usize>,
    pub part1: Vec<usize>,
    pub delta: f64,
    pub fitted_a: f64,
    /// Authoritative form of `fitted_a`, which can underflow.
    pub fitted_log_a: f64,
    pub fitted_b: f64,
    pub worst_point: Complex64,
    pub fit_grid_size: usize,
    pub grid_resolution: usize,
    #[serde(skip)]
    pub grid: ExclusionGrid,
}

impl Decomposition {
    /// Fits `(a, b)` for a given partition; the partition is taken as declared.
    pub fn from_parts(
        base: PointSequence,
        part0: Vec<usize>,
        part1: Vec<usize>,
        delta: f64,
        resolution: usize,
    ) -> Result<Self> {
        validate_partition(base.len(), &part0, &part1)?;
        let grid = exclusion_grid(base.points(), delta, resolution)?;
        let fit = comparability_fit(&base.subset(&part0)?, &base.subset(&part1)?, &grid)?;
        Ok(Decomposition {
            part0,
            part1,
            delta,
            fitted_a: fit.a,
            fitted_log_a: fit.log_a,
            fitted_b: fit.b,
            worst_point: fit.worst_point,
            fit_grid_size: grid.len(),
            grid_resolution: resolution,
            grid,
            base,
        })
    }

    pub fn points0(&self) -> Vec<DiskPoint> {
        self.part0.iter().map(|&i| self.base.points()[i]).collect()
    }

    pub fn points1(&self) -> Vec<DiskPoint> {
        self.part1.iter().map(|&i| self.base.points()[i]).collect()
    }

    /// Same partition with the roles of the parts exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::from_parts(
            self.base.clone(),
            self.part1.clone(),
            self.part0.clone(),
            self.delta,
            self.grid_resolution,
        )
    }

    pub fn violations(&self) -> Vec<Complex64> {
        sandwich_violations(
            &self.points0(),
            &self.points1(),
            &self.grid.points,
            self.fitted_log_a,
            self.fitted_b,
        )
    }
}

fn validate_partition(n: usize, part0: &[usize], part1: &[usize]) -> Result<()> {
    if part0.is_empty() || part1.is_empty() {
        return Err(Error::InvalidParameter("both parts must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &i in part0.iter().chain(part1) {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if seen[i] {
            return Err(Error::InvalidParameter(format!("index {i} assigned twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidParameter(format!("index {i} not assigned")));
    }
    Ok(())
}

fn mask_to_parts(mask: u64, n: usize) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|&i| mask >> i & 1 == 1)
}

/// Per-point log-moduli on the grid, one row per sequence point.
fn point_rows(points: &[DiskPoint], grid: &[Complex64]) -> Vec<Vec<f64>> {
    points
        .par_iter()
        .map(|p| grid.iter().map(|&z| log_mobius_modulus(p.value(), z)).collect())
        .collect()
}

/// Subset sums of `rows`: entry `mask` holds `∑_{i ∈ mask} rows[i]`.
fn subset_table(rows: &[Vec<f64>], len: usize) -> Vec<Vec<f64>> {
    let mut table = vec![vec![0.0; len]; 1 << rows.len()];
    for mask in 1usize..1 << rows.len() {
        let low = mask.trailing_zeros() as usize;
        let (done, rest) = table.split_at_mut(mask);
        let prev = &done[mask & (mask - 1)];
        for ((t, &p), &r) in rest[0].iter_mut().zip(prev).zip(&rows[low]) {
            *t = p + r;
        }
    }
    table
}

fn max_ratio(l0: impl Iterator<Item = f64>, l1: impl Iterator<Item = f64>) -> f64 {
    l0.zip(l1).map(|(x0, x1)| (x1 / x0).max(x0 / x1)).fold(1.0, f64::max)
}

/// Exhaustive search over partitions with index 0 in part 0.
fn exhaustive_partition(points: &[DiskPoint], grid: &[Complex64]) -> u64 {
    let n = points.len();
    let rows = point_rows(points, grid);
    let h = n.div_ceil(2);
    let lo_tab = subset_table(&rows[..h], grid.len());
    let hi_tab = subset_table(&rows[h..], grid.len());
    let full: u64 = (1u64 << n) - 1;
    let lo_mask: u64 = (1u64 << h) - 1;

    let logs = |mask: u64| {
        let lo = &lo_tab[(mask & lo_mask) as usize];
        let hi = &hi_tab[(mask >> h) as usize];
        lo.iter().zip(hi).map(|(a, b)| a + b)
    };

    let masks: Vec<u64> = (1..full).step_by(2).collect();
    let bs: Vec<f64> = masks.par_iter().map(|&m| max_ratio(logs(m), logs(full & !m))).collect();
    let best_b = bs.iter().copied().fold(f64::INFINITY, f64::min);

    let mut best: Option<(f64, Vec<usize>, u64)> = None;
    for (&m, &b) in masks.iter().zip(&bs) {
        if b != best_b {
            continue;
        }
        let l0: Vec<f64> = logs(m).collect();
        let l1: Vec<f64> = logs(full & !m).collect();
        let log_a = log_a_for(&l0, &l1, b);
        let part0 = mask_to_parts(m, n).0;
        let better = match &best {
            None => true,
            Some((la, p0, _)) => log_a > *la || (log_a == *la && part0 < *p0),
        };
        if better {
            best = Some((log_a, part0, m));
        }
    }
    best.map(|(_, _, m)| m).expect("at least one nontrivial partition")
}

/// Builds a δ-Hoffman decomposition by minimizing the fitted `b`
/// (ties: larger `a`, then lexicographically smallest part 0).
pub fn decompose(seq: &PointSequence, delta: f64, resolution: usize) -> Result<Decomposition> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "a decomposition needs at least two points".into(),
        ));
    }
    let grid = exclusion_grid(seq.points(), delta, resolution)?;
    let (part0, part1) = if n <= EXHAUSTIVE_MAX {
        mask_to_parts(exhaustive_partition(seq.points(), &grid.points), n)
    } else {
        local_search_parts(seq.points(), &grid.points)
    };
    Decomposition::from_parts(seq.clone(), part0, part1, delta, resolution)
}

/// Alternating seed by increasing modulus, then first-improvement single-point moves.
fn local_search_parts(points: &[DiskPoint], grid: &[Complex64]) -> (Vec<usize>, Vec<usize>) {
    let n = points.len();
    let rows = point_rows(points, grid);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| points[i].norm().total_cmp(&points[j].norm()).then(i.cmp(&j)));
    let mut in0 = vec![false; n];
    for (pos, &i) in order.iter().enumerate() {
        in0[i] = pos % 2 == 0;
    }
    let sums = |in0: &[bool]| {
        let mut l0 = vec![0.0; grid.len()];
        let mut l1 = vec![0.0; grid.len()];
        for (i, row) in rows.iter().enumerate() {
            let target = if in0[i] { &mut l0 } else { &mut l1 };
            for (t, r) in target.iter_mut().zip(row) {
                *t += r;
            }
        }
        (l0, l1)
    };
    let score = |l0: &[f64], l1: &[f64]| {
        let b = max_ratio(l0.iter().copied(), l1.iter().copied());
        (b, log_a_for(l0, l1, b))
    };
    let (mut l0, mut l1) = sums(&in0);
    let (mut b, mut log_a) = score(&l0, &l1);
    let mut count0 = in0.iter().filter(|&&x| x).count();
    for _pass in 0..10 * n {
        let mut improved = false;
        for i in 0..n {
            let leaving0 = in0[i];
            if (leaving0 && count0 == 1) || (!leaving0 && count0 == n - 1) {
                continue;
            }
            let sign = if leaving0 { -1.0 } else { 1.0 };
            let c0: Vec<f64> = l0.iter().zip(&rows[i]).map(|(x, r)| x + sign * r).collect();
            let c1: Vec<f64> = l1.iter().zip(&rows[i]).map(|(x, r)| x - sign * r).collect();
            let (nb, na) = score(&c0, &c1);
            if nb < b || (nb == b && na > log_a) {
                in0[i] = !leaving0;
                count0 = if leaving0 { count0 - 1 } else { count0 + 1 };
                (l0, l1) = sums(&in0);
                (b, log_a) = score(&l0, &l1);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    if !in0[0] {
        for x in in0.iter_mut() {
            *x = !*x;
        }
    }
    (0..n).partition(|&i| in0[i])
}

/// The decomposition associated with `δ = δ₀/2`, `δ₀` the separation constant.
pub fn corresponding_decomposition(seq: &PointSequence, resolution: usize) -> Result<Decomposition> {
    let sep = separation_constant(seq.points());
    if seq.len() < 2 || sep.is_nan() || sep <= 0.0 {
        return Err(Error::InvalidParameter(
            "corresponding decomposition needs a separated sequence of at least two points".into(),
        ));
    }
    decompose(seq, sep / 2.0, resolution)
}
