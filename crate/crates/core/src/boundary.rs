//! Sup-norm estimation on the unit circle.
//!
//! By the maximum-modulus principle the sup of a function analytic on a
//! neighbourhood of the closed disk is attained on the circle. The estimate
//! is a lower bound: an equispaced grid, plus extra samples clustered near
//! the boundary projections of supplied hint points, refined by golden-section
//! search around the best local maxima.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MIN_GRID: usize = 256;

/// Samples per hint point, equispaced in harmonic measure seen from the hint.
const HINT_SAMPLES: usize = 64;

/// Number of local maxima refined by golden-section search.
const REFINED_PEAKS: usize = 4;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

pub fn boundary_sup<F>(f: F, grid: usize, hints: &[Complex64]) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if grid < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "boundary grid must have at least {MIN_GRID} points, got {grid}"
        )));
    }
    let modulus = |theta: f64| f(Complex64::from_polar(1.0, theta)).norm();

    let mut thetas: Vec<f64> = (0..grid).map(|k| TAU * k as f64 / grid as f64).collect();
    for &h in hints {
        if h.norm() < 1e-3 {
            continue;
        }
        for j in 0..HINT_SAMPLES {
            let u = Complex64::from_polar(1.0, TAU * j as f64 / HINT_SAMPLES as f64);
            let zeta = (u + h) / (Complex64::new(1.0, 0.0) + h.conj() * u);
            thetas.push(zeta.arg().rem_euclid(TAU));
        }
    }
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();

    let values: Vec<f64> = thetas.iter().map(|&t| modulus(t)).collect();
    let m = thetas.len();
    let mut best = values.iter().copied().fold(0.0, f64::max);

    // local maxima in circular order, strongest first
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&i| {
            let prev = values[(i + m - 1) % m];
            let next = values[(i + 1) % m];
            values[i] >= prev && values[i] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(REFINED_PEAKS);

    let abs_tol = TAU / (grid as f64 * 64.0);
    for i in peaks {
        let mut lo = thetas[(i + m - 1) % m];
        let mut hi = thetas[(i + 1) % m];
        if lo >= thetas[i] {
            lo -= TAU;
        }
        if hi <= thetas[i] {
            hi += TAU;
        }
        let tol = abs_tol.min((hi - lo) / 64.0);
        best = best.max(golden_max(&modulus, lo, hi, tol));
    }
    Ok(best)
}

fn golden_max<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let mut best = f1.max(f2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = g(x1);
            best = best.max(f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = g(x2);
            best = best.max(f2);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_linear() {
        let one = boundary_sup(|_| Complex64::new(1.0, 0.0), 256, &[]).unwrap();
        assert_eq!(one, 1.0);
        let two_z = boundary_sup(|z| z * 2.0, 512, &[]).unwrap();
        assert!((two_z - 2.0).abs() < 1e-9);
    }

    #[test]
    fn refines_off_grid_peak() {
        // |1 + 0.9 z e^{-i t0}| peaks at z = e^{i t0}, which is off-grid.
        let t0 = 0.123_456_7;
        let rot = Complex64::from_polar(1.0, -t0);
        let sup = boundary_sup(|z| Complex64::new(1.0, 0.0) + z * rot * 0.9, 256, &[]).unwrap();
        assert!((sup - 1.9).abs() < 1e-10, "{sup}");
    }

    #[test]
    fn hints_catch_narrow_peaks() {
        // 1/(1 - a z) with a close to 1 has a peak of width ~(1 - a) at z = 1
        // shifted to an off-grid angle; sup is 1/(1 - a).
        let a = 1.0 - 1e-5;
        let shift = Complex64::from_polar(1.0, 0.001);
        let hint = shift * a;
        let f = |z: Complex64| Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - hint.conj() * z);
        let sup = boundary_sup(f, 256, &[hint]).unwrap();
        assert!((sup * (1.0 - a) - 1.0).abs() < 1e-6, "{sup}");
    }

    #[test]
    fn rejects_small_grid() {
        assert!(boundary_sup(|z| z, 255, &[]).is_err());
    }
}
