//! Conformal geometry of the unit disk: normalized Möbius transforms,
//! pseudohyperbolic distance and pseudohyperbolic disks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points must satisfy `|z| < 1 - INTERIOR_GUARD`.
pub const INTERIOR_GUARD: f64 = 1e-9;

/// Below this modulus the normalization `|λ|/λ` is replaced by 1.
const ORIGIN_EPS: f64 = 1e-14;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && value.norm() < 1.0 - INTERIOR_GUARD {
            Ok(DiskPoint(value))
        } else {
            Err(Error::NotInterior {
                index: 0,
                re: value.re,
                im: value.im,
            })
        }
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.0.norm()
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = Error;

    fn try_from(value: Complex64) -> Result<Self> {
        DiskPoint::new(value)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

/// The normalized Möbius transform `b_λ(z) = (|λ|/λ)(z - λ)/(1 - conj(λ) z)`,
/// with `b_0(z) = z`.
#[inline]
pub fn mobius_transform(lambda: DiskPoint, z: Complex64) -> Complex64 {
    let l = lambda.0;
    let r = l.norm();
    if r < ORIGIN_EPS {
        return z;
    }
    let phase = Complex64::new(l.re / r, -l.im / r);
    phase * (z - l) / (Complex64::new(1.0, 0.0) - l.conj() * z)
}

/// `|b_w(z)|`, computed without the unimodular phase factor.
#[inline]
pub fn pseudohyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm();
    if num == 0.0 {
        return 0.0;
    }
    num / (Complex64::new(1.0, 0.0) - w.conj() * z).norm()
}

/// `log |b_λ(z)|`, accurate both near the zero and near the unit circle.
///
/// Uses `1 - |b_λ(z)|² = (1 - |z|²)(1 - |λ|²) / |1 - conj(λ) z|²` when the
/// modulus is close to one.
#[inline]
pub fn log_mobius_modulus(lambda: Complex64, z: Complex64) -> f64 {
    let denom = (Complex64::new(1.0, 0.0) - lambda.conj() * z).norm_sqr();
    let rz = z.norm();
    let rl = lambda.norm();
    let q = (1.0 - rz) * (1.0 + rz) * (1.0 - rl) * (1.0 + rl) / denom;
    if q < 0.5 {
        0.5 * (-q).ln_1p()
    } else {
        0.5 * ((z - lambda).norm_sqr() / denom).ln()
    }
}

/// The pseudohyperbolic disk `D(λ, δ) = {z : |b_λ(z)| < δ}` together with
/// its Euclidean description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PseudoDisk {
    pub center_param: DiskPoint,
    pub radius_param: f64,
    pub euclid_center: Complex64,
    pub euclid_radius: f64,
}

impl PseudoDisk {
    pub fn contains(&self, z: Complex64) -> bool {
        pseudohyperbolic_distance(z, self.center_param.value()) < self.radius_param
    }

    /// Largest deviation of `|b_λ(z)|` from the radius parameter over `m`
    /// points of the Euclidean circle.
    pub fn boundary_residual(&self, m: usize) -> f64 {
        self.circle_points(m)
            .into_iter()
            .map(|z| (pseudohyperbolic_distance(z, self.center_param.value()) - self.radius_param).abs())
            .fold(0.0, f64::max)
    }

    fn circle_points(&self, m: usize) -> Vec<Complex64> {
        (0..m)
            .map(|k| {
                let theta = TAU * k as f64 / m as f64;
                self.euclid_center + Complex64::from_polar(self.euclid_radius, theta)
            })
            .collect()
    }
}

pub fn pseudo_disk_euclidean(lambda: DiskPoint, delta: f64) -> Result<PseudoDisk> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "pseudohyperbolic radius must lie in (0, 1), got {delta}"
        )));
    }
    let l = lambda.value();
    let r2 = l.norm_sqr();
    let d2 = delta * delta;
    let denom = 1.0 - d2 * r2;
    let disk = PseudoDisk {
        center_param: lambda,
        radius_param: delta,
        euclid_center: l * ((1.0 - d2) / denom),
        euclid_radius: delta * (1.0 - r2) / denom,
    };
    // Rounding in 1 - conj(λ)z grows like 1/(1 - |λ|²) near the circle.
    debug_assert!(disk.boundary_residual(16) <= 1e-12 / (1.0 - r2).max(1e-9) + 1e-12);
    Ok(disk)
}

/// `m` points equally spaced in Euclidean angle on `∂D(λ, δ)`, starting on
/// the ray through the Euclidean center's positive real direction.
pub fn sample_pseudo_circle(lambda: DiskPoint, delta: f64, m: usize) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    Ok(pseudo_disk_euclidean(lambda, delta)?.circle_points(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_transform(p(0.5, 0.0), c(0.5, 0.0)), c(0.0, 0.0));
        assert_eq!(mobius_transform(DiskPoint::origin(), c(0.3, 0.4)), c(0.3, 0.4));
        // (z - λ)/(1 - λ z) at λ = 0.5, z = -0.5: -1 / 1.25
        let v = mobius_transform(p(0.5, 0.0), c(-0.5, 0.0));
        assert!((v - c(-0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mobius_sends_boundary_to_boundary() {
        let l = p(0.3, -0.6);
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, 0.1 * k as f64);
            assert!((mobius_transform(l, z).norm() - 1.0).abs() < 1e-12);
        }
        assert!(mobius_transform(l, c(0.2, 0.2)).norm() < 1.0);
    }

    #[test]
    fn distance_examples() {
        let z = c(0.3, -0.2);
        assert!((pseudohyperbolic_distance(c(0.0, 0.0), z) - z.norm()).abs() < 1e-16);
        assert!((pseudohyperbolic_distance(c(0.5, 0.0), c(-0.5, 0.0)) - 0.8).abs() < 1e-15);
        assert_eq!(pseudohyperbolic_distance(z, z), 0.0);
    }

    #[test]
    fn distance_matches_mobius_modulus() {
        let w = p(-0.4, 0.7);
        let z = c(0.1, 0.25);
        let a = pseudohyperbolic_distance(z, w.value());
        let b = mobius_transform(w, z).norm();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn log_modulus_matches_direct() {
        let cases = [
            (c(0.5, 0.0), c(0.25, 0.0)),
            (c(0.0, 0.0), c(0.3, 0.0)),
            (c(0.9, 0.1), c(-0.8, 0.3)),
            (c(0.2, 0.2), c(0.2000001, 0.2)),
        ];
        for (l, z) in cases {
            let direct = pseudohyperbolic_distance(z, l).ln();
            let stable = log_mobius_modulus(l, z);
            assert!((direct - stable).abs() <= 1e-12 * direct.abs().max(1e-3), "{l} {z}");
        }
        assert_eq!(log_mobius_modulus(c(0.5, 0.0), Complex64::from_polar(1.0, 0.7)), 0.0);
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::from_re_im(1.0, 0.0).is_err());
        assert!(DiskPoint::from_re_im(1.0 - 5e-10, 0.0).is_err());
        assert!(DiskPoint::from_re_im(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::from_re_im(0.999_999, 0.0).is_ok());
    }

    #[test]
    fn pseudo_disk_examples() {
        let d = pseudo_disk_euclidean(DiskPoint::origin(), 0.3).unwrap();
        assert!(d.euclid_center.norm() < 1e-16);
        assert!((d.euclid_radius - 0.3).abs() < 1e-16);

        let d = pseudo_disk_euclidean(p(0.5, 0.0), 0.5).unwrap();
        assert!((d.euclid_center - c(0.4, 0.0)).norm() < 1e-15);
        assert!((d.euclid_radius - 0.4).abs() < 1e-15);
        // independent check on the real-axis extremes
        assert!((mobius_transform(p(0.5, 0.0), c(0.8, 0.0)).norm() - 0.5).abs() < 1e-15);
        assert!((mobius_transform(p(0.5, 0.0), c(0.0, 0.0)).norm() - 0.5).abs() < 1e-15);
        assert!((pseudohyperbolic_distance(c(0.4, 0.4), c(0.5, 0.0)) - 0.5).abs() < 1e-12);

        assert!(pseudo_disk_euclidean(DiskPoint::origin(), 0.0).is_err());
        assert!(pseudo_disk_euclidean(DiskPoint::origin(), 1.0).is_err());
    }

    #[test]
    fn pseudo_circle_samples() {
        let pts = sample_pseudo_circle(DiskPoint::origin(), 0.3, 4).unwrap();
        let expected = [c(0.3, 0.0), c(0.0, 0.3), c(-0.3, 0.0), c(0.0, -0.3)];
        for (a, b) in pts.iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }

        let pts = sample_pseudo_circle(p(0.5, 0.0), 0.5, 2).unwrap();
        assert!((pts[0] - c(0.8, 0.0)).norm() < 1e-15);
        assert!(pts[1].norm() < 1e-15);

        let l = p(-0.3, 0.55);
        for z in sample_pseudo_circle(l, 0.37, 33).unwrap() {
            assert!((pseudohyperbolic_distance(z, l.value()) - 0.37).abs() < 1e-10);
        }
    }

    #[test]
    fn pseudo_disk_membership() {
        let d = pseudo_disk_euclidean(p(0.6, 0.2), 0.4).unwrap();
        assert!(d.contains(c(0.6, 0.2)));
        assert!(!d.contains(c(-0.5, 0.0)));
    }
}
