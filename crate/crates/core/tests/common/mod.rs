#![allow(dead_code)]

use carleson::harness::generate_separated_random;
use carleson::{Complex64, DiskPoint, PointSequence};
use proptest::prelude::*;

pub fn disk_value(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(move |(u, t)| Complex64::from_polar(max_r * u.sqrt(), t))
}

pub fn disk_point(max_r: f64) -> impl Strategy<Value = DiskPoint> {
    disk_value(max_r).prop_map(|z| DiskPoint::new(z).unwrap())
}

pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Random separated sequences via the seeded generator.
pub fn separated(min_len: usize, max_len: usize, min_sep: f64) -> impl Strategy<Value = PointSequence> {
    (min_len..=max_len, any::<u64>()).prop_map(move |(n, seed)| generate_separated_random(n, min_sep, seed).unwrap())
}

/// Brute-force `|∏_{k≠n} b_{λ_k}(λ_n)|` with plain complex arithmetic.
pub fn direct_excluded_product(points: &[Complex64], n: usize) -> f64 {
    let l = points[n];
    points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != n)
        .map(|(_, &p)| ((l - p) / (Complex64::new(1.0, 0.0) - p.conj() * l)).norm())
        .product()
}

pub fn direct_carleson(points: &[Complex64]) -> f64 {
    (0..points.len())
        .map(|n| direct_excluded_product(points, n))
        .fold(1.0, f64::min)
}

pub fn direct_separation(points: &[Complex64]) -> f64 {
    let mut best = 1.0f64;
    for j in 0..points.len() {
        for k in 0..points.len() {
            if j != k {
                let d = ((points[j] - points[k]) / (Complex64::new(1.0, 0.0) - points[k].conj() * points[j])).norm();
                best = best.min(d);
            }
        }
    }
    best
}
