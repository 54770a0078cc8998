//! Finite Blaschke products and the sequence invariants built from them.
//!
//! Products are accumulated with the modulus in the log domain and the phase
//! summed separately, so long products of factors close to 0 or 1 do not
//! underflow.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{log_mobius_modulus, pseudohyperbolic_distance, DiskPoint, INTERIOR_GUARD};

pub const DEFAULT_MAX_LEN: usize = 512;

/// Minimum pseudohyperbolic distance between two points of a sequence.
pub const DISTINCT_EPS: f64 = 1e-9;

/// `|B_n(λ_n)|` below this refuses the weak interpolation family.
pub const DEGENERACY_EPS: f64 = 1e-12;

const COLLISION_EPS: f64 = 1e-300;

/// A finite ordered set of distinct points of the open unit disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSequence {
    points: Vec<DiskPoint>,
    label: Option<String>,
}

impl PointSequence {
    pub fn new(points: Vec<DiskPoint>, label: Option<String>) -> Result<Self> {
        Self::with_max_len(points, label, DEFAULT_MAX_LEN)
    }

    pub fn with_max_len(points: Vec<DiskPoint>, label: Option<String>, max_len: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySequence);
        }
        if points.len() > max_len {
            return Err(Error::TooLong {
                len: points.len(),
                max: max_len,
            });
        }
        for j in 0..points.len() {
            for k in 0..j {
                let d = pseudohyperbolic_distance(points[j].value(), points[k].value());
                if d <= DISTINCT_EPS {
                    return Err(Error::Duplicate {
                        first: k,
                        second: j,
                        distance: d,
                    });
                }
            }
        }
        Ok(PointSequence { points, label })
    }

    /// Validates raw complex values, reporting the offending index on failure.
    pub fn from_complex(values: &[Complex64], label: Option<String>) -> Result<Self> {
        let points = values
            .iter()
            .enumerate()
            .map(|(index, &v)| {
                DiskPoint::new(v).map_err(|_| Error::NotInterior {
                    index,
                    re: v.re,
                    im: v.im,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, label)
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value()).collect()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<DiskPoint> {
        self.points.get(index).copied().ok_or(Error::IndexOutOfRange {
            index,
            len: self.points.len(),
        })
    }

    /// The sub-sequence at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Vec<DiskPoint>> {
        indices.iter().map(|&i| self.get(i)).collect()
    }
}

/// Evaluates `B(z) = ∏ b_λ(z)`. Returns exactly zero when `z` hits a zero.
pub fn blaschke_eval(points: &[DiskPoint], z: Complex64) -> Complex64 {
    let mut log_mod = 0.0;
    let mut phase = 0.0;
    for p in points {
        let l = p.value();
        let num = z - l;
        if num.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let lm = log_mobius_modulus(l, z);
        if lm < COLLISION_EPS.ln() {
            return Complex64::new(0.0, 0.0);
        }
        log_mod += lm;
        let den = Complex64::new(1.0, 0.0) - l.conj() * z;
        phase += num.arg() - den.arg();
        if l.norm() >= 1e-14 {
            phase -= l.arg();
        }
    }
    Complex64::from_polar(log_mod.exp(), phase)
}

/// `log |B(z)| = ∑ log |b_λ(z)|`.
pub fn blaschke_log_modulus(points: &[DiskPoint], z: Complex64) -> Result<f64> {
    let mut total = 0.0;
    for (index, p) in points.iter().enumerate() {
        let d = pseudohyperbolic_distance(z, p.value());
        if d < COLLISION_EPS {
            return Err(Error::ZeroCollision { index, modulus: d });
        }
        total += log_mobius_modulus(p.value(), z);
    }
    Ok(total)
}

/// `B_n(z)`: the product over every point except index `n`.
pub fn blaschke_eval_excluding(points: &[DiskPoint], n: usize, z: Complex64) -> Result<Complex64> {
    if n >= points.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: points.len(),
        });
    }
    let rest: Vec<DiskPoint> = points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != n)
        .map(|(_, &p)| p)
        .collect();
    Ok(blaschke_eval(&rest, z))
}

/// `log |B_n(λ_n)|` for every n.
pub fn excluded_log_moduli(points: &[DiskPoint]) -> Vec<f64> {
    let n = points.len();
    let mut logs = vec![0.0; n];
    for j in 0..n {
        for k in 0..j {
            let v = log_mobius_modulus(points[k].value(), points[j].value());
            logs[j] += v;
            logs[k] += v;
        }
    }
    logs
}

/// `inf_n |B_n(λ_n)|`; 1 for a singleton (empty product).
pub fn carleson_constant(points: &[DiskPoint]) -> f64 {
    excluded_log_moduli(points)
        .into_iter()
        .map(f64::exp)
        .fold(1.0, f64::min)
}

/// Minimum pairwise pseudohyperbolic distance; 1 for a singleton, where
/// separation is vacuous.
pub fn separation_constant(points: &[DiskPoint]) -> f64 {
    let mut best = 1.0f64;
    for j in 0..points.len() {
        for k in 0..j {
            best = best.min(pseudohyperbolic_distance(points[j].value(), points[k].value()));
        }
    }
    best
}

pub fn blaschke_sum(points: &[DiskPoint]) -> f64 {
    points.iter().map(|p| 1.0 - p.norm()).sum()
}

/// `φ_n = B_n / B_n(λ_n)`: one at `λ_n`, zero at every other point.
#[derive(Debug, Clone)]
pub struct WeakFunction {
    pub index: usize,
    /// `1/|B_n(λ_n)|`, which is also the sup-norm since `|B_n| = 1` on the circle.
    pub norm: f64,
    normalizer: Complex64,
    others: Vec<DiskPoint>,
}

impl WeakFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        blaschke_eval(&self.others, z) / self.normalizer
    }
}

pub fn weak_interpolation_family(points: &[DiskPoint]) -> Result<Vec<WeakFunction>> {
    (0..points.len())
        .map(|n| {
            let others: Vec<DiskPoint> = points
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(_, &p)| p)
                .collect();
            let normalizer = blaschke_eval(&others, points[n].value());
            let value = normalizer.norm();
            if value < DEGENERACY_EPS {
                return Err(Error::DegenerateSequence { index: n, value });
            }
            Ok(WeakFunction {
                index: n,
                norm: 1.0 / value,
                normalizer,
                others,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointValue {
    pub index: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub length: usize,
    pub blaschke_sum: f64,
    pub separation_constant: f64,
    pub carleson_constant: f64,
    pub per_point: Vec<PointValue>,
}

pub fn analyze(seq: &PointSequence) -> AnalysisReport {
    let points = seq.points();
    let per_point: Vec<PointValue> = excluded_log_moduli(points)
        .into_iter()
        .enumerate()
        .map(|(index, l)| PointValue { index, value: l.exp() })
        .collect();
    let carleson = per_point.iter().map(|p| p.value).fold(1.0, f64::min);
    AnalysisReport {
        length: points.len(),
        blaschke_sum: blaschke_sum(points),
        separation_constant: separation_constant(points),
        carleson_constant: carleson,
        per_point,
    }
}

/// Guard used by generators: `1 - |λ|` must exceed the interior band.
pub(crate) fn within_guard(r: f64) -> bool {
    r < 1.0 - INTERIOR_GUARD
}
