//! Function theory of finite point sets in the unit disk.
//!
//! Blaschke products and the Carleson and separation constants, minimal-norm
//! bounded analytic interpolation (Pick matrix bisection plus Schur
//! recursion), δ-Hoffman decompositions with fitted comparability constants,
//! and a harness that checks, point by point, that one zero/one interpolant
//! on a Hoffman decomposition forces the Carleson condition.

pub mod blaschke;
pub mod boundary;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod hoffman;
pub mod pick;

pub use blaschke::{analyze, AnalysisReport, PointSequence};
pub use error::{Error, Result};
pub use geometry::DiskPoint;
pub use harness::{ChainConfig, ChainReport, CounterexampleSpec};
pub use hoffman::Decomposition;
pub use pick::{PickOptions, PickProblem, PickSolution, RationalInterpolant};

pub use num_complex::Complex64;
