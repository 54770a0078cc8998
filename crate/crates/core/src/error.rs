use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {index} ({re}, {im}) is not strictly inside the unit disk (|z| must be < 1 - 1e-9)")]
    NotInterior { index: usize, re: f64, im: f64 },

    #[error("points {first} and {second} coincide (pseudohyperbolic distance {distance:e})")]
    Duplicate { first: usize, second: usize, distance: f64 },

    #[error("point sequence is empty")]
    EmptySequence,

    #[error("point sequence has {len} points, maximum is {max}")]
    TooLong { len: usize, max: usize },

    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("lengths differ: {nodes} nodes but {targets} targets")]
    LengthMismatch { nodes: usize, targets: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation point collides with zero {index} (|b(z)| = {modulus:e})")]
    ZeroCollision { index: usize, modulus: f64 },

    #[error("degenerate sequence: |B_{index}(lambda_{index})| = {value:e} is below 1e-12")]
    DegenerateSequence { index: usize, value: f64 },

    #[error("norm bracket failure: upper bound {upper} is not feasible (near-coincident nodes?)")]
    BracketFailure { upper: f64 },

    #[error("norm {norm} is not feasible for this interpolation problem")]
    Infeasible { norm: f64 },

    #[error("Schur recursion broke down at step {step}: parameter modulus {modulus}; increase the norm")]
    RecursionBreakdown { step: usize, modulus: f64 },

    #[error("exclusion grid is empty for delta = {delta}; lower delta or raise the resolution")]
    EmptyGrid { delta: f64 },

    #[error("degenerate comparability fit: log-modulus {value:e} at ({re}, {im}) is too close to 0")]
    DegenerateFit { value: f64, re: f64, im: f64 },

    #[error("point 1 - {ratio}^{count} is within 1e-9 of the unit circle")]
    BoundaryGuard { ratio: f64, count: usize },

    #[error("could not place {count} points with separation {min_sep} after {attempts} rejections")]
    PackingFailure {
        count: usize,
        min_sep: f64,
        attempts: usize,
    },
}

impl Error {
    /// True for failures caused by floating-point degeneracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ZeroCollision { .. }
                | Error::DegenerateSequence { .. }
                | Error::BracketFailure { .. }
                | Error::RecursionBreakdown { .. }
                | Error::DegenerateFit { .. }
        )
    }
}
