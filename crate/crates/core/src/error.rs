//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("genus 0 unsupported: need at least 3 finite branch points, got {0}")]
    GenusZero(usize),

    #[error("invalid genus {0}: must be at least 1")]
    InvalidGenus(i64),

    #[error("zero class")]
    ZeroClass,

    #[error("separating/zero class has no basis completion")]
    SeparatingClass,

    #[error("non-primitive class (gcd {0})")]
    NonPrimitive(i64),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("branch points {0} and {1} coincide within tolerance {2:e}")]
    CoincidentBranchPoints(usize, usize, f64),

    #[error("non-finite input value")]
    NonFinite,

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e} at order {order}")]
    ConvergenceFailure {
        estimate: f64,
        tolerance: f64,
        order: usize,
    },

    #[error("degenerate period matrix: condition number {0:e}")]
    DegeneratePeriodMatrix(f64),

    #[error("a-period matrix singular: contour basis invalid")]
    SingularAPeriods,

    #[error("ill-conditioned lattice: condition number {0:e}")]
    IllConditioned(f64),

    #[error("unsupported branch configuration: {0}; supply contours manually")]
    UnsupportedBranchConfiguration(String),

    #[error("invalid finite-difference step {0:e}: must lie in (1e-7, 1e-2)")]
    InvalidStep(f64),

    #[error("sample too close to cut locus, resample (displacement {0})")]
    CutLocus(f64),

    #[error("invalid cell complex: {0}")]
    InvalidComplex(String),

    #[error("connection is not flat: face {face} has curvature {defect:e}")]
    NotFlat { face: usize, defect: f64 },

    #[error("not a cycle: boundary is nonzero at vertex {0}")]
    NotACycle(usize),

    #[error("cocycle condition violated on face {face} (sum {sum})")]
    NotACocycle { face: usize, sum: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("root finding for polynomial did not converge")]
    RootFinding,
}
