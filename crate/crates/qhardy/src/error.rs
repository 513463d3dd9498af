//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the numerical operations.
///
/// Variant names are stable and appear verbatim in rendered messages so
/// that callers (in particular the CLI) can surface them unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Constant coefficient vanishes where an inverse through the origin is required.
    #[error("ZeroAtOrigin: constant coefficient is zero (|a_0| < {tol:e})")]
    ZeroAtOrigin { tol: f64 },

    /// Evaluation hit a zero where a multiplicative inverse is needed.
    #[error("ZeroDenominator: series evaluates to zero at the requested point")]
    ZeroDenominator,

    /// Splitting frame (I, J) is not orthogonal.
    #[error("FrameNotOrthogonal: |<I,J>| = {dot:e} exceeds 1e-10")]
    FrameNotOrthogonal { dot: f64 },

    /// Quadrature node count below the trigonometric exactness bound.
    #[error("InsufficientNodes: need at least {required} angle nodes, got {got}")]
    InsufficientNodes { required: usize, got: usize },

    /// A point that must lie in the open unit ball does not.
    #[error("NotInBall: |omega| = {modulus} is not < 1")]
    NotInBall { modulus: f64 },

    /// A candidate sphere from the symmetrization carries no zero of the series.
    #[error("InconsistentSphere: sphere {x} + {y}*S from the symmetrization yields no zero")]
    InconsistentSphere { x: f64, y: f64 },

    /// Gram matrix is numerically singular (e.g. the series is identically zero).
    #[error("SingularGram: Gram system is singular or numerically rank-deficient")]
    SingularGram,

    /// Degree-1 approximant is constant, so it has no zero.
    #[error("NoZero: degree-1 approximant is constant (|<f, f*q>| < 1e-14)")]
    NoZero,

    /// Operation requires real (slice preserving) coefficients.
    #[error("NotSlicePreserving: coefficient {index} has imaginary residue {residue:e}")]
    NotSlicePreserving { index: usize, residue: f64 },

    /// Too many boundary nodes fell on zeros of the integrand's modulus.
    #[error("BoundaryZeroLog: {skipped} of {total} boundary nodes had modulus below 1e-13")]
    BoundaryZeroLog { skipped: usize, total: usize },

    /// Interior evaluation point is a zero of the series.
    #[error("ZeroValue: |f(omega)| < 1e-13 at the requested interior point")]
    ZeroValue,

    /// The identically-zero series was passed where a nonzero one is required.
    #[error("ZeroPolynomial: series is identically zero")]
    ZeroPolynomial,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
