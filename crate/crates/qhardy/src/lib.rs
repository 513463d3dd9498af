//! Numerics for the Hardy space of slice regular functions on the
//! quaternionic unit ball.
//!
//! The building blocks are truncated power series `Σ q^n a_n` with
//! quaternion coefficients ([`series::QSeries`]) and the ⋆-algebra on them:
//! non-commutative convolution products, conjugates, symmetrizations and
//! ⋆-inverses. On top of that the crate provides
//!
//! * the H² inner product in coefficient and slice-quadrature form, norms,
//!   and deterministic boundary grids ([`hardy`]),
//! * the Splitting Lemma decomposition `f = F + G·J` ([`splitting`]),
//! * Möbius/Blaschke constructors, three inner-function tests, and
//!   classification of zero sets into points and spheres ([`inner`]),
//! * Gram systems, optimal approximants `p_n` of `f^{-⋆}`, orthonormal
//!   bases, cyclicity diagnostics, and outer-function tests ([`outer`]).
//!
//! Everything is a pure function over immutable values. Grid scans,
//! boundary quadrature, large convolutions and per-degree reports run
//! data-parallel under the `parallel` feature (enabled by default, backed
//! by rayon) and fall back to sequential loops without it; results are
//! bitwise identical either way because reductions always use the same
//! pairwise tree. The `*_seq` entry points expose the sequential kernels
//! directly for comparison benchmarks.

pub mod error;
pub mod hardy;
pub mod inner;
pub mod outer;
pub mod quat;
pub mod series;
pub mod splitting;

mod linalg;
mod par;

pub use error::{Error, Result};
pub use quat::{Quaternion, UnitImaginary};
pub use series::{LaurentCoeffs, QSeries};
