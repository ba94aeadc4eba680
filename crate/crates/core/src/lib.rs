//! Jacobians of hyperelliptic curves and the U(1) Goldman flows on them.
//!
//! The pieces, bottom-up:
//!
//! * [`homology`]: exact symplectic linear algebra on H₁(Σ, ℤ);
//! * [`periods`]: period matrices of y² = f(x) by Gauss–Chebyshev quadrature;
//! * [`jacobian`]: the torus ℂ^g/Λ and its z, v and holonomy charts;
//! * [`flows`]: the Goldman flow in the holonomy and lattice pictures, with
//!   numerical holomorphy checks;
//! * [`gauge`]: flat U(1) connections as cochains on a cell complex, and the
//!   flow as addition of a crossing cocycle;
//! * [`verify`] and [`report`]: the self-check suite behind `jacflow verify`.

pub mod cli;
pub mod error;
pub mod flows;
pub mod gauge;
pub mod homology;
pub mod jacobian;
pub mod periods;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
