//! Exact transition distributions of one-dimensional two-state quantum
//! walks, computed two independent ways, with finite checks of the
//! underlying operator algebra and numerical diagnostics for the weak limit
//! of `X_n / n`.
//!
//! - [`walk`]: direct evolution under `U(A) = P tau + Q tau^{-1}`.
//! - [`cheb`]: the same distributions from Chebyshev polynomials in Laurent
//!   form, plus the coefficient/contour convolution identity.
//! - [`algebra`]: the walk algebra on a cyclic lattice, checked as matrices.
//! - [`limit`]: the limit density, its CDF and characteristic function, and
//!   the oscillatory integrals whose limits produce it.
//! - [`harness`]: experiment configs and the CLI commands.

pub mod algebra;
pub mod cheb;
pub mod coin;
pub mod convergence;
pub mod distribution;
pub mod error;
pub mod exec;
pub mod harness;
pub mod laurent;
pub mod limit;
pub mod output;
pub mod pinned;
pub mod quad;
pub mod walk;

pub use coin::{CoinMatrix, PolarParams, Spinor};
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use exec::Exec;
pub use laurent::LaurentPoly;
pub use limit::LimitDensity;
pub use walk::WalkState;
