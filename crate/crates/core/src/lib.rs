//! Numerical evaluation of the closed-form solutions of the space-time
//! fractional Schrödinger equation with a quantum Riesz–Feller space
//! derivative and a Caputo time derivative.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: complex log-gamma, principal powers, sign function.
//! - [`symbol`]: the Riesz–Feller symbol and the admissible `(α, θ)` region.
//! - [`mittag_leffler`]: the one-parameter Mittag-Leffler function.
//! - [`fox_h`]: the Fox H-function (residue series, Mellin–Barnes contour,
//!   transformation identities).
//! - [`time`], [`delta`], [`linear`]: the separated time factor and the
//!   wavefunctions for a Dirac-delta well and a linear potential.
//! - [`grid`]: inclusive `start:stop:count` grids.
//! - [`quadrature`]: independent quadrature engines and a discrete
//!   Fourier-pair checker used as ground truth for every closed form.
//! - [`solution`]: assembly of `ψ(x, t) = f(t) φ(x)`.
//! - [`verify`] and [`cli`]: the acceptance checks and the command-line
//!   front end.

pub mod cli;
mod dd;
pub mod delta;
pub mod error;
pub mod fox_h;
pub mod grid;
pub mod linear;
pub mod mittag_leffler;
pub mod numerics;
pub mod quadrature;
pub mod result;
pub mod symbol;
pub mod solution;
pub mod time;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::ComplexValue;
pub use result::{EvalResult, Method};
