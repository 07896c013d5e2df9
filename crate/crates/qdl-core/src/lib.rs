//! Numerical laboratory for the 1-level density of low-lying zeros of
//! quadratic Dirichlet L-functions.
//!
//! The family under study is L(s, χ_{8d}) with d odd, squarefree and of either
//! sign, weighted by an even Schwartz function w(d/X). Three routes to the
//! 1-level density are implemented and cross-checked:
//!
//! - [`empirical`]: the zero-sum functional evaluated from actual zeros on the
//!   critical line,
//! - [`ratios`]: the ratios-conjecture prediction integral,
//! - [`expansion`]: the explicit log-power expansion (main term, weight-log
//!   term, digamma integral, prime sum and the transition term J(X)).
//!
//! Supporting kernels live in [`arith`] (sieves, Möbius, Kronecker symbol) and
//! [`special`] (ζ, digamma, Γ ratios, quadrature and transform machinery);
//! test-function families are in [`testfn`].

pub mod arith;
pub mod empirical;
pub mod error;
pub mod expansion;
pub mod par;
pub mod ratios;
pub mod report;
pub mod special;
pub mod testfn;
pub mod zeros;

pub use error::{Error, Result};
pub use report::{DensityReport, Method};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
