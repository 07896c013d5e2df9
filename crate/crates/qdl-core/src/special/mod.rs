//! Special functions (ζ, ζ′/ζ, Γ ratios, digamma) and the numeric
//! Fourier/Mellin transform engine used by the weight-function algebra.

pub mod filon;
pub mod gamma;
pub mod quadrature;
pub mod transform;
pub mod zeta;

pub use gamma::{digamma, gamma_ratio, ln_gamma, upper_gamma_ratio};
pub use quadrature::{Envelope, QuadResult};
pub use transform::{fourier_at, mellin_at, mellin_continued_at, ComplexLineGrid, TransformGrid};
pub use zeta::{prime_zeta, prime_zeta_deriv, zeta, zeta_and_deriv, zeta_logderiv};
