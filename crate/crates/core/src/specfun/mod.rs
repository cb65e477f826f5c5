//! Special functions and the quadrature engine shared by every other module.

mod bessel;
mod gamma;
mod legendre;
mod poly;
mod quad;

pub use bessel::spherical_bessel;
pub use gamma::{ln_factorial, ln_gamma};
pub use legendre::GaussLegendre;
pub use poly::{eval_poly, eval_poly_log_scaled, LogScaled, PolyFamily, PolyKind, MAX_DEGREE};
pub use quad::{integrate, xlogx, Integral, QuadratureSpec};

pub(crate) use bessel::spherical_bessel_unchecked;
pub(crate) use gamma::ln_gamma_unchecked;
