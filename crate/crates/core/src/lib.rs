//! Spectrum, eigenstates and Shannon information entropies of the
//! N-dimensional Darboux III quantum nonlinear oscillator.
//!
//! The oscillator is a smooth deformation of the isotropic harmonic
//! oscillator, controlled by a parameter `λ >= 0` tied to the (negative,
//! non-constant) curvature of the underlying space. At `λ = 0` everything
//! here reduces to the textbook harmonic oscillator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy_momentum;
pub mod entropy_position;
pub mod error;
pub mod model;
pub mod specfun;
pub mod states;
pub mod tables;
pub mod transform;

pub use error::{Error, Result};
pub use model::{ModelParams, QuantumNumbers};
pub use specfun::QuadratureSpec;
