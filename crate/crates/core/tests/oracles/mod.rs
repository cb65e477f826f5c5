//! Independent reference computations for the integration tests. Everything
//! here integrates densities directly and never calls the closed-form
//! entropy assembly.

#![allow(dead_code)]

use std::f64::consts::PI;

use darboux::specfun::{integrate, xlogx, PolyFamily, QuadratureSpec};
use darboux::states::{y_squared_3d, RadialState, State1D};
use darboux::transform::{Momentum1D, MomentumRadial, TransformSpec};
use darboux::{ModelParams, QuantumNumbers};

pub fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// `-∫ ρ ln ρ dx` over the real line.
pub fn direct_entropy_1d(params: &ModelParams, n: usize) -> f64 {
    let s = State1D::new(*params, n).unwrap();
    let half = integrate(|x| -xlogx(s.rho(x)), 0.0, f64::INFINITY, &spec()).unwrap();
    2.0 * half.value
}

/// `-∫ |Y|² ln |Y|² dΩ`: closed form for `l = 0`, a polar-angle quadrature in three dimensions.
pub fn direct_angular_entropy(dim: usize, mu_chain: &[usize]) -> f64 {
    if mu_chain[0] == 0 {
        let half = dim as f64 / 2.0;
        let area = 2.0 * PI.powf(half) / gamma(half);
        return area.ln();
    }
    assert_eq!(dim, 3, "direct angular oracle covers l > 0 only in three dimensions");
    let (l, m) = (mu_chain[0], mu_chain[1] as i64);
    let r = integrate(|t| -xlogx(y_squared_3d(l, m, t).unwrap()) * t.sin(), 0.0, PI, &spec()).unwrap();
    2.0 * PI * r.value
}

/// `-∫ ρ ln ρ d^N x` with `ρ = R² |Y|²`, split as radial plus angular parts.
pub fn direct_entropy_nd(params: &ModelParams, q: &QuantumNumbers) -> f64 {
    if params.dim == 1 {
        return direct_entropy_1d(params, q.n);
    }
    let s = RadialState::new(*params, q.n, q.l).unwrap();
    let dim = params.dim as i32;
    let radial = integrate(|r| -r.powi(dim - 1) * xlogx(s.density(r)), 0.0, f64::INFINITY, &spec()).unwrap();
    radial.value + direct_angular_entropy(params.dim, &q.mu_chain)
}

/// Lanczos Γ for positive arguments, accurate to ~1e-15.
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + G + 0.5;
    let a = C.iter().enumerate().skip(1).fold(C[0], |acc, (i, c)| acc + c / (x + i as f64));
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `∫ z^k H_n² e^{-z²} dz` by quadrature.
pub fn hermite_moment_quad(n: usize, k: i32) -> f64 {
    let h = PolyFamily::hermite(n).unwrap();
    integrate(|z| z.powi(k) * h.eval(z).powi(2) * (-z * z).exp(), f64::NEG_INFINITY, f64::INFINITY, &spec())
        .unwrap()
        .value
}

/// `∫₀^∞ z^μ L_n^α L_m^β e^{-z} dz` by quadrature.
pub fn laguerre_moment_quad(n: usize, m: usize, alpha: f64, beta: f64, mu: f64) -> f64 {
    laguerre_moment_quad_abs(n, m, alpha, beta, mu, spec().abs_tol)
}

/// As [`laguerre_moment_quad`] with an explicit absolute tolerance, for
/// integrals that vanish or nearly so.
pub fn laguerre_moment_quad_abs(n: usize, m: usize, alpha: f64, beta: f64, mu: f64, abs_tol: f64) -> f64 {
    let a = PolyFamily::laguerre(n, alpha).unwrap();
    let b = PolyFamily::laguerre(m, beta).unwrap();
    integrate(
        |z| if z == 0.0 { 0.0 } else { (mu * z.ln() - z).exp() * a.eval(z) * b.eval(z) },
        0.0,
        f64::INFINITY,
        &spec().with_tolerance(spec().rel_tol, abs_tol),
    )
    .unwrap()
    .value
}

/// `∫ γ(p) dp` over the real line.
pub fn momentum_norm_1d(params: &ModelParams, n: usize) -> f64 {
    let m = Momentum1D::new(params, n, &TransformSpec::default()).unwrap();
    2.0 * integrate(|p| m.gamma(p).unwrap(), 0.0, f64::INFINITY, &spec()).unwrap().value
}

/// `∫₀^∞ K(p)² p² dp`.
pub fn momentum_norm_3d(params: &ModelParams, n: usize, l: usize) -> f64 {
    let m = MomentumRadial::new(params, n, l, &TransformSpec::default()).unwrap();
    integrate(|p| p * p * m.k(p).unwrap().powi(2), 0.0, f64::INFINITY, &spec()).unwrap().value
}

/// Harmonic-oscillator momentum density at `ω = ħ = 1`.
pub fn flat_gamma_1d(n: usize, p: f64) -> f64 {
    let h = PolyFamily::hermite(n).unwrap().eval(p);
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    h * h * (-p * p).exp() / (PI.sqrt() * 2f64.powi(n as i32) * fact)
}
