//! Position-space eigenfunctions and probability densities.
//!
//! One-dimensional states live on the whole line and are handled by
//! [`State1D`]. In `N >= 2` dimensions the wavefunction factorises into a
//! radial part ([`RadialState`]) and a hyperspherical harmonic, of which only
//! the squared modulus is exposed ([`AngularState`]).

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::model::{ModelParams, PrincipalIndex, QuantumNumbers};
use crate::specfun::{ln_factorial, ln_gamma_unchecked, PolyFamily};

/// Above this degree the polynomial factor is evaluated in log space.
const DIRECT_EVAL_MAX_DEGREE: usize = 100;

/// A one-dimensional eigenstate
/// `ψ_n(x) = c √(1 + λx²) e^{-Ωx²/2} H_n(√Ω x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct State1D {
    params: ModelParams,
    n: usize,
    omega_n: f64,
    ln_norm: f64,
    norm: f64,
    hermite: PolyFamily,
}

impl State1D {
    pub fn new(params: ModelParams, n: usize) -> Result<Self> {
        params.validate()?;
        if params.dim != 1 {
            return Err(Error::InvalidState(format!("State1D needs dim = 1, got {}", params.dim)));
        }
        let hermite = PolyFamily::hermite(n)?;
        let nu = PrincipalIndex::new(1, &QuantumNumbers::one_dim(n));
        let omega_n = params.frequency_at(nu);
        let ln_norm_sq = 0.5 * (omega_n / PI).ln()
            - n as f64 * std::f64::consts::LN_2
            - ln_factorial(n)
            - (1.0 + nu.value() * params.lambda / omega_n).ln();
        let ln_norm = 0.5 * ln_norm_sq;
        Ok(Self { params, n, omega_n, ln_norm, norm: ln_norm.exp(), hermite })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Energy-dependent frequency `Ω_n`.
    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    /// Normalisation prefactor of the wavefunction.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `λ/Ω_n`, the deformation strength in the scaled variable `z = √Ω x`.
    pub fn alpha(&self) -> f64 {
        self.params.lambda / self.omega_n
    }

    pub fn psi(&self, x: f64) -> f64 {
        let z = self.omega_n.sqrt() * x;
        let conformal = (1.0 + self.params.lambda * x * x).sqrt();
        if self.n <= DIRECT_EVAL_MAX_DEGREE {
            self.norm * self.hermite.eval(z) * conformal * (-0.5 * z * z).exp()
        } else {
            let h = self.hermite.eval_log_scaled(z);
            f64::from(h.sign) * conformal * (self.ln_norm + h.log_abs - 0.5 * z * z).exp()
        }
    }

    pub fn rho(&self, x: f64) -> f64 {
        let p = self.psi(x);
        p * p
    }
}

pub fn psi_1d(state: &State1D, x: f64) -> f64 {
    state.psi(x)
}

pub fn rho_1d(state: &State1D, x: f64) -> f64 {
    state.rho(x)
}

/// Radial factor of an N-dimensional eigenstate,
/// `R(r) = N_{n,l} √(1 + λr²) r^l e^{-Ωr²/2} L_n^{l-1+N/2}(Ωr²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    params: ModelParams,
    n: usize,
    l: usize,
    omega_nl: f64,
    ln_norm: f64,
    norm: f64,
    laguerre: PolyFamily,
}

impl RadialState {
    pub fn new(params: ModelParams, n: usize, l: usize) -> Result<Self> {
        params.validate()?;
        if params.dim < 2 {
            return Err(Error::InvalidState("radial states need dim >= 2; use State1D".into()));
        }
        let half_dim = params.dim as f64 / 2.0;
        let laguerre = PolyFamily::laguerre(n, l as f64 - 1.0 + half_dim)?;
        let nu = PrincipalIndex::new(params.dim, &QuantumNumbers { n, l, mu_chain: Vec::new() });
        let omega_nl = params.frequency_at(nu);
        let ln_norm_sq = std::f64::consts::LN_2 + ln_factorial(n) + (l as f64 + half_dim) * omega_nl.ln()
            - ln_gamma_unchecked(n as f64 + l as f64 + half_dim)
            - (1.0 + nu.value() * params.lambda / omega_nl).ln();
        let ln_norm = 0.5 * ln_norm_sq;
        Ok(Self { params, n, l, omega_nl, ln_norm, norm: ln_norm.exp(), laguerre })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn omega_nl(&self) -> f64 {
        self.omega_nl
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn alpha(&self) -> f64 {
        self.params.lambda / self.omega_nl
    }

    /// Laguerre parameter `l - 1 + N/2`.
    pub fn laguerre_alpha(&self) -> f64 {
        self.l as f64 - 1.0 + self.params.dim as f64 / 2.0
    }

    pub fn radial(&self, r: f64) -> f64 {
        let z = self.omega_nl * r * r;
        let conformal = (1.0 + self.params.lambda * r * r).sqrt();
        if self.n <= DIRECT_EVAL_MAX_DEGREE && self.l <= DIRECT_EVAL_MAX_DEGREE {
            self.norm * self.laguerre.eval(z) * conformal * r.powi(self.l as i32) * (-0.5 * z).exp()
        } else {
            if r == 0.0 {
                return if self.l == 0 { self.norm * self.laguerre.eval(0.0) * conformal } else { 0.0 };
            }
            let p = self.laguerre.eval_log_scaled(z);
            let ln = self.ln_norm + p.log_abs + self.l as f64 * r.ln() - 0.5 * z;
            f64::from(p.sign) * conformal * ln.exp()
        }
    }

    /// `R(r)²`.
    pub fn density(&self, r: f64) -> f64 {
        let v = self.radial(r);
        v * v
    }

    /// Probability density in `r`: `r^{N-1} R(r)²`.
    pub fn radial_probability(&self, r: f64) -> f64 {
        r.powi(self.params.dim as i32 - 1) * self.density(r)
    }
}

pub fn radial_r(state: &RadialState, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return domain(format!("radius must be >= 0, got {r}"));
    }
    Ok(state.radial(r))
}

fn validate_chain(dim: usize, mu_chain: &[usize]) -> Result<()> {
    if dim < 2 {
        return domain("hyperspherical harmonics need dim >= 2");
    }
    QuantumNumbers::with_chain(0, mu_chain.to_vec())
        .validate(dim)
        .map_err(|e| Error::Domain(e.to_string()))
}

/// `M²_{l,μ}`, the squared normalisation of the hyperspherical harmonic,
/// evaluated in log space.
pub fn angular_norm_sq(dim: usize, mu_chain: &[usize]) -> Result<f64> {
    validate_chain(dim, mu_chain)?;
    let nd = dim as f64;
    let mut ln = -(2.0 * PI).ln();
    for k in 1..=dim.saturating_sub(2) {
        let kf = k as f64;
        let mu_k = mu_chain[k - 1];
        let mu_next = mu_chain[k];
        let (mk, mn) = (mu_k as f64, mu_next as f64);
        ln += ln_gamma_unchecked((nd - kf + 1.0) / 2.0 + mn) + ln_factorial(mu_k - mu_next)
            + ((nd - kf - 1.0) / 2.0 + mk).ln()
            + ln_factorial(dim - k + 2 * mu_next - 2)
            - 0.5 * PI.ln()
            - ln_gamma_unchecked((nd - kf) / 2.0 + mn)
            - ((nd - kf - 1.0) / 2.0 + mn).ln()
            - ln_factorial(dim - k + mu_k + mu_next - 2);
    }
    Ok(ln.exp())
}

/// `|Y_{l,μ}|²` on the unit sphere `S^{N-1}` (independent of the last angle).
#[derive(Debug, Clone, PartialEq)]
pub struct AngularState {
    dim: usize,
    mu_chain: Vec<usize>,
    norm_sq: f64,
    factors: Vec<(PolyFamily, i32)>,
}

impl AngularState {
    pub fn new(dim: usize, mu_chain: &[usize]) -> Result<Self> {
        let norm_sq = angular_norm_sq(dim, mu_chain)?;
        let factors = (1..=dim - 2)
            .map(|k| {
                let alpha = (dim - k - 1) as f64 / 2.0 + mu_chain[k] as f64;
                let family = PolyFamily::gegenbauer(mu_chain[k - 1] - mu_chain[k], alpha)?;
                Ok((family, 2 * mu_chain[k] as i32))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, mu_chain: mu_chain.to_vec(), norm_sq, factors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu_chain(&self) -> &[usize] {
        &self.mu_chain
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// `|Y|²` at polar angles `θ_1 .. θ_{N-2}` (each in `[0, π]`).
    pub fn density(&self, thetas: &[f64]) -> f64 {
        debug_assert_eq!(thetas.len(), self.dim - 2);
        self.factors.iter().zip(thetas).fold(self.norm_sq, |acc, ((family, sin_pow), &theta)| {
            let (s, c) = theta.sin_cos();
            let g = family.eval(c);
            acc * g * g * s.powi(*sin_pow)
        })
    }
}

/// `|Y_{lm}(θ, φ)|²` for `N = 3`; negative `m` is replaced by `|m|`.
pub fn y_squared_3d(l: usize, m: i64, theta: f64) -> Result<f64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return domain(format!("|m| = {am} exceeds l = {l}"));
    }
    Ok(AngularState::new(3, &[l, am])?.density(&[theta]))
}
