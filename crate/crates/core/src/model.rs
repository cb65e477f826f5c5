//! Oscillator parameters, discrete spectrum, energy-dependent frequencies,
//! potentials and the scalar curvature of the underlying space.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Physical parameters of one oscillator instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Deformation parameter `λ >= 0` (inverse length squared).
    pub lambda: f64,
    pub omega: f64,
    pub hbar: f64,
    pub dim: usize,
}

impl ModelParams {
    pub fn new(lambda: f64, omega: f64, hbar: f64, dim: usize) -> Result<Self> {
        let p = Self { lambda, omega, hbar, dim };
        p.validate()?;
        Ok(p)
    }

    /// `ħ = ω = 1` in dimension `dim`.
    pub fn unit(lambda: f64, dim: usize) -> Result<Self> {
        Self::new(lambda, 1.0, 1.0, dim)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return domain(format!("lambda must be finite and >= 0, got {}", self.lambda));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return domain(format!("omega must be finite and > 0, got {}", self.omega));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return domain(format!("hbar must be finite and > 0, got {}", self.hbar));
        }
        if self.dim == 0 {
            return domain("dimension must be at least 1");
        }
        Ok(())
    }

    /// Energy as a function of the principal index. Written as `ħνΩ(ν)`,
    /// which avoids the cancellation in `-ħ²λν² + ħν√(ħ²λ²ν² + ω²)`.
    pub fn energy_at(&self, nu: PrincipalIndex) -> f64 {
        self.hbar * nu.0 * self.frequency_at(nu)
    }

    /// `Ω(ν) = √(ω² - 2λE) = √(ħ²λ²ν² + ω²) - ħλν`, evaluated without cancellation.
    pub fn frequency_at(&self, nu: PrincipalIndex) -> f64 {
        let a = self.hbar * self.lambda * nu.0;
        self.omega * self.omega / (a.hypot(self.omega) + a)
    }

    /// Bound-state threshold `ω²/(2λ)`; infinite at `λ = 0`.
    pub fn continuum_threshold(&self) -> f64 {
        if self.lambda == 0.0 {
            f64::INFINITY
        } else {
            self.omega * self.omega / (2.0 * self.lambda)
        }
    }
}

/// Labels of a bound eigenstate: radial/principal `n`, angular `l` and the
/// hyperspherical chain `l = μ₁ >= μ₂ >= ... >= μ_{N-1} = |m|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: usize,
    pub l: usize,
    pub mu_chain: Vec<usize>,
}

impl QuantumNumbers {
    /// A one-dimensional state.
    pub fn one_dim(n: usize) -> Self {
        Self { n, l: 0, mu_chain: Vec::new() }
    }

    /// An N-dimensional state from its μ-chain (`l` is the first entry).
    pub fn with_chain(n: usize, mu_chain: Vec<usize>) -> Self {
        let l = mu_chain.first().copied().unwrap_or(0);
        Self { n, l, mu_chain }
    }

    /// A state with `l = 0` in dimension `dim` (any dimension, including 1).
    pub fn s_state(n: usize, dim: usize) -> Self {
        Self { n, l: 0, mu_chain: vec![0; dim.saturating_sub(1)] }
    }

    /// A three-dimensional `(n, l, m)` state; only `|m|` enters the chain.
    pub fn three_dim(n: usize, l: usize, m: i64) -> Self {
        Self { n, l, mu_chain: vec![l, m.unsigned_abs() as usize] }
    }

    /// `|m| = μ_{N-1}` (zero in one dimension).
    pub fn abs_m(&self) -> usize {
        self.mu_chain.last().copied().unwrap_or(0)
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidState(msg));
        if dim == 1 {
            if self.l != 0 || !self.mu_chain.is_empty() {
                return bad("one-dimensional states carry no angular quantum numbers".into());
            }
            return Ok(());
        }
        if self.mu_chain.len() != dim - 1 {
            return bad(format!("mu chain must have {} entries in dimension {dim}, got {}", dim - 1, self.mu_chain.len()));
        }
        if self.mu_chain[0] != self.l {
            return bad(format!("mu chain must start with l = {}, got {}", self.l, self.mu_chain[0]));
        }
        if self.mu_chain.windows(2).any(|w| w[1] > w[0]) {
            return bad(format!("mu chain must be non-increasing, got {:?}", self.mu_chain));
        }
        Ok(())
    }
}

/// Principal index `ν`: `n + 1/2` in one dimension, `2n + l + N/2` otherwise.
/// Energies depend on the quantum numbers only through `ν`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PrincipalIndex(f64);

impl PrincipalIndex {
    pub fn new(dim: usize, q: &QuantumNumbers) -> Self {
        let half_dim = dim as f64 / 2.0;
        if dim == 1 {
            Self(q.n as f64 + half_dim)
        } else {
            Self((2 * q.n + q.l) as f64 + half_dim)
        }
    }

    /// Raw value; used to probe the spectrum at arbitrary `ν`.
    pub fn from_value(nu: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return domain(format!("principal index must be positive, got {nu}"));
        }
        Ok(Self(nu))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

fn checked_index(params: &ModelParams, q: &QuantumNumbers) -> Result<PrincipalIndex> {
    params.validate()?;
    q.validate(params.dim)?;
    Ok(PrincipalIndex::new(params.dim, q))
}

/// Bound-state energy `E = -ħ²λν² + ħν√(ħ²λ²ν² + ω²)`.
pub fn energy(params: &ModelParams, q: &QuantumNumbers) -> Result<f64> {
    let nu = checked_index(params, q)?;
    Ok(params.energy_at(nu))
}

/// Energy-dependent frequency `Ω = √(ω² - 2λE)`.
pub fn frequency(params: &ModelParams, q: &QuantumNumbers) -> Result<f64> {
    let nu = checked_index(params, q)?;
    Ok(params.frequency_at(nu))
}

fn check_radius(r: f64) -> Result<()> {
    if r >= 0.0 && r.is_finite() {
        Ok(())
    } else {
        domain(format!("radius must be finite and >= 0, got {r}"))
    }
}

/// `U(r) = ω²r² / (2(1 + λr²))`.
pub fn potential(params: &ModelParams, r: f64) -> Result<f64> {
    params.validate()?;
    check_radius(r)?;
    let r2 = r * r;
    Ok(params.omega * params.omega * r2 / (2.0 * (1.0 + params.lambda * r2)))
}

/// `U_eff(r) = L²/(2r²(1 + λr²)) + U(r)`.
pub fn effective_potential(params: &ModelParams, l2: f64, r: f64) -> Result<f64> {
    if !(l2 >= 0.0) || !l2.is_finite() {
        return domain(format!("L² must be finite and >= 0, got {l2}"));
    }
    let u = potential(params, r)?;
    if l2 == 0.0 {
        return Ok(u);
    }
    if r == 0.0 {
        return domain("centrifugal term diverges at r = 0");
    }
    let r2 = r * r;
    Ok(l2 / (2.0 * r2 * (1.0 + params.lambda * r2)) + u)
}

/// Scalar curvature `R(r) = -λ(N-1)(2N + 3(N-2)λr²) / (1 + λr²)³`.
pub fn scalar_curvature(params: &ModelParams, r: f64) -> Result<f64> {
    params.validate()?;
    check_radius(r)?;
    let n = params.dim as f64;
    let lr2 = params.lambda * r * r;
    let denom = (1.0 + lr2).powi(3);
    Ok(-params.lambda * (n - 1.0) * (2.0 * n + 3.0 * (n - 2.0) * lr2) / denom)
}
