//! Shannon entropy of the position-space density.
//!
//! The entropy is assembled from closed-form pieces (log prefactors and
//! polynomial moments) plus a handful of one-dimensional integrals that have
//! no closed form: `𝓘^α` in one dimension, and the `J` integrals over the
//! Laguerre weight in `N` dimensions. Entropies are in nats.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{ModelParams, PrincipalIndex, QuantumNumbers};
use crate::specfun::{integrate, ln_factorial, ln_gamma_unchecked, xlogx, Integral, PolyFamily, QuadratureSpec};
use crate::states::{angular_norm_sq, RadialState, State1D};

/// One additive contribution to an entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

/// An entropy value with its error estimate and additive breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub entropy: f64,
    pub err_est: f64,
    pub breakdown: Vec<Term>,
}

impl EntropyReport {
    pub(crate) fn from_terms(terms: Vec<(&str, f64)>, err_est: f64) -> Self {
        let breakdown: Vec<Term> = terms.into_iter().map(|(name, value)| Term { name: name.to_string(), value }).collect();
        let entropy = breakdown.iter().map(|t| t.value).sum();
        Self { entropy, err_est, breakdown }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.breakdown.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

/// `ln(√π 2ⁿ n!)`, the log of the Hermite norm.
pub fn ln_hermite_norm(n: usize) -> f64 {
    0.5 * PI.ln() + n as f64 * std::f64::consts::LN_2 + ln_factorial(n)
}

/// `∫ z^k H_n(z)² e^{-z²} dz` over the real line, for `k ∈ {0, 2, 4}` (odd `k` gives 0).
pub fn hermite_moment(n: usize, k: u32) -> Result<f64> {
    let nf = n as f64;
    let factor = match k {
        0 => 1.0,
        2 => nf + 0.5,
        4 => 1.5 * nf * nf + 1.5 * nf + 0.75,
        k if k % 2 == 1 => return Ok(0.0),
        _ => return domain(format!("hermite_moment supports k in {{0, 2, 4}} or odd k, got {k}")),
    };
    Ok(ln_hermite_norm(n).exp() * factor)
}

/// Generalised binomial coefficient `C(x, j)` as `(sign, ln|C|)`; sign 0 for an exact zero.
fn ln_binomial(x: f64, j: usize) -> (f64, f64) {
    let mut sign = 1.0;
    let mut ln = -ln_factorial(j);
    for i in 0..j {
        let f = x - i as f64;
        if f == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln += f.abs().ln();
    }
    (sign, ln)
}

/// `∫₀^∞ z^μ L_n^α(z) L_m^β(z) e^{-z} dz` by the finite binomial sum
/// `(-1)^{n+m} Γ(μ+1) Σ_k C(μ-α, n-k) C(μ-β, m-k) C(μ+k, k)`.
pub fn laguerre_cross_moment(n: usize, m: usize, alpha: f64, beta: f64, mu: f64) -> Result<f64> {
    if !(mu > -1.0) || !(alpha > -1.0) || !(beta > -1.0) {
        return domain(format!("need mu, alpha, beta > -1, got mu={mu} alpha={alpha} beta={beta}"));
    }
    let ln_gamma_mu = ln_gamma_unchecked(mu + 1.0);
    let mut sum = 0.0;
    for k in 0..=n.min(m) {
        let (s1, l1) = ln_binomial(mu - alpha, n - k);
        let (s2, l2) = ln_binomial(mu - beta, m - k);
        let (s3, l3) = ln_binomial(mu + k as f64, k);
        let s = s1 * s2 * s3;
        if s != 0.0 {
            sum += s * (ln_gamma_mu + l1 + l2 + l3).exp();
        }
    }
    Ok(if (n + m) % 2 == 0 { sum } else { -sum })
}

/// `𝓘^α = ∫ (1 + αz²) e^{-z²} H_n² ln((1 + αz²) H_n²) dz` over the real line.
pub fn integral_i_alpha(n: usize, alpha: f64, spec: &QuadratureSpec) -> Result<Integral> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return domain(format!("alpha must be finite and >= 0, got {alpha}"));
    }
    let h = PolyFamily::hermite(n)?;
    let half = integrate(
        |z| {
            let hz = h.eval(z);
            let w = (1.0 + alpha * z * z) * hz * hz;
            (-z * z).exp() * xlogx(w)
        },
        0.0,
        f64::INFINITY,
        spec,
    )?;
    Ok(Integral { value: 2.0 * half.value, err_est: 2.0 * half.err_est })
}

fn require_dim(params: &ModelParams, ok: bool, what: &str) -> Result<()> {
    params.validate()?;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidState(format!("{what} not available in dimension {}", params.dim)))
    }
}

/// Position entropy of the one-dimensional state `n`.
pub fn entropy_position_1d(params: &ModelParams, n: usize, spec: &QuadratureSpec) -> Result<EntropyReport> {
    require_dim(params, params.dim == 1, "one-dimensional entropy")?;
    let state = State1D::new(*params, n)?;
    let omega = state.omega_n();
    let alpha = state.alpha();
    let nu = n as f64 + 0.5;
    let deform = 1.0 + nu * alpha;
    let ln_norm = ln_hermite_norm(n);
    let norm = ln_norm.exp();
    let moments = (hermite_moment(n, 2)? + alpha * hermite_moment(n, 4)?) / norm;
    let i_alpha = integral_i_alpha(n, alpha, spec)?;
    Ok(EntropyReport::from_terms(
        vec![
            ("log_frequency", -0.5 * omega.ln()),
            ("log_hermite_norm", ln_norm),
            ("log_deformation", deform.ln()),
            ("moments", moments / deform),
            ("integral_i_alpha", -i_alpha.value / (norm * deform)),
        ],
        i_alpha.err_est / (norm * deform),
    ))
}

/// The six `J` integrals over the weight `z^a e^{-z} L_n^a(z)²`, `a = l + N/2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JIntegrals {
    /// `∫ w ln(z^l)`
    pub j1: Integral,
    /// `∫ z w ln(z^l)`
    pub j1_tilde: Integral,
    /// `∫ w ln(L²)`
    pub j2: Integral,
    /// `∫ z w ln(L²)`
    pub j2_tilde: Integral,
    /// `∫ w ln(1 + αz)`
    pub j3: Integral,
    /// `∫ z w ln(1 + αz)`
    pub j3_tilde: Integral,
}

impl JIntegrals {
    pub fn compute(n: usize, l: usize, dim: usize, alpha: f64, spec: &QuadratureSpec) -> Result<Self> {
        let a = l as f64 + dim as f64 / 2.0 - 1.0;
        let lag = PolyFamily::laguerre(n, a)?;
        let weight = |z: f64| {
            if z == 0.0 {
                return if a == 0.0 { lag.eval(0.0).powi(2) } else { 0.0 };
            }
            let p = lag.eval(z);
            (a * z.ln() - z).exp() * p * p
        };
        let lf = l as f64;
        let zero = Integral { value: 0.0, err_est: 0.0 };
        let on_half_line = |f: &dyn Fn(f64) -> f64| integrate(f, 0.0, f64::INFINITY, spec);
        let (j1, j1_tilde) = if l == 0 {
            (zero, zero)
        } else {
            let log_term = |z: f64| if z > 0.0 { lf * z.ln() } else { 0.0 };
            (
                on_half_line(&|z| weight(z) * log_term(z))?,
                on_half_line(&|z| z * weight(z) * log_term(z))?,
            )
        };
        let entropy_like = |z: f64| {
            if z == 0.0 && a > 0.0 {
                return 0.0;
            }
            let p = lag.eval(z);
            let base = if z == 0.0 { 1.0 } else { (a * z.ln() - z).exp() };
            base * xlogx(p * p)
        };
        let j2 = on_half_line(&entropy_like)?;
        let j2_tilde = on_half_line(&|z| z * entropy_like(z))?;
        let (j3, j3_tilde) = if alpha == 0.0 {
            (zero, zero)
        } else {
            (
                on_half_line(&|z| weight(z) * (alpha * z).ln_1p())?,
                on_half_line(&|z| z * weight(z) * (alpha * z).ln_1p())?,
            )
        };
        Ok(Self { j1, j1_tilde, j2, j2_tilde, j3, j3_tilde })
    }

    /// `J₁ + αJ̃₁ + J₂ + αJ̃₂ + J₃ + αJ̃₃`.
    pub fn combined(&self, alpha: f64) -> Integral {
        let parts = [
            (self.j1, 1.0),
            (self.j1_tilde, alpha),
            (self.j2, 1.0),
            (self.j2_tilde, alpha),
            (self.j3, 1.0),
            (self.j3_tilde, alpha),
        ];
        parts.iter().fold(Integral { value: 0.0, err_est: 0.0 }, |acc, (j, c)| Integral {
            value: acc.value + c * j.value,
            err_est: acc.err_est + c.abs() * j.err_est,
        })
    }
}

/// Radial part of the N-dimensional position entropy, i.e. everything
/// except the angular term `-J_Y`.
pub fn entropy_position_radial(params: &ModelParams, n: usize, l: usize, spec: &QuadratureSpec) -> Result<EntropyReport> {
    require_dim(params, params.dim >= 2, "radial entropy")?;
    let state = RadialState::new(*params, n, l)?;
    let dim = params.dim;
    let half_dim = dim as f64 / 2.0;
    let omega = state.omega_nl();
    let alpha = state.alpha();
    let a = state.laguerre_alpha();
    let nu = PrincipalIndex::new(dim, &QuantumNumbers { n, l, mu_chain: Vec::new() }).value();
    let deform = 1.0 + nu * alpha;
    // n!/Γ(n + l + N/2)
    let ln_ratio = ln_factorial(n) - ln_gamma_unchecked(n as f64 + l as f64 + half_dim);
    let ratio = ln_ratio.exp();
    let m1 = laguerre_cross_moment(n, n, a, a, a + 1.0)?;
    let m2 = laguerre_cross_moment(n, n, a, a, a + 2.0)?;
    let js = JIntegrals::compute(n, l, dim, alpha, spec)?.combined(alpha);
    Ok(EntropyReport::from_terms(
        vec![
            ("log_frequency", -half_dim * omega.ln()),
            ("log_norm_ratio", -(std::f64::consts::LN_2 + ln_ratio)),
            ("log_deformation", deform.ln()),
            ("j_integrals", -ratio * js.value / deform),
            ("moments", ratio * (m1 + alpha * m2) / deform),
        ],
        ratio * js.err_est / deform,
    ))
}

/// Angular entropy `J_Y = ∫ |Y|² ln|Y|² dΩ` over `S^{N-1}`.
///
/// Supported for `l = 0` in any dimension and for every `(l, m)` in three
/// dimensions.
pub fn angular_entropy_jy(dim: usize, mu_chain: &[usize], spec: &QuadratureSpec) -> Result<f64> {
    let norm_sq = angular_norm_sq(dim, mu_chain)?;
    let l = mu_chain[0];
    if l == 0 {
        // uniform density 1/A_{N-1}, A_{N-1} = 2π^{N/2}/Γ(N/2)
        let half_dim = dim as f64 / 2.0;
        let ln_area = std::f64::consts::LN_2 + half_dim * PI.ln() - ln_gamma_unchecked(half_dim);
        return Ok(-ln_area);
    }
    if dim != 3 {
        return Err(Error::Unsupported(format!(
            "angular entropy for l > 0 is only available in three dimensions (got dim = {dim})"
        )));
    }
    let m = mu_chain[1];
    let c = PolyFamily::gegenbauer(l - m, m as f64 + 0.5)?;
    let mf = m as f64;
    // both integrands are even in z
    let jy1 = if m == 0 {
        0.0
    } else {
        2.0 * integrate(
            |z| {
                let g = c.eval(z);
                let s = 1.0 - z * z;
                if s <= 0.0 {
                    0.0
                } else {
                    g * g * s.powi(m as i32) * mf * s.ln()
                }
            },
            0.0,
            1.0,
            spec,
        )?
        .value
    };
    let jy2 = 2.0
        * integrate(
            |z| {
                let g = c.eval(z);
                (1.0 - z * z).max(0.0).powi(m as i32) * xlogx(g * g)
            },
            0.0,
            1.0,
            spec,
        )?
        .value;
    Ok(norm_sq.ln() + 2.0 * PI * norm_sq * (jy1 + jy2))
}

/// Full position entropy of an eigenstate. One-dimensional states are
/// forwarded to [`entropy_position_1d`].
pub fn entropy_position_nd(params: &ModelParams, q: &QuantumNumbers, spec: &QuadratureSpec) -> Result<EntropyReport> {
    params.validate()?;
    q.validate(params.dim)?;
    if params.dim == 1 {
        return entropy_position_1d(params, q.n, spec);
    }
    let jy = angular_entropy_jy(params.dim, &q.mu_chain, spec)?;
    let mut report = entropy_position_radial(params, q.n, q.l, spec)?;
    report.breakdown.push(Term { name: "angular".to_string(), value: -jy });
    report.entropy = report.breakdown.iter().map(|t| t.value).sum();
    Ok(report)
}
