//! Momentum-space amplitudes and densities.
//!
//! One dimension: the eigenfunctions have definite parity, so the Fourier
//! transform reduces to a cosine (even `n`) or sine (odd `n`) transform over
//! the half line. Three dimensions: the radial amplitude is the order-`l`
//! spherical Bessel transform of `R(r)`.
//!
//! Both transforms use fixed-order Gauss–Legendre panels on `(0, r*)`, where
//! `r*` is the point past which the position amplitude stays below the
//! envelope threshold. The panel count is rounded up to a power of two so
//! that the amplitude at the nodes can be tabulated once per panel count and
//! reused for every `p`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{ModelParams, QuantumNumbers};
use crate::specfun::{spherical_bessel_unchecked, GaussLegendre, QuadratureSpec};
use crate::states::{RadialState, State1D};

/// Upper limit on `p` when the automatic window is used.
pub const MAX_AUTO_P: f64 = 1e3;
const MAX_PANEL_LEVEL: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxP {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub quad: QuadratureSpec,
    /// Position amplitude below which the transform integrand is dropped.
    pub r_max_policy: f64,
    pub panel_rule_order: usize,
    pub max_p: MaxP,
}

impl Default for TransformSpec {
    fn default() -> Self {
        Self { quad: QuadratureSpec::default(), r_max_policy: 1e-18, panel_rule_order: 31, max_p: MaxP::Auto }
    }
}

impl TransformSpec {
    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        if self.panel_rule_order < 7 || self.panel_rule_order % 2 == 0 {
            return domain(format!("panel_rule_order must be odd and >= 7, got {}", self.panel_rule_order));
        }
        if !(self.r_max_policy > 0.0) || !self.r_max_policy.is_finite() {
            return domain("r_max_policy must be a positive threshold");
        }
        if let MaxP::Fixed(p) = self.max_p {
            if !(p > 0.0) || !p.is_finite() {
                return domain(format!("max_p must be positive and finite, got {p}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub n: usize,
    pub l: usize,
    pub mu_chain: Vec<usize>,
    pub lambda: f64,
    pub omega: f64,
    pub hbar: f64,
    pub dim: usize,
    pub space: Space,
    pub err_est: f64,
}

/// A density sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: CurveMeta,
}

/// First `x >= start` such that `|f|` stays below `threshold` on `[x, 2x]`.
fn envelope_cutoff<F: Fn(f64) -> f64>(f: F, start: f64, threshold: f64) -> Result<f64> {
    const PROBES: usize = 64;
    let mut x = start.max(1.0);
    for _ in 0..200 {
        let below = (0..=PROBES).all(|i| f(x * (1.0 + i as f64 / PROBES as f64)).abs() < threshold);
        if below {
            return Ok(x);
        }
        x *= 1.1;
    }
    Err(Error::Convergence { value: x, err_est: f64::INFINITY })
}

fn panel_width_limit(p: f64) -> f64 {
    (PI / (2.0 * p.abs().max(1.0))).min(0.5)
}

/// Amplitude times quadrature weight at the nodes of `2^level` equal panels on `(0, cutoff)`.
struct NodeTables {
    cutoff: f64,
    rule: GaussLegendre,
    tables: Vec<OnceLock<Vec<(f64, f64)>>>,
}

impl NodeTables {
    fn new(cutoff: f64, order: usize) -> Result<Self> {
        Ok(Self { cutoff, rule: GaussLegendre::new(order)?, tables: (0..=MAX_PANEL_LEVEL).map(|_| OnceLock::new()).collect() })
    }

    fn level_for(&self, p: f64) -> Result<usize> {
        let needed = (self.cutoff / panel_width_limit(p)).ceil().max(1.0);
        let level = needed.log2().ceil() as usize;
        if level > MAX_PANEL_LEVEL {
            return Err(Error::Convergence { value: p, err_est: f64::INFINITY });
        }
        Ok(level)
    }

    fn table<F: Fn(f64) -> f64>(&self, level: usize, amplitude: F) -> &[(f64, f64)] {
        self.tables[level].get_or_init(|| {
            let panels = 1usize << level;
            let h = self.cutoff / panels as f64;
            let mut out = Vec::with_capacity(panels * self.rule.order());
            for k in 0..panels {
                let c = (k as f64 + 0.5) * h;
                for (&x, &w) in self.rule.nodes().iter().zip(self.rule.weights()) {
                    let r = c + 0.5 * h * x;
                    out.push((r, 0.5 * h * w * amplitude(r)));
                }
            }
            out
        })
    }
}

/// Momentum amplitude of a one-dimensional eigenstate with tabulated nodes.
pub struct Momentum1D {
    state: State1D,
    nodes: NodeTables,
}

impl Momentum1D {
    pub fn new(params: &ModelParams, n: usize, tspec: &TransformSpec) -> Result<Self> {
        tspec.validate()?;
        if params.dim != 1 {
            return Err(Error::InvalidState(format!("one-dimensional transform requested with dim = {}", params.dim)));
        }
        let state = State1D::new(*params, n)?;
        let turning = ((2.0 * n as f64 + 1.0) / state.omega_n()).sqrt();
        let cutoff = envelope_cutoff(|x| state.psi(x), turning, tspec.r_max_policy)?;
        Ok(Self { nodes: NodeTables::new(cutoff, tspec.panel_rule_order)?, state })
    }

    pub fn state(&self) -> &State1D {
        &self.state
    }

    /// Position cutoff `x*`.
    pub fn cutoff(&self) -> f64 {
        self.nodes.cutoff
    }

    fn half_transform(&self, p: f64, level: usize) -> f64 {
        let table = self.nodes.table(level, |x| self.state.psi(x));
        if self.state.n() % 2 == 0 {
            table.iter().map(|&(x, wpsi)| wpsi * (p * x).cos()).sum()
        } else {
            table.iter().map(|&(x, wpsi)| wpsi * (p * x).sin()).sum()
        }
    }

    /// `γ(p)`.
    pub fn gamma(&self, p: f64) -> Result<f64> {
        let level = self.nodes.level_for(p)?;
        let c = self.half_transform(p.abs(), level);
        Ok(2.0 * c * c / PI)
    }

    /// `γ(p)` and the change when the panel count is doubled.
    pub fn gamma_with_error(&self, p: f64) -> Result<(f64, f64)> {
        let level = self.nodes.level_for(p)?;
        let g = self.gamma(p)?;
        if level == MAX_PANEL_LEVEL {
            return Ok((g, 0.0));
        }
        let c = self.half_transform(p.abs(), level + 1);
        Ok((g, (2.0 * c * c / PI - g).abs()))
    }
}

/// Radial momentum amplitude `K(p)` of a three-dimensional state.
pub struct MomentumRadial {
    state: RadialState,
    nodes: NodeTables,
}

impl MomentumRadial {
    pub fn new(params: &ModelParams, n: usize, l: usize, tspec: &TransformSpec) -> Result<Self> {
        tspec.validate()?;
        if params.dim != 3 {
            return Err(Error::Unsupported(format!(
                "momentum space is only available for dim 1 and 3 (got dim = {})",
                params.dim
            )));
        }
        let state = RadialState::new(*params, n, l)?;
        let turning = ((4.0 * n as f64 + 2.0 * l as f64 + 3.0) / state.omega_nl()).sqrt();
        let cutoff = envelope_cutoff(|r| state.radial(r) * r * r, turning, tspec.r_max_policy)?;
        Ok(Self { nodes: NodeTables::new(cutoff, tspec.panel_rule_order)?, state })
    }

    pub fn state(&self) -> &RadialState {
        &self.state
    }

    pub fn cutoff(&self) -> f64 {
        self.nodes.cutoff
    }

    fn transform(&self, p: f64, level: usize) -> f64 {
        let table = self.nodes.table(level, |r| self.state.radial(r) * r * r);
        let l = self.state.l();
        let sum: f64 = table.iter().map(|&(r, w)| w * spherical_bessel_unchecked(l, p * r)).sum();
        (2.0 / PI).sqrt() * sum
    }

    /// `K(p)` for `p >= 0`.
    pub fn k(&self, p: f64) -> Result<f64> {
        if !(p >= 0.0) || !p.is_finite() {
            return domain(format!("momentum must be finite and >= 0, got {p}"));
        }
        Ok(self.transform(p, self.nodes.level_for(p)?))
    }

    /// `K(p)` and the change when the panel count is doubled.
    pub fn k_with_error(&self, p: f64) -> Result<(f64, f64)> {
        let k = self.k(p)?;
        let level = self.nodes.level_for(p)?;
        if level == MAX_PANEL_LEVEL {
            return Ok((k, 0.0));
        }
        Ok((k, (self.transform(p, level + 1) - k).abs()))
    }
}

/// `γ(p) = |ψ̃(p)|²` for the one-dimensional state `n`.
pub fn momentum_density_1d(params: &ModelParams, n: usize, p: f64, tspec: &TransformSpec) -> Result<f64> {
    if !p.is_finite() {
        return domain(format!("momentum must be finite, got {p}"));
    }
    Momentum1D::new(params, n, tspec)?.gamma(p)
}

/// Radial momentum amplitude `K_{n,l}(p)` in three dimensions.
pub fn momentum_radial_k(params: &ModelParams, n: usize, l: usize, p: f64, tspec: &TransformSpec) -> Result<f64> {
    MomentumRadial::new(params, n, l, tspec)?.k(p)
}

/// Upper end of the momentum window: `γ(p)(1 + p²)` stays below 1e-16 past it.
pub(crate) fn auto_p_window<F: Fn(f64) -> Result<f64>>(density: F, start: f64) -> Result<f64> {
    const PROBES: usize = 32;
    let mut p = start.max(1.0);
    while p < MAX_AUTO_P {
        let mut below = true;
        for i in 0..=PROBES {
            let q = p * (1.0 + 0.5 * i as f64 / PROBES as f64);
            if density(q)? * (1.0 + q * q) >= 1e-16 {
                below = false;
                break;
            }
        }
        if below {
            return Ok(p);
        }
        p *= 1.1;
    }
    Err(Error::Convergence { value: p, err_est: f64::INFINITY })
}

/// Sample `ρ`, `γ`, or their radial probability densities on `grid`.
///
/// One dimension: `ρ(x)` or `γ(p)`. `N >= 2` position: `r^{N-1} R(r)²`, the
/// radial probability (equal to `4πr²ρ` for `l = 0` in three dimensions).
/// Three-dimensional momentum: `p² K(p)²`.
pub fn sample_density(
    params: &ModelParams,
    q: &QuantumNumbers,
    space: Space,
    grid: &[f64],
    tspec: &TransformSpec,
) -> Result<SampledCurve> {
    params.validate()?;
    q.validate(params.dim)?;
    if grid.is_empty() {
        return domain("grid must not be empty");
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return domain("grid must be finite and strictly increasing");
    }
    let dim = params.dim;
    let mut err_est = 0.0f64;
    let values: Vec<f64> = match (space, dim) {
        (Space::Position, 1) => {
            let s = State1D::new(*params, q.n)?;
            grid.iter().map(|&x| s.rho(x)).collect()
        }
        (Space::Position, _) => {
            if grid[0] < 0.0 {
                return domain("radial grid must be non-negative");
            }
            let s = RadialState::new(*params, q.n, q.l)?;
            grid.iter().map(|&r| s.radial_probability(r)).collect()
        }
        (Space::Momentum, 1) => {
            let m = Momentum1D::new(params, q.n, tspec)?;
            let mut out = Vec::with_capacity(grid.len());
            for &p in grid {
                let (g, e) = m.gamma_with_error(p)?;
                err_est = err_est.max(e);
                out.push(g);
            }
            out
        }
        (Space::Momentum, 3) => {
            if grid[0] < 0.0 {
                return domain("radial momentum grid must be non-negative");
            }
            let m = MomentumRadial::new(params, q.n, q.l, tspec)?;
            let mut out = Vec::with_capacity(grid.len());
            for &p in grid {
                let (k, e) = m.k_with_error(p)?;
                err_est = err_est.max(p * p * e * (2.0 * k.abs() + e));
                out.push(p * p * k * k);
            }
            out
        }
        (Space::Momentum, d) => {
            return Err(Error::Unsupported(format!("momentum space is only available for dim 1 and 3 (got dim = {d})")))
        }
    };
    Ok(SampledCurve {
        abscissae: grid.to_vec(),
        values,
        meta: CurveMeta {
            n: q.n,
            l: q.l,
            mu_chain: q.mu_chain.clone(),
            lambda: params.lambda,
            omega: params.omega,
            hbar: params.hbar,
            dim,
            space,
            err_est,
        },
    })
}
