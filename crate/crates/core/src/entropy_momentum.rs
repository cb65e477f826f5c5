//! Momentum-space entropies and the entropic uncertainty relation
//! `S_ρ + S_γ ≥ N(1 + ln π)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::entropy_position::{angular_entropy_jy, entropy_position_nd, EntropyReport};
use crate::error::{Error, Result};
use crate::model::{ModelParams, QuantumNumbers};
use crate::specfun::{integrate, xlogx};
use crate::transform::{auto_p_window, MaxP, Momentum1D, MomentumRadial, TransformSpec};

/// Margin below which a state is reported as saturating the bound.
pub const SATURATION_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub s_rho: f64,
    pub s_gamma: f64,
    pub total: f64,
    pub bbm_bound: f64,
    pub margin: f64,
    pub err_est: f64,
    pub saturated: bool,
}

impl UncertaintyReport {
    pub fn new(dim: usize, s_rho: f64, s_gamma: f64, err_est: f64) -> Self {
        let total = s_rho + s_gamma;
        let bbm_bound = bbm_bound(dim);
        let margin = total - bbm_bound;
        Self { s_rho, s_gamma, total, bbm_bound, margin, err_est, saturated: margin < SATURATION_MARGIN }
    }

    /// The bound holds within the error estimate.
    pub fn holds(&self) -> bool {
        self.margin >= -self.err_est
    }
}

/// `N(1 + ln π)`.
pub fn bbm_bound(dim: usize) -> f64 {
    dim as f64 * (1.0 + PI.ln())
}

/// Memoised evaluation of an expensive density; the first error is kept and
/// the quadrature sees NaN from then on.
struct Memo<F> {
    f: F,
    values: RefCell<HashMap<u64, f64>>,
    error: RefCell<Option<Error>>,
}

impl<F: Fn(f64) -> Result<f64>> Memo<F> {
    fn new(f: F) -> Self {
        Self { f, values: RefCell::new(HashMap::new()), error: RefCell::new(None) }
    }

    fn get(&self, p: f64) -> f64 {
        if let Some(&v) = self.values.borrow().get(&p.to_bits()) {
            return v;
        }
        match (self.f)(p) {
            Ok(v) => {
                self.values.borrow_mut().insert(p.to_bits(), v);
                v
            }
            Err(e) => {
                self.error.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn check(&self) -> Result<()> {
        match self.error.borrow_mut().take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

fn window(tspec: &TransformSpec, auto: impl FnOnce() -> Result<f64>) -> Result<f64> {
    match tspec.max_p {
        MaxP::Fixed(p) => Ok(p),
        MaxP::Auto => auto(),
    }
}

/// Error in `∫ x ln x` induced by an error `dx` in `x`, summed over probe points.
fn inner_error<F: Fn(f64) -> Result<(f64, f64)>>(density_with_err: F, p_max: f64, weight: impl Fn(f64) -> f64) -> Result<f64> {
    const PROBES: usize = 16;
    let mut worst = 0.0f64;
    for i in 0..PROBES {
        let p = p_max * (i as f64 + 0.5) / PROBES as f64;
        let (g, dg) = density_with_err(p)?;
        worst = worst.max(weight(p) * dg * (1.0 + g.max(1e-300).ln().abs()));
    }
    Ok(worst * p_max)
}

/// Momentum entropy of the one-dimensional state `n`.
pub fn entropy_momentum_1d(params: &ModelParams, n: usize, tspec: &TransformSpec) -> Result<EntropyReport> {
    let m = Momentum1D::new(params, n, tspec)?;
    let spread = ((2.0 * n as f64 + 1.0) * m.state().omega_n()).sqrt();
    let p_max = window(tspec, || auto_p_window(|p| m.gamma(p), spread))?;
    let memo = Memo::new(|p| m.gamma(p));
    let half = integrate(|p| xlogx(memo.get(p)), 0.0, p_max, &tspec.quad);
    memo.check()?;
    let half = half?;
    let inner = inner_error(|p| m.gamma_with_error(p), p_max, |_| 1.0)?;
    Ok(EntropyReport::from_terms(vec![("momentum", -2.0 * half.value)], 2.0 * (half.err_est + inner)))
}

/// Momentum entropy of a three-dimensional state: the radial part minus
/// the same angular term `J_Y` as in position space.
pub fn entropy_momentum_3d(
    params: &ModelParams,
    n: usize,
    l: usize,
    mu_chain: &[usize],
    tspec: &TransformSpec,
) -> Result<EntropyReport> {
    let q = QuantumNumbers::with_chain(n, mu_chain.to_vec());
    if q.l != l {
        return Err(Error::InvalidState(format!("l = {l} does not match the chain head {}", q.l)));
    }
    params.validate()?;
    q.validate(params.dim)?;
    let m = MomentumRadial::new(params, n, l, tspec)?;
    let jy = angular_entropy_jy(3, mu_chain, &tspec.quad)?;
    let spread = ((4.0 * n as f64 + 2.0 * l as f64 + 3.0) * m.state().omega_nl()).sqrt();
    let p_max = window(tspec, || auto_p_window(|p| m.k(p).map(|k| k * k), spread))?;
    let memo = Memo::new(|p| m.k(p));
    let radial = integrate(
        |p| {
            let k = memo.get(p);
            p * p * xlogx(k * k)
        },
        0.0,
        p_max,
        &tspec.quad,
    );
    memo.check()?;
    let radial = radial?;
    let inner = inner_error(
        |p| m.k_with_error(p).map(|(k, dk)| (k * k, dk * (2.0 * k.abs() + dk))),
        p_max,
        |p| p * p,
    )?;
    Ok(EntropyReport::from_terms(vec![("radial", -radial.value), ("angular", -jy)], radial.err_est + inner))
}

/// Momentum entropy for `dim ∈ {1, 3}`.
pub fn entropy_momentum(params: &ModelParams, q: &QuantumNumbers, tspec: &TransformSpec) -> Result<EntropyReport> {
    params.validate()?;
    q.validate(params.dim)?;
    match params.dim {
        1 => entropy_momentum_1d(params, q.n, tspec),
        3 => entropy_momentum_3d(params, q.n, q.l, &q.mu_chain, tspec),
        d => Err(Error::Unsupported(format!("momentum space is only available for dim 1 and 3 (got dim = {d})"))),
    }
}

/// Both entropies, their sum and the margin over the bound.
pub fn uncertainty_check(params: &ModelParams, q: &QuantumNumbers, tspec: &TransformSpec) -> Result<UncertaintyReport> {
    let gamma = entropy_momentum(params, q, tspec)?;
    let rho = entropy_position_nd(params, q, &tspec.quad)?;
    Ok(UncertaintyReport::new(params.dim, rho.entropy, gamma.entropy, rho.err_est + gamma.err_est))
}
