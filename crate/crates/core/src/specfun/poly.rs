//! Classical orthogonal polynomials evaluated by their three-term recurrences.
//!
//! Only the three families needed for the oscillator eigenfunctions are
//! provided: physicists' Hermite `H_n`, associated Laguerre `L_n^α` and
//! Gegenbauer `C_n^α`. Coefficient expansions are never formed; for degrees
//! beyond ~20 they lose everything to cancellation.

use crate::error::{domain, Result};

/// Largest degree accepted by [`PolyFamily::new`].
pub const MAX_DEGREE: usize = 200;

/// Magnitude above which the log-scaled recurrence renormalises its state.
const RESCALE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyKind {
    Hermite,
    /// `L_n^α`, requires `α > -1`.
    AssociatedLaguerre { alpha: f64 },
    /// `C_n^α`, requires `α > -1/2`.
    Gegenbauer { alpha: f64 },
}

/// A validated polynomial family member: kind plus degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyFamily {
    kind: PolyKind,
    degree: usize,
}

/// `sign * exp(log_abs)`, with `sign == 0` (and `log_abs == -inf`) for an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogScaled {
    pub fn value(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }
}

impl PolyFamily {
    pub fn new(kind: PolyKind, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return domain(format!("polynomial degree {degree} exceeds maximum {MAX_DEGREE}"));
        }
        match kind {
            PolyKind::Hermite => {}
            PolyKind::AssociatedLaguerre { alpha } => {
                if !(alpha > -1.0) || !alpha.is_finite() {
                    return domain(format!("Laguerre parameter must exceed -1, got {alpha}"));
                }
            }
            PolyKind::Gegenbauer { alpha } => {
                if !(alpha > -0.5) || !alpha.is_finite() {
                    return domain(format!("Gegenbauer parameter must exceed -1/2, got {alpha}"));
                }
            }
        }
        Ok(Self { kind, degree })
    }

    pub fn hermite(degree: usize) -> Result<Self> {
        Self::new(PolyKind::Hermite, degree)
    }

    pub fn laguerre(degree: usize, alpha: f64) -> Result<Self> {
        Self::new(PolyKind::AssociatedLaguerre { alpha }, degree)
    }

    pub fn gegenbauer(degree: usize, alpha: f64) -> Result<Self> {
        Self::new(PolyKind::Gegenbauer { alpha }, degree)
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients `(a, b, c)` of `p_{k+1} = (a z + b) p_k - c p_{k-1}`.
    #[inline]
    fn step(&self, k: usize) -> (f64, f64, f64) {
        let kf = k as f64;
        match self.kind {
            PolyKind::Hermite => (2.0, 0.0, 2.0 * kf),
            PolyKind::AssociatedLaguerre { alpha } => {
                let d = kf + 1.0;
                (-1.0 / d, (2.0 * kf + 1.0 + alpha) / d, (kf + alpha) / d)
            }
            PolyKind::Gegenbauer { alpha } => {
                let d = kf + 1.0;
                (2.0 * (kf + alpha) / d, 0.0, (kf + 2.0 * alpha - 1.0) / d)
            }
        }
    }

    #[inline]
    fn first(&self, z: f64) -> f64 {
        match self.kind {
            PolyKind::Hermite => 2.0 * z,
            PolyKind::AssociatedLaguerre { alpha } => 1.0 + alpha - z,
            PolyKind::Gegenbauer { alpha } => 2.0 * alpha * z,
        }
    }

    /// Value at `z` by forward recurrence.
    #[inline]
    pub fn eval(&self, z: f64) -> f64 {
        if self.degree == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = self.first(z);
        for k in 1..self.degree {
            let (a, b, c) = self.step(k);
            let next = (a * z + b) * cur - c * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Overflow-safe evaluation returning sign and log-magnitude.
    pub fn eval_log_scaled(&self, z: f64) -> LogScaled {
        let mut scale = 0.0;
        let mut prev = 1.0;
        let mut cur = if self.degree == 0 { 1.0 } else { self.first(z) };
        for k in 1..self.degree {
            let (a, b, c) = self.step(k);
            let next = (a * z + b) * cur - c * prev;
            prev = cur;
            cur = next;
            let mag = cur.abs();
            if mag > RESCALE_ABOVE {
                prev /= mag;
                cur /= mag;
                scale += mag.ln();
            }
        }
        if cur == 0.0 {
            LogScaled { sign: 0, log_abs: f64::NEG_INFINITY }
        } else {
            LogScaled { sign: if cur > 0.0 { 1 } else { -1 }, log_abs: cur.abs().ln() + scale }
        }
    }
}

fn check_arg(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        domain(format!("polynomial argument must be finite, got {z}"))
    }
}

pub fn eval_poly(family: &PolyFamily, z: f64) -> Result<f64> {
    check_arg(z)?;
    Ok(family.eval(z))
}

pub fn eval_poly_log_scaled(family: &PolyFamily, z: f64) -> Result<LogScaled> {
    check_arg(z)?;
    Ok(family.eval_log_scaled(z))
}
