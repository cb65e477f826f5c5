use crate::error::{domain, Result};

/// Highest order accepted by [`spherical_bessel`].
pub const MAX_ORDER: usize = 100;

const SERIES_BELOW: f64 = 1.0;
const RESCALE_ABOVE: f64 = 1e250;

/// Spherical Bessel function of the first kind `j_l(z)` for `z >= 0`.
///
/// Power series below `z = 1`, forward recurrence from `j_0, j_1` when
/// `z >= l` and Miller's backward recurrence otherwise.
pub fn spherical_bessel(l: usize, z: f64) -> Result<f64> {
    if l > MAX_ORDER {
        return domain(format!("spherical Bessel order {l} exceeds {MAX_ORDER}"));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("spherical Bessel argument must be finite and >= 0, got {z}"));
    }
    Ok(spherical_bessel_unchecked(l, z))
}

pub(crate) fn spherical_bessel_unchecked(l: usize, z: f64) -> f64 {
    if z == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if z < SERIES_BELOW {
        return series(l, z);
    }
    let (s, c) = z.sin_cos();
    let j0 = s / z;
    if l == 0 {
        return j0;
    }
    let j1 = (j0 - c) / z;
    if z >= l as f64 {
        let (mut prev, mut cur) = (j0, j1);
        for k in 1..l {
            let next = (2 * k + 1) as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    miller(l, z, j0, j1)
}

fn series(l: usize, z: f64) -> f64 {
    // z^l / (2l+1)!!
    let mut lead = 1.0;
    for k in 1..=l {
        lead *= z / (2 * k + 1) as f64;
    }
    let q = -0.5 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        term *= q / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(l: usize, z: f64, j0: f64, j1: f64) -> f64 {
    let start = l + 30 + z.ceil() as usize;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut at_l = 0.0;
    let mut f1 = 0.0;
    for k in (1..=start).rev() {
        // f_{k-1} = (2k+1)/z f_k - f_{k+1}
        let prev = (2 * k + 1) as f64 / z * cur - next;
        next = cur;
        cur = prev;
        if k - 1 == l {
            at_l = cur;
        }
        if k == 1 {
            f1 = next;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            at_l /= RESCALE_ABOVE;
            f1 /= RESCALE_ABOVE;
        }
    }
    let f0 = cur;
    if j0.abs() >= j1.abs() {
        at_l * (j0 / f0)
    } else {
        at_l * (j1 / f1)
    }
}
