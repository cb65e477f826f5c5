//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature with bisection.
//!
//! Infinite endpoints are replaced by a finite cutoff: starting from `|z| = 8`
//! the candidate cutoff doubles until the integrand, sampled across
//! `[z, 2z]`, stays below `truncation_threshold`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Integrand magnitude below which an infinite tail is dropped.
    pub truncation_threshold: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_subdivisions: 4096, truncation_threshold: 1e-18 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.rel_tol) || !positive(self.abs_tol) || !positive(self.truncation_threshold) {
            return domain("quadrature tolerances must be strictly positive");
        }
        if self.max_subdivisions < 1 {
            return domain("max_subdivisions must be at least 1");
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err_est: f64,
}

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
#[inline]
pub fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One 21-point Kronrod panel: (estimate, error estimate).
fn kronrod21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn adaptive<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, err_est: 0.0 });
    }
    let (value, err) = kronrod21(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    // error parked on panels too narrow to bisect further
    let mut frozen_err = 0.0;
    let mut panels = 1usize;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= target {
            return Ok(Integral { value: total, err_est: total_err });
        }
        if frozen_err > target || panels >= spec.max_subdivisions {
            return Err(Error::Convergence { value: total, err_est: total_err });
        }
        let Some(worst) = heap.pop() else {
            return Ok(Integral { value: total, err_est: total_err });
        };
        let mid = 0.5 * (worst.a + worst.b);
        let scale = worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE);
        if (worst.b - worst.a).abs() < 1e3 * f64::EPSILON * scale {
            frozen_err += worst.err;
            continue;
        }
        let (v1, e1) = kronrod21(f, worst.a, mid);
        let (v2, e2) = kronrod21(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
        panels += 1;
    }
}

/// Distance from `origin` (moving in direction `dir`) past which `|f|` stays
/// below `threshold`, found by doubling from 8.
pub(crate) fn find_cutoff<F: FnMut(f64) -> f64>(f: &mut F, origin: f64, dir: f64, threshold: f64) -> Result<f64> {
    const PROBES: usize = 48;
    let mut z = 8.0;
    for _ in 0..40 {
        let mut envelope = 0.0f64;
        for i in 0..=PROBES {
            let t = z * (1.0 + i as f64 / PROBES as f64);
            envelope = envelope.max(f(origin + dir * t).abs());
        }
        if envelope.is_nan() {
            return domain("integrand is NaN while searching for a tail cutoff");
        }
        if envelope < threshold {
            return Ok(z);
        }
        z *= 2.0;
    }
    domain("integrand does not decay below the truncation threshold")
}

/// Integrate `f` over `(a, b)`; either endpoint may be infinite.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    if a.is_nan() || b.is_nan() {
        return domain("integration limits must not be NaN");
    }
    if a > b {
        let r = integrate(f, b, a, spec)?;
        return Ok(Integral { value: -r.value, err_est: r.err_est });
    }
    let lo = if a == f64::NEG_INFINITY {
        let origin = if b.is_finite() { b.min(0.0) } else { 0.0 };
        origin - find_cutoff(&mut f, origin, -1.0, spec.truncation_threshold)?
    } else {
        a
    };
    let hi = if b == f64::INFINITY {
        let origin = if a.is_finite() { a.max(0.0) } else { 0.0 };
        origin + find_cutoff(&mut f, origin, 1.0, spec.truncation_threshold)?
    } else {
        b
    };
    if !lo.is_finite() || !hi.is_finite() {
        return domain("integration limits must be finite or signed infinity");
    }
    adaptive(&mut f, lo, hi, spec)
}
