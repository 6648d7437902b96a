//! Laplace-transform machinery: adaptive forward transforms for real and
//! complex frequency arguments, partial-fraction inversion of rational
//! transforms, and fixed-contour Talbot inversion for everything else.

pub(crate) mod poly;
pub mod rational;
pub mod talbot;

pub use rational::{invert_rational, RationalTransform, TimeDomain};
pub use talbot::{invert_talbot, TalbotConfig};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// 21-point Gauss-Kronrod rule: Kronrod abscissae (positive half), embedded
// 10-point Gauss weights, and Kronrod weights.
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
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
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

/// One Kronrod panel: returns (kronrod value, error estimate).
fn gk21_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut vals = [Complex64::new(0.0, 0.0); 21];
    for (i, &x) in XGK.iter().enumerate() {
        if i == 10 {
            vals[10] = f(center);
        } else {
            vals[i] = f(center - half * x);
            vals[20 - i] = f(center + half * x);
        }
    }
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for i in 0..11 {
        let pair = if i == 10 {
            vals[10]
        } else {
            vals[i] + vals[20 - i]
        };
        kronrod += WGK[i] * pair;
        // Gauss points are the odd-index Kronrod abscissae.
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style rescaled error estimate.
    let mean = kronrod / (b - a);
    let mut resasc = 0.0;
    for i in 0..11 {
        let contrib = if i == 10 {
            (vals[10] - mean).norm()
        } else {
            (vals[i] - mean).norm() + (vals[20 - i] - mean).norm()
        };
        resasc += WGK[i] * contrib;
    }
    resasc *= half.abs();
    let raw = (kronrod - gauss).norm();
    let err = if resasc > 0.0 && raw > 0.0 {
        resasc * ((200.0 * raw / resasc).powf(1.5)).min(1.0)
    } else {
        raw
    };
    (kronrod, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
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

const MAX_PANELS: usize = 120_000;

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand over the
/// segments defined by consecutive `breakpoints` (must be increasing).
/// Refines the worst panel until the summed error estimate drops below
/// `rel_tol * |integral|` (or below `abs_tol`, whichever is larger).
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Complex64> {
    assert!(breakpoints.len() >= 2, "need at least one segment");
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in breakpoints.windows(2) {
        debug_assert!(w[1] > w[0], "breakpoints must increase");
        let (v, e) = gk21_panel(&f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: v,
            err: e,
        });
    }
    while total_err > abs_tol.max(rel_tol * total.norm()) {
        if heap.len() >= MAX_PANELS {
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tolerance: abs_tol.max(rel_tol * total.norm()),
            });
        }
        let worst = heap.pop().expect("heap cannot be empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel no longer splittable in f64; accept what we have.
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tolerance: abs_tol.max(rel_tol * total.norm()),
            });
        }
        let (v1, e1) = gk21_panel(&f, worst.a, mid);
        let (v2, e2) = gk21_panel(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
    Ok(total)
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    integrate(
        |x| Complex64::new(f(x), 0.0),
        breakpoints,
        rel_tol,
        abs_tol,
    )
    .map(|v| v.re)
}

/// Geometric subdivision of [0, upper]: small panels near zero where
/// integrands vary fastest, doubling outwards.
pub(crate) fn geometric_breakpoints(upper: f64, panels: usize) -> Vec<f64> {
    let mut pts = Vec::with_capacity(panels + 1);
    pts.push(0.0);
    for k in (0..panels).rev() {
        pts.push(upper / (1u64 << k.min(52)) as f64);
    }
    pts
}

/// Analytic description of the integrand beyond a split point, for
/// transforms whose domain cannot be truncated at `40/s` (heavy tails).
#[derive(Debug, Clone, Copy)]
pub struct TailSpec {
    /// Quadrature stops here.
    pub split_at: f64,
    /// Exact (caller-supplied) value of the integral over `(split_at, inf)`.
    pub tail_value: f64,
}

/// Relative tolerance used by the forward transforms.
pub const FORWARD_REL_TOL: f64 = 1e-11;

/// `\int_0^inf f(t) e^{-s t} dt` by adaptive quadrature.
///
/// Without a [`TailSpec`] the integral is truncated at `t = 40/s`, where the
/// kernel has decayed to ~4e-18; this requires `s > 0`.  With a `TailSpec`
/// the quadrature covers `[0, split_at]` and the analytic `tail_value` is
/// added, which also permits `s = 0`.
pub fn forward_transform<F: Fn(f64) -> f64>(f: F, s: f64, tail: Option<TailSpec>) -> Result<f64> {
    match tail {
        Some(spec) => {
            let pts = geometric_breakpoints(spec.split_at, 24);
            let val = integrate_real(|t| f(t) * (-s * t).exp(), &pts, FORWARD_REL_TOL, 1e-300)?;
            Ok(val + spec.tail_value)
        }
        None => {
            if !(s > 0.0) {
                return Err(Error::DivergentTransform { s });
            }
            let pts = geometric_breakpoints(40.0 / s, 24);
            integrate_real(|t| f(t) * (-s * t).exp(), &pts, FORWARD_REL_TOL, 1e-300)
        }
    }
}

/// Complex-frequency forward transform; requires `Re z > 0` so that the
/// kernel still provides the truncation.
pub fn forward_transform_complex<F: Fn(f64) -> f64>(f: F, z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::DivergentTransform { s: z.re });
    }
    let pts = geometric_breakpoints(40.0 / z.re, 24);
    integrate(
        |t| Complex64::new(f(t), 0.0) * (-z * t).exp(),
        &pts,
        FORWARD_REL_TOL,
        1e-300,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let v = integrate_real(|x| x * x * x - 2.0 * x + 1.0, &[0.0, 2.0], 1e-12, 0.0).unwrap();
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        // \int_0^10 cos(40 x) dx = sin(400)/40
        let v = integrate_real(|x| (40.0 * x).cos(), &[0.0, 10.0], 1e-12, 1e-15).unwrap();
        assert!((v - (400f64).sin() / 40.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_transform() {
        // f = e^{-t}: transform 1/(1+s)
        let v = forward_transform(|t| (-t).exp(), 2.0, None).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_transform() {
        // f = cos(w t): transform s/(s^2+w^2)
        let w = 5.0;
        let s = 0.7;
        let v = forward_transform(|t| (w * t).cos(), s, None).unwrap();
        assert!((v - s / (s * s + w * w)).abs() < 1e-11);
    }

    #[test]
    fn rejects_nonpositive_rate_without_tail() {
        assert!(matches!(
            forward_transform(|_| 1.0, 0.0, None),
            Err(Error::DivergentTransform { .. })
        ));
    }

    #[test]
    fn tail_spec_adds_analytic_remainder() {
        // f = e^{-t} at s = 0 with split at T: quadrature gives 1 - e^{-T},
        // the analytic tail is e^{-T}.
        let t_split = 3.0;
        let v = forward_transform(
            |t| (-t).exp(),
            0.0,
            Some(TailSpec {
                split_at: t_split,
                tail_value: (-t_split).exp(),
            }),
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_transform_matches_closed_form() {
        // f = e^{-t}: transform 1/(1+z)
        let z = Complex64::new(0.4, 2.5);
        let v = forward_transform_complex(|t| (-t).exp(), z).unwrap();
        let expect = 1.0 / (Complex64::new(1.0, 0.0) + z);
        assert!((v - expect).norm() < 1e-11);
    }

    #[test]
    fn conjugate_symmetry_of_quadrature() {
        let z = Complex64::new(0.9, 1.7);
        let f = |t: f64| (1.3 * t).cos() * (-0.2 * t).exp();
        let a = forward_transform_complex(f, z).unwrap();
        let b = forward_transform_complex(f, z.conj()).unwrap();
        assert!((a.conj() - b).norm() < 1e-12);
    }
}
