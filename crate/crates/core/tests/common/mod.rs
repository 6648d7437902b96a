//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use qreset_core::TwoLevelHamiltonian;

/// Random 2x2 Hermitian matrix with entries of order one.
pub fn random_hermitian(rng: &mut impl Rng) -> TwoLevelHamiltonian {
    let c = Complex64::new;
    let a = rng.gen_range(-2.0..2.0);
    let d = rng.gen_range(-2.0..2.0);
    let b = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    TwoLevelHamiltonian::new([[c(a, 0.0), b], [b.conj(), c(d, 0.0)]])
        .expect("hermitian by construction")
}

/// `n` points between `lo` and `hi` inclusive, spaced evenly in log.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `n` points between `lo` and `hi` inclusive, spaced evenly.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Unweighted least-squares line through `(x, y)` pairs: `(slope, intercept)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
