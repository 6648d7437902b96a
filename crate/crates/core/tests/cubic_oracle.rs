//! The pole cubic against an independent companion-matrix eigenvalue
//! solver, plus its structural guarantees over a wide parameter range.

mod common;

use common::log_grid;
use nalgebra::Matrix3;
use qreset_core::jaynes_cummings::{cubic_discriminant, cubic_roots};

#[test]
fn roots_match_companion_matrix_solver() {
    // lambda^3 + 2 lambda^2 + (1 + 2 mu) lambda + mu = 0, solved here by
    // nalgebra's Schur-based eigenvalue routine on the companion matrix.
    for mu in log_grid(1e-7, 10.0, 57) {
        let roots = cubic_roots(mu).unwrap();
        let companion = Matrix3::new(
            0.0, 0.0, -mu, //
            1.0, 0.0, -(1.0 + 2.0 * mu),
            0.0, 1.0, -2.0,
        );
        let eigen = companion.complex_eigenvalues();
        let (pair, _) = roots.complex_pair();
        let mut mine = vec![
            num_complex::Complex64::new(roots.lambda_1, 0.0),
            pair,
            pair.conj(),
        ];
        for ev in eigen.iter() {
            let e = num_complex::Complex64::new(ev.re, ev.im);
            let (idx, _) = mine
                .iter()
                .enumerate()
                .map(|(i, m)| (i, (m - e).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            let dist = (mine.swap_remove(idx) - e).norm();
            assert!(dist < 1e-10, "mu={mu}: root mismatch {dist:.2e}");
        }
    }
}

#[test]
fn vieta_and_polynomial_residuals_stay_tiny() {
    for mu in log_grid(1e-7, 10.0, 81) {
        let roots = cubic_roots(mu).unwrap();
        for r in roots.vieta_residuals(mu) {
            assert!(r.abs() < 1e-12, "mu={mu}: Vieta residual {r:.2e}");
        }
        for r in roots.polynomial_residuals(mu) {
            assert!(r.abs() < 1e-12, "mu={mu}: polynomial residual {r:.2e}");
        }
    }
}

#[test]
fn discriminant_is_negative_across_the_range() {
    // One real root plus a conjugate pair for every positive mu.
    for mu in log_grid(1e-6, 1e6, 121) {
        assert!(cubic_discriminant(mu) < 0.0, "mu={mu}");
    }
}

#[test]
fn root_structure_orders_correctly() {
    for mu in log_grid(1e-6, 1e4, 51) {
        let roots = cubic_roots(mu).unwrap();
        let (pair, _) = roots.complex_pair();
        assert!(
            pair.re < roots.lambda_1 && roots.lambda_1 < 0.0,
            "mu={mu}: expected lambda_R < lambda_1 < 0"
        );
        assert!(pair.im > 0.0, "mu={mu}: canonical pair has Im > 0");
    }
}

#[test]
fn small_mu_perturbation_limits() {
    // As mu -> 0 the cubic factors towards lambda (lambda + 1)^2, giving
    // lambda1 ~ -mu and the pair ~ -1 +- i sqrt(mu).
    let mu = 1e-6;
    let roots = cubic_roots(mu).unwrap();
    let (pair, _) = roots.complex_pair();
    assert!((roots.lambda_1 + mu).abs() < 1e-11);
    assert!((pair.re + 1.0).abs() < 1e-5);
    assert!((pair.im - mu.sqrt()).abs() < 1e-8);
}
