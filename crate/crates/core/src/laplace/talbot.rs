//! Fixed-contour Talbot inversion (Abate-Valko parametrization).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Disagreement between successive node counts above which the inversion
/// is declared unstable (relative to the magnitude of the result).
pub const STABILITY_TOL: f64 = 1e-6;

/// Absolute disagreement below which the result is accepted regardless of
/// its magnitude.  Values legitimately close to zero would otherwise trip
/// the relative check on pure roundoff noise: each node count carries
/// around a nanoeps-scale absolute floor of contour roundoff, so two
/// counts can disagree by a few 1e-9 even when both are that accurate.
pub const STABILITY_FLOOR: f64 = 1e-8;

/// Increment between the node counts compared by the stability check.
/// Halving instead would compare against a sum that is still truncation-
/// limited at moderate times and report its error, not the result's.
const NODE_STEP: usize = 8;

/// Ceiling for automatic refinement.  Roundoff on the contour grows as
/// e^{2M/5} * eps (about 2e-8 at M = 48), so refining past this point
/// makes double-precision results worse, not better.
const MAX_AUTO_NODES: usize = 48;

/// Nodes with `Re(s) t` below this contribute less than ~1e-20 and are
/// skipped without evaluating the transform (which may be costly or
/// undefined far into the left half-plane).
const NEGLIGIBLE_EXPONENT: f64 = -46.0;

#[derive(Debug, Clone, Copy)]
pub struct TalbotConfig {
    /// Number of contour nodes M; must be even and at least 16.
    pub nodes: usize,
}

impl Default for TalbotConfig {
    fn default() -> Self {
        // The contour carries terms of size e^{2M/5}, so in double
        // precision larger node counts lose to cancellation faster than
        // they gain truncation accuracy; M = 32 sits near the optimum
        // (roundoff ~ e^{12.8} * eps ~ 1e-10).
        Self { nodes: 32 }
    }
}

impl TalbotConfig {
    pub fn with_nodes(nodes: usize) -> Result<Self> {
        if nodes < 16 || nodes % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "Talbot node count must be even and >= 16, got {nodes}"
            )));
        }
        Ok(Self { nodes })
    }
}

fn talbot_sum<F>(transform: &F, t: f64, m: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    // Contour s(theta) = rho * theta (cot theta + i), rho = 2M/(5t).
    let rho = 2.0 * m as f64 / (5.0 * t);
    let mut acc = 0.5 * (transform(Complex64::new(rho, 0.0))? * (rho * t).exp()).re;
    for k in 1..m {
        let theta = k as f64 * std::f64::consts::PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(rho * theta * cot, rho * theta);
        if s.re * t < NEGLIGIBLE_EXPONENT {
            continue;
        }
        // d s / d theta contributes the (1 + i sigma) Jacobian factor.
        let sigma = theta + (theta * cot - 1.0) * cot;
        let term = (s * t).exp() * transform(s)? * Complex64::new(1.0, sigma);
        acc += term.re;
    }
    Ok(acc * rho / m as f64)
}

/// Invert a Laplace transform at `t > 0` on the fixed Talbot contour.
///
/// The result is self-checked by comparing sums at successive node counts
/// (`nodes`, `nodes + 8`, ...): when two consecutive counts agree within
/// [`STABILITY_TOL`] relative or [`STABILITY_FLOOR`] absolute, the finer
/// sum is returned.  Refinement stops at an internal ceiling beyond which
/// double-precision roundoff dominates; persistent disagreement surfaces
/// as [`Error::InversionUnstable`] carrying the relative discrepancy.
pub fn invert_talbot<F>(transform: F, t: f64, config: TalbotConfig) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Talbot inversion needs t > 0, got {t}"
        )));
    }
    if config.nodes < 16 || config.nodes % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "Talbot node count must be even and >= 16, got {}",
            config.nodes
        )));
    }
    let mut coarse_nodes = config.nodes;
    let mut coarse = talbot_sum(&transform, t, coarse_nodes)?;
    loop {
        let fine_nodes = coarse_nodes + NODE_STEP;
        let fine = talbot_sum(&transform, t, fine_nodes)?;
        let diff_abs = (fine - coarse).abs();
        let scale = fine.abs().max(coarse.abs()).max(1e-300);
        if diff_abs <= STABILITY_FLOOR || diff_abs <= STABILITY_TOL * scale {
            return Ok(fine);
        }
        if fine_nodes >= MAX_AUTO_NODES {
            return Err(Error::InversionUnstable {
                t,
                diff: diff_abs / scale,
            });
        }
        coarse_nodes = fine_nodes;
        coarse = fine;
    }
}
