use num_complex::Complex64;
use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::laplace;

/// Waiting-time law for the random intervals between measurement attempts.
///
/// `Exponential` gives the memoryless (Poissonian) protocol; `Gamma` is a
/// light-tailed control with tunable regularity; `Lomax` (shifted Pareto,
/// density `(mu/tau0) (1 + tau/tau0)^-(mu+1)`) provides the heavy-tail
/// regime with amplitude `A = mu * tau0^mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaitingTimeDistribution {
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    Lomax { mu_tail: f64, tau0: f64 },
}

use WaitingTimeDistribution::*;

impl WaitingTimeDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponential rate must be positive and finite, got {rate}"
            )));
        }
        Ok(Exponential { rate })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && scale > 0.0) || !shape.is_finite() || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma parameters must be positive and finite, got shape {shape}, scale {scale}"
            )));
        }
        Ok(Gamma { shape, scale })
    }

    pub fn lomax(mu_tail: f64, tau0: f64) -> Result<Self> {
        if !(mu_tail > 0.0 && tau0 > 0.0) || !mu_tail.is_finite() || !tau0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Lomax parameters must be positive and finite, got mu {mu_tail}, tau0 {tau0}"
            )));
        }
        Ok(Lomax { mu_tail, tau0 })
    }

    /// Probability density p(tau).
    pub fn density(&self, tau: f64) -> Result<f64> {
        if tau < 0.0 {
            return Err(Error::NegativeTime(tau));
        }
        Ok(match *self {
            Exponential { rate } => rate * (-rate * tau).exp(),
            Gamma { shape, scale } => {
                if tau == 0.0 {
                    // limit value: finite only for shape >= 1
                    if shape > 1.0 {
                        0.0
                    } else if shape == 1.0 {
                        1.0 / scale
                    } else {
                        f64::INFINITY
                    }
                } else {
                    let x = tau / scale;
                    ((shape - 1.0) * x.ln() - x - statrs::function::gamma::ln_gamma(shape)).exp()
                        / scale
                }
            }
            Lomax { mu_tail, tau0 } => (mu_tail / tau0) * (1.0 + tau / tau0).powf(-mu_tail - 1.0),
        })
    }

    /// Survival function q(tau) = P(wait > tau).
    pub fn survival(&self, tau: f64) -> Result<f64> {
        if tau < 0.0 {
            return Err(Error::NegativeTime(tau));
        }
        Ok(match *self {
            Exponential { rate } => (-rate * tau).exp(),
            Gamma { shape, scale } => statrs::function::gamma::gamma_ur(shape, tau / scale),
            Lomax { mu_tail, tau0 } => (1.0 + tau / tau0).powf(-mu_tail),
        })
    }

    /// Density at zero (the short-time law of the detection density is
    /// proportional to it).  Errors when unbounded (Gamma with shape < 1).
    pub fn density_at_zero(&self) -> Result<f64> {
        match *self {
            Gamma { shape, .. } if shape < 1.0 => Err(Error::UnboundedDensity),
            _ => self.density(0.0),
        }
    }

    /// Mean waiting time; `None` when infinite (Lomax with mu <= 1).
    pub fn mean(&self) -> Option<f64> {
        match *self {
            Exponential { rate } => Some(1.0 / rate),
            Gamma { shape, scale } => Some(shape * scale),
            Lomax { mu_tail, tau0 } => (mu_tail > 1.0).then(|| tau0 / (mu_tail - 1.0)),
        }
    }

    /// Power-law tail descriptor `p(tau) ~ A tau^-(mu+1)`: returns
    /// `(A, mu_tail)` for Lomax, `None` for the light-tailed families.
    pub fn tail(&self) -> Option<(f64, f64)> {
        match *self {
            Lomax { mu_tail, tau0 } => Some((mu_tail * tau0.powf(mu_tail), mu_tail)),
            _ => None,
        }
    }

    /// Laplace transform p~(s) for real s inside the convergence region.
    /// Exponential and Gamma are closed forms; Lomax falls back to adaptive
    /// quadrature.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        match *self {
            Exponential { rate } => {
                if s <= -rate {
                    Err(Error::DivergentTransform { s })
                } else {
                    Ok(rate / (rate + s))
                }
            }
            Gamma { shape, scale } => {
                if s <= -1.0 / scale {
                    Err(Error::DivergentTransform { s })
                } else {
                    Ok((1.0 + scale * s).powf(-shape))
                }
            }
            Lomax { .. } => {
                if s < 0.0 {
                    Err(Error::DivergentTransform { s })
                } else if s == 0.0 {
                    Ok(1.0)
                } else {
                    Ok(self.laplace_complex(Complex64::new(s, 0.0))?.re)
                }
            }
        }
    }

    /// Survival transform q~(s) = (1 - p~(s)) / s, with the s -> 0 limit
    /// equal to the mean.
    pub fn survival_laplace(&self, s: f64) -> Result<f64> {
        if s == 0.0 {
            return self.mean().ok_or(Error::InfiniteMean);
        }
        Ok((1.0 - self.laplace(s)?) / s)
    }

    /// Laplace transform continued to complex frequency, needed by contour
    /// inversion.  Exponential/Gamma use their closed forms (principal
    /// branch); Lomax integrates along the rotated ray tau = rho e^{i phi},
    /// phi = -arg z, which turns the kernel into a decaying real exponential
    /// and analytically continues the transform to all z off `(-inf, 0]`.
    pub fn laplace_complex(&self, z: Complex64) -> Result<Complex64> {
        match *self {
            Exponential { rate } => {
                if (z + rate).norm() < 1e-14 * rate {
                    return Err(Error::DivergentTransform { s: z.re });
                }
                Ok(rate / (rate + z))
            }
            Gamma { shape, scale } => {
                let w = 1.0 + scale * z;
                if w.im == 0.0 && w.re <= 0.0 {
                    return Err(Error::DivergentTransform { s: z.re });
                }
                Ok(w.powc(Complex64::new(-shape, 0.0)))
            }
            Lomax { mu_tail, tau0 } => {
                if z.norm() == 0.0 {
                    return Ok(Complex64::new(1.0, 0.0));
                }
                if z.im == 0.0 && z.re < 0.0 {
                    return Err(Error::DivergentTransform { s: z.re });
                }
                let modulus = z.norm();
                let phase = Complex64::from_polar(1.0, -z.arg());
                let density = move |rho: f64| -> Complex64 {
                    let tau = phase * rho;
                    let base = 1.0 + tau / tau0;
                    (mu_tail / tau0) * base.powc(Complex64::new(-mu_tail - 1.0, 0.0))
                };
                let pts = laplace::geometric_breakpoints(40.0 / modulus, 24);
                let integral = laplace::integrate(
                    |rho| density(rho) * (-modulus * rho).exp(),
                    &pts,
                    laplace::FORWARD_REL_TOL,
                    1e-300,
                )?;
                Ok(phase * integral)
            }
        }
    }

    /// Draw one waiting time.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Exponential { rate } => {
                let u: f64 = rng.gen();
                -(1.0 - u).ln() / rate
            }
            Gamma { shape, scale } => rand_distr::Gamma::new(shape, scale)
                .expect("parameters validated at construction")
                .sample(rng),
            Lomax { mu_tail, tau0 } => {
                let u: f64 = rng.gen();
                tau0 * ((1.0 - u).powf(-1.0 / mu_tail) - 1.0)
            }
        }
    }

    /// Horizon T with `survival(T) e^{-sT} <= eps`; used to truncate
    /// quadratures over this density.
    pub fn horizon(&self, s: f64, eps: f64) -> f64 {
        match *self {
            Exponential { rate } => {
                // e^{-(rate+s)T} = eps
                -eps.ln() / (rate + s.max(0.0))
            }
            Gamma { shape, scale } => {
                // crude but safe: exponential part dominates
                scale * (-eps.ln() + 5.0 * shape.max(1.0))
            }
            Lomax { mu_tail, tau0 } => {
                if s > 0.0 {
                    // bisect on the decreasing product q(T) e^{-sT}
                    let target = eps.ln();
                    let f = |t: f64| -mu_tail * (1.0 + t / tau0).ln() - s * t - target;
                    let mut hi = tau0.max(1.0 / s);
                    while f(hi) > 0.0 {
                        hi *= 2.0;
                    }
                    let mut lo = 0.0;
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if f(mid) > 0.0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    hi
                } else {
                    tau0 * eps.powf(-1.0 / mu_tail)
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Exponential { rate } => format!("exponential(rate={rate})"),
            Gamma { shape, scale } => format!("gamma(shape={shape},scale={scale})"),
            Lomax { mu_tail, tau0 } => format!("lomax(mu={mu_tail},tau0={tau0})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exponential_transform_closed_form() {
        let d = WaitingTimeDistribution::exponential(0.8).unwrap();
        assert!((d.laplace(1.2).unwrap() - 0.8 / 2.0).abs() < 1e-15);
        assert!(matches!(
            d.laplace(-0.8),
            Err(Error::DivergentTransform { .. })
        ));
    }

    #[test]
    fn densities_normalize() {
        for d in [
            WaitingTimeDistribution::exponential(1.7).unwrap(),
            WaitingTimeDistribution::gamma(2.0, 0.5).unwrap(),
            WaitingTimeDistribution::lomax(2.5, 1.0).unwrap(),
        ] {
            let t_max = d.horizon(0.0, 1e-12);
            let pts = laplace::geometric_breakpoints(t_max, 24);
            let mass =
                laplace::integrate_real(|t| d.density(t).unwrap(), &pts, 1e-11, 1e-300).unwrap();
            let tail = d.survival(t_max).unwrap();
            assert!(
                (mass + tail - 1.0).abs() < 1e-10,
                "{}: mass {mass} tail {tail}",
                d.label()
            );
        }
    }

    #[test]
    fn survival_transform_identity() {
        // p~(s) + s q~(s) = 1 on a log grid
        for d in [
            WaitingTimeDistribution::exponential(0.35).unwrap(),
            WaitingTimeDistribution::gamma(1.8, 2.2).unwrap(),
        ] {
            let mut s = 1e-3;
            while s <= 1e3 {
                let lhs = d.laplace(s).unwrap() + s * d.survival_laplace(s).unwrap();
                assert!((lhs - 1.0).abs() < 1e-9, "{} at s={s}", d.label());
                s *= 10.0;
            }
        }
    }

    #[test]
    fn lomax_transform_matches_independent_quadrature() {
        // oracle: dense trapezoid on a hand-transformed variable
        let d = WaitingTimeDistribution::lomax(2.5, 1.0).unwrap();
        let s = 1.0;
        let n = 400_000;
        // substitute tau = u/(1-u), u in [0,1)
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        for k in 0..n {
            let u0 = k as f64 * h;
            let u1 = (k + 1) as f64 * h;
            let f = |u: f64| {
                if u >= 1.0 {
                    return 0.0;
                }
                let tau = u / (1.0 - u);
                let jac = 1.0 / ((1.0 - u) * (1.0 - u));
                d.density(tau).unwrap() * (-s * tau).exp() * jac
            };
            acc += 0.5 * (f(u0) + f(u1)) * h;
        }
        let direct = d.laplace(s).unwrap();
        assert!(
            (direct - acc).abs() < 5e-9,
            "quadrature {direct} vs oracle {acc}"
        );
        // frozen reference for this point
        assert!((direct - 0.656_170_458_478_250_5).abs() < 1e-9);
    }

    #[test]
    fn lomax_complex_transform_is_conjugate_symmetric() {
        let d = WaitingTimeDistribution::lomax(2.5, 1.0).unwrap();
        for &z in &[
            Complex64::new(0.5, 2.0),
            Complex64::new(-0.4, 1.5),
            Complex64::new(-2.0, 6.0),
        ] {
            let a = d.laplace_complex(z).unwrap();
            let b = d.laplace_complex(z.conj()).unwrap();
            assert!((a.conj() - b).norm() < 1e-11, "z={z}");
        }
    }

    #[test]
    fn lomax_complex_agrees_with_real_axis() {
        let d = WaitingTimeDistribution::lomax(2.5, 1.0).unwrap();
        let via_complex = d.laplace_complex(Complex64::new(2.5, 0.0)).unwrap();
        let via_real = d.laplace(2.5).unwrap();
        assert!((via_complex.re - via_real).abs() < 1e-12);
        assert!(via_complex.im.abs() < 1e-12);
    }

    #[test]
    fn gamma_complex_principal_branch() {
        let d = WaitingTimeDistribution::gamma(2.0, 0.5).unwrap();
        // closed form must agree with direct quadrature for Re z > 0
        let z = Complex64::new(0.7, 1.3);
        let closed = d.laplace_complex(z).unwrap();
        let quad =
            laplace::forward_transform_complex(|t| d.density(t).unwrap(), z).unwrap();
        assert!((closed - quad).norm() < 1e-10);
    }

    #[test]
    fn sampler_mean_matches_exponential() {
        let d = WaitingTimeDistribution::exponential(0.8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let n = 1_000_000u64;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let x = d.sample(&mut rng);
            sum += x;
            sumsq += x * x;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        let se = (var / n as f64).sqrt();
        assert!(
            (mean - 1.25).abs() < 4.0 * se,
            "mean {mean} vs 1.25 (se {se})"
        );
    }

    #[test]
    fn sampler_matches_survival_for_lomax() {
        let d = WaitingTimeDistribution::lomax(2.5, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 200_000u64;
        let mut beyond = 0u64;
        let t = 2.0;
        for _ in 0..n {
            if d.sample(&mut rng) > t {
                beyond += 1;
            }
        }
        let frac = beyond as f64 / n as f64;
        let q = d.survival(t).unwrap();
        let se = (q * (1.0 - q) / n as f64).sqrt();
        assert!((frac - q).abs() < 4.0 * se);
    }

    #[test]
    fn means_and_tails() {
        assert_eq!(
            WaitingTimeDistribution::lomax(2.5, 1.0).unwrap().mean(),
            Some(1.0 / 1.5)
        );
        assert_eq!(
            WaitingTimeDistribution::lomax(0.9, 1.0).unwrap().mean(),
            None
        );
        let (a, mu) = WaitingTimeDistribution::lomax(2.5, 2.0).unwrap().tail().unwrap();
        assert!((a - 2.5 * 2.0f64.powf(2.5)).abs() < 1e-12);
        assert_eq!(mu, 2.5);
        assert!(WaitingTimeDistribution::exponential(1.0)
            .unwrap()
            .tail()
            .is_none());
    }

    #[test]
    fn density_at_zero_limits() {
        assert_eq!(
            WaitingTimeDistribution::exponential(0.8)
                .unwrap()
                .density_at_zero()
                .unwrap(),
            0.8
        );
        assert_eq!(
            WaitingTimeDistribution::lomax(2.5, 0.5)
                .unwrap()
                .density_at_zero()
                .unwrap(),
            5.0
        );
        assert!(matches!(
            WaitingTimeDistribution::gamma(0.5, 1.0)
                .unwrap()
                .density_at_zero(),
            Err(Error::UnboundedDensity)
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WaitingTimeDistribution::exponential(0.0).is_err());
        assert!(WaitingTimeDistribution::gamma(-1.0, 1.0).is_err());
        assert!(WaitingTimeDistribution::lomax(2.5, f64::INFINITY).is_err());
    }

    #[test]
    fn negative_time_rejected() {
        let d = WaitingTimeDistribution::exponential(1.0).unwrap();
        assert!(matches!(d.density(-0.1), Err(Error::NegativeTime(_))));
        assert!(matches!(d.survival(-2.0), Err(Error::NegativeTime(_))));
    }
}
