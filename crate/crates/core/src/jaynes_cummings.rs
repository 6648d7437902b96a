//! Closed-form first-detection statistics for a resonant Jaynes-Cummings
//! excitation sector under Poissonian probing.
//!
//! Inside the sector spanned by (|up, n-1>, |down, n>) the resonant model is
//! a two-level block with Rabi frequency `a = g sqrt(n)`.  Every transform
//! of interest is rational with a shared cubic denominator; in the scaled
//! variable `z = s/r` its roots solve
//!
//! ```text
//! lambda^3 + 2 lambda^2 + (1 + 2 mu) lambda + mu = 0,   mu = 2 a^2 / r^2,
//! ```
//!
//! which has exactly one real root `lambda_1` and a conjugate pair
//! `lambda_R +/- i lambda_I` for every `mu > 0`.  The detection densities
//! are residue sums over those roots, the maximal time scale is
//! `-1/(r lambda_1)`, and the optimal rates come out of the closed-form
//! moments.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laplace::RationalTransform;
use crate::optimize::{minimize_scalar, Bracket};
use crate::qcore::hamiltonian::TwoLevelHamiltonian;
use crate::qcore::scheme::DetectionScheme;
use crate::qcore::stats::FirstDetectionStats;

/// Conjugate-pair half-separation below which residue sums switch to the
/// confluent (double real pole) expressions.
pub const CONFLUENT_TOL: f64 = 1e-8;

/// Number of log-spaced rates scanned when bracketing the maximal-time
/// minimum.
const RATE_SCAN_POINTS: usize = 50;

/// A resonant Jaynes-Cummings sector probed at Poisson rate `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcSector {
    g: f64,
    n: u32,
    omega_c: f64,
    r: f64,
}

impl JcSector {
    pub fn new(g: f64, n: u32, omega_c: f64, r: f64) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling must be positive and finite, got {g}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidParameter(
                "sector index n must be at least 1".into(),
            ));
        }
        if !omega_c.is_finite() {
            return Err(Error::InvalidParameter(
                "cavity frequency must be finite".into(),
            ));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "measurement rate must be positive and finite, got {r}"
            )));
        }
        Ok(Self { g, n, omega_c, r })
    }

    pub fn coupling(&self) -> f64 {
        self.g
    }

    pub fn excitation(&self) -> u32 {
        self.n
    }

    pub fn cavity_frequency(&self) -> f64 {
        self.omega_c
    }

    pub fn rate(&self) -> f64 {
        self.r
    }

    /// Same sector probed at a different rate.
    pub fn with_rate(mut self, r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "measurement rate must be positive and finite, got {r}"
            )));
        }
        self.r = r;
        Ok(self)
    }

    /// Rabi frequency `a = g sqrt(n)`.
    pub fn rabi_frequency(&self) -> f64 {
        self.g * f64::from(self.n).sqrt()
    }

    /// Dimensionless scale `mu = 2 a^2 / r^2`, recomputed from the current
    /// parameters on every call.
    pub fn mu_scale(&self) -> f64 {
        let a = self.rabi_frequency();
        2.0 * a * a / (self.r * self.r)
    }

    /// The two-level block of this sector.
    pub fn hamiltonian(&self) -> TwoLevelHamiltonian {
        TwoLevelHamiltonian::jaynes_cummings(self.g, self.n, self.omega_c)
            .expect("sector parameters validated at construction")
    }
}

/// Roots of the scaled resolvent cubic: the single real root and the
/// conjugate pair, which always satisfies `lambda_R < lambda_1 < 0` and
/// `lambda_I > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub lambda_1: f64,
    pub lambda_re: f64,
    pub lambda_im: f64,
}

impl CubicRoots {
    /// The conjugate pair as complex numbers (upper first).
    pub fn complex_pair(&self) -> (Complex64, Complex64) {
        let upper = Complex64::new(self.lambda_re, self.lambda_im);
        (upper, upper.conj())
    }

    /// Residuals of the three symmetric-function identities
    /// (sum, pair sum, product) against the cubic coefficients.
    pub fn vieta_residuals(&self, mu: f64) -> [f64; 3] {
        let modulus_sq = self.lambda_re * self.lambda_re + self.lambda_im * self.lambda_im;
        [
            self.lambda_1 + 2.0 * self.lambda_re + 2.0,
            2.0 * self.lambda_1 * self.lambda_re + modulus_sq - 1.0 - 2.0 * mu,
            self.lambda_1 * modulus_sq + mu,
        ]
    }

    /// `|P(root)|` for each root of the monic cubic with parameter `mu`.
    pub fn polynomial_residuals(&self, mu: f64) -> [f64; 3] {
        let eval = |z: Complex64| -> f64 {
            (((z + 2.0) * z + (1.0 + 2.0 * mu)) * z + mu).norm()
        };
        let (upper, lower) = self.complex_pair();
        [
            eval(Complex64::new(self.lambda_1, 0.0)),
            eval(upper),
            eval(lower),
        ]
    }
}

/// Discriminant of the resolvent cubic; strictly negative for every
/// `mu > 0`, so one real root plus a conjugate pair is guaranteed.
pub fn cubic_discriminant(mu: f64) -> f64 {
    (-4.0 + (13.0 - 32.0 * mu) * mu) * mu
}

fn cubic_eval(lambda: f64, mu: f64) -> f64 {
    ((lambda + 2.0) * lambda + (1.0 + 2.0 * mu)) * lambda + mu
}

fn cubic_derivative(lambda: f64, mu: f64) -> f64 {
    (3.0 * lambda + 4.0) * lambda + 1.0 + 2.0 * mu
}

/// Solve the resolvent cubic for `mu > 0`.
///
/// The real root comes from the real-branch Cardano formula and is polished
/// by a few Newton steps, which repairs the cancellation the closed form
/// suffers at extreme `mu`.  The conjugate pair is then reconstructed from
/// the root sum and product, so those two identities hold exactly by
/// construction and the remaining residuals are bounded by the polished
/// accuracy of the real root.
pub fn cubic_roots(mu: f64) -> Result<CubicRoots> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidMu(mu));
    }
    let mut lambda_1 = if mu > 1e30 {
        // The Cardano intermediates overflow long before f64 does; here the
        // real root is -1/2 + 1/(16 mu - 2), i.e. -1/2 to machine precision.
        -0.5
    } else {
        let d0 = 1.0 - 6.0 * mu;
        let d1 = -2.0 - 9.0 * mu;
        // d1^2 - 4 d0^3 = -27 * discriminant > 0: the square root is real,
        // and pairing it with the negative d1 avoids cancellation.
        let root = (d1 * d1 - 4.0 * d0 * d0 * d0).sqrt();
        let c = (0.5 * (d1 - root)).cbrt();
        -(2.0 + c + d0 / c) / 3.0
    };
    for _ in 0..3 {
        let slope = cubic_derivative(lambda_1, mu);
        if slope.abs() > 0.0 {
            lambda_1 -= cubic_eval(lambda_1, mu) / slope;
        }
    }
    if !(lambda_1 < 0.0) || !lambda_1.is_finite() {
        return Err(Error::InvalidMu(mu));
    }
    let lambda_re = -(2.0 + lambda_1) / 2.0;
    let modulus_sq = -mu / lambda_1;
    let lambda_im = (modulus_sq - lambda_re * lambda_re).max(0.0).sqrt();
    Ok(CubicRoots {
        lambda_1,
        lambda_re,
        lambda_im,
    })
}

/// Scaled scheme-1 detection density: `F_r(t) = r * G1(mu, r t)`.
///
/// Residue sum over the cubic roots written with real arithmetic only: a
/// pure exponential from the real root plus a damped oscillation at
/// frequency `lambda_I` from the pair.
fn profile_scheme1(mu: f64, roots: &CubicRoots, z: f64) -> f64 {
    let l1 = roots.lambda_1;
    let lr = roots.lambda_re;
    let li = roots.lambda_im;
    if li < CONFLUENT_TOL {
        return confluent_scheme1(mu, l1, lr, z);
    }
    let dd = (l1 - lr) * (l1 - lr) + li * li;
    let osc = ((l1 - lr) * (li * z).sin() + li * (li * z).cos()) / (li * dd);
    mu * ((l1 * z).exp() / dd - (lr * z).exp() * osc)
}

/// Scaled scheme-2 detection density: `F_r(t) = r * G2(mu, r t)`, residue
/// sum with numerator `mu + lambda (lambda + 1)` at each root.
fn profile_scheme2(mu: f64, roots: &CubicRoots, z: f64) -> f64 {
    let l1 = roots.lambda_1;
    let lr = roots.lambda_re;
    let li = roots.lambda_im;
    if li < CONFLUENT_TOL {
        return confluent_scheme2(mu, l1, lr, z);
    }
    let dd = (l1 - lr) * (l1 - lr) + li * li;
    let rho_1 = (mu + l1 * (l1 + 1.0)) / dd;
    // residue at the upper pole: n(lambda) / P'(lambda)
    let num_re = mu + lr * (lr + 1.0) - li * li;
    let num_im = li * (2.0 * lr + 1.0);
    let den_re = -2.0 * li * li;
    let den_im = 2.0 * li * (lr - l1);
    let den_sq = den_re * den_re + den_im * den_im;
    let rho_re = (num_re * den_re + num_im * den_im) / den_sq;
    let rho_im = (num_im * den_re - num_re * den_im) / den_sq;
    rho_1 * (l1 * z).exp()
        + 2.0 * (lr * z).exp() * (rho_re * (li * z).cos() - rho_im * (li * z).sin())
}

/// Double-pole limit of [`profile_scheme1`]: inverse transform of
/// `mu / ((s - l1)(s - ld)^2)`.
fn confluent_scheme1(mu: f64, l1: f64, ld: f64, z: f64) -> f64 {
    let gap = ld - l1;
    mu * ((l1 * z).exp() / (gap * gap) + (ld * z).exp() * (z / gap - 1.0 / (gap * gap)))
}

/// Double-pole limit of [`profile_scheme2`]: inverse transform of
/// `(mu + s(s+1)) / ((s - l1)(s - ld)^2)`.
fn confluent_scheme2(mu: f64, l1: f64, ld: f64, z: f64) -> f64 {
    let gap = ld - l1;
    let n = |s: f64| mu + s * (s + 1.0);
    let n_prime = 2.0 * ld + 1.0;
    n(l1) * (l1 * z).exp() / (gap * gap)
        + (ld * z).exp() * ((n_prime + z * n(ld)) / gap - n(ld) / (gap * gap))
}

/// First-detection density at time `t` when the detected state is reached
/// by a transition (the initial state survives a failed first measurement).
pub fn pdf_scheme1(sector: &JcSector, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mu = sector.mu_scale();
    let roots = cubic_roots(mu)?;
    Ok(sector.r * profile_scheme1(mu, &roots, sector.r * t))
}

/// First-detection density at time `t` for the return problem (detected
/// state equals the initial state); starts at the finite value `r`.
pub fn pdf_scheme2(sector: &JcSector, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mu = sector.mu_scale();
    let roots = cubic_roots(mu)?;
    Ok(sector.r * profile_scheme2(mu, &roots, sector.r * t))
}

/// Closed-form Laplace transform of the persistence probability
/// `g(tau) = cos^2(a tau)`: `(2 a^2 + s^2) / (s (4 a^2 + s^2))`.
pub fn jc_g_laplace(sector: &JcSector, s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::DivergentTransform { s });
    }
    let a2 = {
        let a = sector.rabi_frequency();
        a * a
    };
    Ok((2.0 * a2 + s * s) / (s * (4.0 * a2 + s * s)))
}

/// The shared cubic denominator `D(s) = s^3 + 2 r s^2 + (r^2 + 4 a^2) s
/// + 2 a^2 r` as explicit poles `r * lambda_k`.
fn sector_poles(sector: &JcSector) -> Result<Vec<(Complex64, usize)>> {
    let roots = cubic_roots(sector.mu_scale())?;
    let (upper, lower) = roots.complex_pair();
    let r = sector.r;
    Ok(vec![
        (Complex64::new(r * roots.lambda_1, 0.0), 1),
        (upper * r, 1),
        (lower * r, 1),
    ])
}

/// Rational Laplace transform of the survival probability.
pub fn survival_transform(
    sector: &JcSector,
    scheme: DetectionScheme,
) -> Result<RationalTransform> {
    let r = sector.r;
    let a = sector.rabi_frequency();
    let a2 = a * a;
    let num = match scheme {
        DetectionScheme::Scheme1 => vec![r * r + 4.0 * a2, 2.0 * r, 1.0],
        DetectionScheme::Scheme2 => vec![4.0 * a2, r, 1.0],
    };
    RationalTransform::from_poles(num, sector_poles(sector)?, 1.0)
}

/// Rational Laplace transform of the first-detection density.
pub fn density_transform(
    sector: &JcSector,
    scheme: DetectionScheme,
) -> Result<RationalTransform> {
    let r = sector.r;
    let a = sector.rabi_frequency();
    let a2 = a * a;
    let num = match scheme {
        DetectionScheme::Scheme1 => vec![2.0 * a2 * r],
        DetectionScheme::Scheme2 => vec![2.0 * a2 * r, r * r, r],
    };
    RationalTransform::from_poles(num, sector_poles(sector)?, 1.0)
}

/// Closed-form moments for scheme 1:
/// `mean = 2/r + r/(2 a^2)`, `variance = 4/r^2 + r^2/(4 a^4)`.
pub fn moments_scheme1(sector: &JcSector) -> Result<FirstDetectionStats> {
    let r = sector.r;
    let a = sector.rabi_frequency();
    let a2 = a * a;
    let mean = 2.0 / r + r / (2.0 * a2);
    let variance = 4.0 / (r * r) + r * r / (4.0 * a2 * a2);
    Ok(FirstDetectionStats {
        mean,
        second_moment: variance + mean * mean,
        variance,
        decay_time: maximal_time(sector)?,
        small_t_coefficient: r * a2,
    })
}

/// Moments for scheme 2: the mean is exactly `2/r` for any coupling; the
/// second moment comes from the exact derivative of the rational survival
/// transform at `s = 0`.
pub fn moments_scheme2(sector: &JcSector) -> Result<FirstDetectionStats> {
    let r = sector.r;
    let mean = 2.0 / r;
    let st = survival_transform(sector, DetectionScheme::Scheme2)?;
    let num = st.numerator();
    let den = st.denominator();
    // <t^2> = -2 dS~/ds at 0 for S~ = N/D: differentiate the quotient.
    let second_moment =
        -2.0 * (num[1] * den[0] - num[0] * den[1]) / (den[0] * den[0]);
    Ok(FirstDetectionStats {
        mean,
        second_moment,
        variance: second_moment - mean * mean,
        decay_time: maximal_time(sector)?,
        small_t_coefficient: r,
    })
}

/// The rate minimizing the scheme-1 mean, with the mean at that rate:
/// `(2 a, 2 / a)`.  The scheme-2 mean `2/r` decreases forever, so no finite
/// optimum exists there.
pub fn optimal_rate(sector: &JcSector, scheme: DetectionScheme) -> Result<(f64, f64)> {
    match scheme {
        DetectionScheme::Scheme1 => {
            let a = sector.rabi_frequency();
            Ok((2.0 * a, 2.0 / a))
        }
        DetectionScheme::Scheme2 => Err(Error::NoFiniteOptimum),
    }
}

/// Maximal time scale `t_m = -1/(r lambda_1)`: the reciprocal of the
/// slowest decay rate of the detection density, identical for both schemes.
pub fn maximal_time(sector: &JcSector) -> Result<f64> {
    let roots = cubic_roots(sector.mu_scale())?;
    Ok(-1.0 / (sector.r * roots.lambda_1))
}

/// Amplitude of the slowest exponential mode of the detection density: the
/// real-root residue, so `F_r(t) ~ amplitude * exp(-t / t_m)` at late times
/// (up to the damped oscillation from the conjugate pair).
pub fn late_time_amplitude(sector: &JcSector, scheme: DetectionScheme) -> Result<f64> {
    let mu = sector.mu_scale();
    let roots = cubic_roots(mu)?;
    let l1 = roots.lambda_1;
    let slope = cubic_derivative(l1, mu);
    let num = match scheme {
        DetectionScheme::Scheme1 => mu,
        DetectionScheme::Scheme2 => mu + l1 * (l1 + 1.0),
    };
    Ok(sector.r * num / slope)
}

/// Minimize the maximal time scale over the rate at fixed `(g, n)`:
/// a 50-point log-grid scan of `r` over `[1e-3 r*, 1e3 r*]` establishes the
/// bracket, golden-section refines it.  Returns `(r_m, t_m(r_m))`.
pub fn minimize_maximal_time(sector: &JcSector) -> Result<(f64, f64)> {
    let r_star = 2.0 * sector.rabi_frequency();
    let objective =
        |r: f64| -> Result<f64> { maximal_time(&sector.with_rate(r)?) };
    let lo = 1e-3 * r_star;
    let span = 1e6f64;
    let mut best = (0usize, f64::INFINITY);
    let mut values = [0.0; RATE_SCAN_POINTS];
    let mut rates = [0.0; RATE_SCAN_POINTS];
    for (k, (rate, value)) in rates.iter_mut().zip(values.iter_mut()).enumerate() {
        *rate = lo * span.powf(k as f64 / (RATE_SCAN_POINTS - 1) as f64);
        *value = objective(*rate)?;
        if *value < best.1 {
            best = (k, *value);
        }
    }
    if best.0 == 0 || best.0 == RATE_SCAN_POINTS - 1 {
        return Err(Error::MonotoneFunction);
    }
    let bracket = Bracket::new(
        rates[best.0 - 1],
        rates[best.0],
        rates[best.0 + 1],
        values[best.0 - 1],
        values[best.0],
        values[best.0 + 1],
    )?;
    let (r_m, t_m) = minimize_scalar(objective, &bracket, 1e-10)?;
    debug_assert!(
        (r_m - r_star).abs() > 1e-6 * r_star,
        "maximal-time minimizer should not coincide with the mean minimizer"
    );
    Ok((r_m, t_m))
}
