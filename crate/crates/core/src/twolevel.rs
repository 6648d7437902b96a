//! Detection statistics of a generic two-level system under repeated
//! projective measurements at random times.
//!
//! Everything here reduces to two scalar functions of the inter-attempt
//! delay: the first-attempt detection probability and the persistence
//! probability `g(tau) = |<psi_c| e^{-iH tau} |psi_c>|^2` of the collapse
//! state.  For a two-level system `g` is a two-term cosine sum, which makes
//! its Laplace transform rational and the survival/detection transforms
//! closed-form in the Poissonian case and one quadrature away in general.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laplace::{self, invert_talbot, poly, TalbotConfig};
use crate::qcore::hamiltonian::TwoLevelHamiltonian;
use crate::qcore::scheme::DetectionScheme;
use crate::qcore::state::PureState;
use crate::qcore::stats::FirstDetectionStats;
use crate::qcore::waiting::WaitingTimeDistribution;

/// Resolvent denominators smaller than this raise [`Error::PoleHit`].
pub const POLE_TOL: f64 = 1e-14;

fn check_rate(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "measurement rate must be positive and finite, got {r}"
        )));
    }
    Ok(())
}

/// `<bra| e^{-iH tau} |ket>` through the eigendecomposition.
pub fn transition_amplitude(
    h: &TwoLevelHamiltonian,
    bra: &PureState,
    ket: &PureState,
    tau: f64,
) -> Complex64 {
    let (e_plus, e_minus) = h.energies();
    let vp = h.eigenvector_plus();
    let vm = h.eigenvector_minus();
    let phase_p = Complex64::from_polar(1.0, -e_plus * tau);
    let phase_m = Complex64::from_polar(1.0, -e_minus * tau);
    phase_p * bra.inner(&vp) * vp.inner(ket) + phase_m * bra.inner(&vm) * vm.inner(ket)
}

/// Unitary evolution `e^{-iH tau} |psi>`.
pub fn evolve(h: &TwoLevelHamiltonian, psi: &PureState, tau: f64) -> Result<PureState> {
    if !tau.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evolution time must be finite, got {tau}"
        )));
    }
    let (e_plus, e_minus) = h.energies();
    let vp = h.eigenvector_plus();
    let vm = h.eigenvector_minus();
    let cp = vp.inner(psi) * Complex64::from_polar(1.0, -e_plus * tau);
    let cm = vm.inner(psi) * Complex64::from_polar(1.0, -e_minus * tau);
    let pa = vp.amplitudes();
    let ma = vm.amplitudes();
    Ok(PureState::new_unchecked(
        cp * pa[0] + cm * ma[0],
        cp * pa[1] + cm * ma[1],
    ))
}

/// Probability that the *first* measurement attempt, made a delay `tau`
/// after the start, detects the system.
pub fn detect_probability(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    tau: f64,
) -> Result<f64> {
    if tau < 0.0 {
        return Err(Error::NegativeTime(tau));
    }
    let detected = scheme.detected_state();
    Ok(transition_amplitude(h, &detected, &PureState::basis_plus(), tau).norm_sqr())
}

/// Probability that the *first* measurement attempt fails, i.e. the squared
/// overlap of the evolved initial state with the collapse state.  Equals the
/// persistence probability when the initial and collapse states coincide
/// (scheme 1) and its complement when they differ (scheme 2).
pub fn first_failure_probability(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    tau: f64,
) -> Result<f64> {
    if tau < 0.0 {
        return Err(Error::NegativeTime(tau));
    }
    let collapse = scheme.collapse_state();
    Ok(transition_amplitude(h, &collapse, &PureState::basis_plus(), tau).norm_sqr())
}

/// Probability that the collapse state is found back in itself after `tau`;
/// equals the per-attempt failure probability for every attempt after the
/// first.
pub fn persistence_probability(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    tau: f64,
) -> Result<f64> {
    if tau < 0.0 {
        return Err(Error::NegativeTime(tau));
    }
    let collapse = scheme.collapse_state();
    Ok(transition_amplitude(h, &collapse, &collapse, tau).norm_sqr())
}

/// Squared off-diagonal matrix element `|<-|H|+>|^2`; the short-time
/// transition probability grows as `coupling^2 tau^2`.
pub fn transition_coupling_squared(h: &TwoLevelHamiltonian) -> f64 {
    h.matrix_element(&PureState::basis_minus(), &PureState::basis_plus())
        .norm_sqr()
}

/// Spectral form of the persistence probability: `g(tau) = c0 + c1 cos(gap
/// tau)` with `c0 = w+^2 + w-^2`, `c1 = 2 w+ w-` built from the overlap
/// weights of the initial state.  Identical for both schemes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CosineSum {
    pub c0: f64,
    pub c1: f64,
    pub delta: f64,
}

impl CosineSum {
    pub fn from_hamiltonian(h: &TwoLevelHamiltonian) -> Self {
        let (wp, wm) = h.overlap_weights();
        Self {
            c0: wp * wp + wm * wm,
            c1: 2.0 * wp * wm,
            delta: h.gap(),
        }
    }

    pub fn eval(&self, tau: f64) -> f64 {
        self.c0 + self.c1 * (self.delta * tau).cos()
    }

    /// `g~(s) = c0/s + c1 s/(s^2 + gap^2)`; converges only for s > 0.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::DivergentTransform { s });
        }
        Ok(self.c0 / s + self.c1 * s / (s * s + self.delta * self.delta))
    }

    /// Analytic continuation of `g~` to complex frequency (rational, so the
    /// continuation is the same expression); poles at 0 and +-i gap.
    pub fn laplace_complex(&self, z: Complex64) -> Result<Complex64> {
        let pole_up = Complex64::new(0.0, self.delta);
        let dist = z
            .norm()
            .min((z - pole_up).norm())
            .min((z + pole_up).norm());
        if dist < 1e-12 * (1.0 + self.delta) {
            return Err(Error::PoleHit { denominator: dist });
        }
        Ok(self.c0 / z + self.c1 * z / (z * z + self.delta * self.delta))
    }
}

/// `g~(s)` by direct adaptive quadrature of the time-domain persistence
/// probability; the slow independent route used to validate the spectral
/// expression.
pub fn g_laplace_quadrature(h: &TwoLevelHamiltonian, s: f64) -> Result<f64> {
    let collapse = DetectionScheme::Scheme1.collapse_state();
    laplace::forward_transform(
        |tau| transition_amplitude(h, &collapse, &collapse, tau).norm_sqr(),
        s,
        None,
    )
}

/// `g~(s)` from the two-term spectral form (closed form, fast route).
pub fn g_laplace_spectral(h: &TwoLevelHamiltonian, s: f64) -> Result<f64> {
    CosineSum::from_hamiltonian(h).laplace(s)
}

/// Spectral `g~` continued to complex frequency.
pub fn g_transform_spectral(h: &TwoLevelHamiltonian, z: Complex64) -> Result<Complex64> {
    CosineSum::from_hamiltonian(h).laplace_complex(z)
}

fn poisson_survival_complex(
    cs: &CosineSum,
    scheme: DetectionScheme,
    r: f64,
    z: Complex64,
) -> Result<Complex64> {
    let w = z + r;
    let gt = cs.laplace_complex(w)?;
    let denom = 1.0 - r * gt;
    if denom.norm() < POLE_TOL {
        return Err(Error::PoleHit {
            denominator: denom.norm(),
        });
    }
    match scheme {
        DetectionScheme::Scheme1 => Ok(1.0 / (w * denom)),
        DetectionScheme::Scheme2 => Ok((1.0 + r / w - 2.0 * r * gt) / (w * denom)),
    }
}

/// Laplace transform of the survival probability under attempts at
/// Poissonian times with rate `r`, evaluated at real `s >= 0`.
pub fn survival_transform_poisson(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
    s: f64,
) -> Result<f64> {
    check_rate(r)?;
    if s < 0.0 || !s.is_finite() {
        return Err(Error::DivergentTransform { s });
    }
    let cs = CosineSum::from_hamiltonian(h);
    let z = r + s;
    let gt = cs.laplace(z)?;
    let denom = 1.0 - r * gt;
    if denom.abs() < POLE_TOL {
        return Err(Error::PoleHit { denominator: denom });
    }
    match scheme {
        DetectionScheme::Scheme1 => Ok(1.0 / (z * denom)),
        DetectionScheme::Scheme2 => Ok((1.0 + r / z - 2.0 * r * gt) / (z * denom)),
    }
}

/// Complex-frequency continuation of [`survival_transform_poisson`], as
/// needed by contour inversion.
pub fn survival_transform_poisson_complex(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
    z: Complex64,
) -> Result<Complex64> {
    check_rate(r)?;
    let cs = CosineSum::from_hamiltonian(h);
    poisson_survival_complex(&cs, scheme, r, z)
}

/// Laplace transform of the first-detection density, `F~ = 1 - s S~`.
pub fn density_transform_poisson(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
    s: f64,
) -> Result<f64> {
    Ok(1.0 - s * survival_transform_poisson(h, scheme, r, s)?)
}

pub fn density_transform_poisson_complex(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
    z: Complex64,
) -> Result<Complex64> {
    Ok(1.0 - z * survival_transform_poisson_complex(h, scheme, r, z)?)
}

/// Mean first-detection time under Poissonian attempts: `S~(0)`.  Scheme 2
/// gives exactly `2/r` whenever the problem is non-degenerate.
pub fn mean_detection_time_poisson(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
) -> Result<f64> {
    check_rate(r)?;
    let cs = CosineSum::from_hamiltonian(h);
    let gt = cs.laplace(r)?;
    let denom = 1.0 - r * gt;
    if denom.abs() < POLE_TOL {
        return Err(Error::PoleHit { denominator: denom });
    }
    match scheme {
        DetectionScheme::Scheme1 => Ok(1.0 / (r * denom)),
        DetectionScheme::Scheme2 => Ok(2.0 / r),
    }
}

/// Shared cubic denominator of the Poissonian survival transform in the
/// `s` variable: `s^3 + 2r s^2 + (r^2 + gap^2) s + r c1 gap^2`.
fn poisson_denominator(cs: &CosineSum, r: f64) -> [f64; 4] {
    let d2 = cs.delta * cs.delta;
    [r * cs.c1 * d2, r * r + d2, 2.0 * r, 1.0]
}

/// Closed-form moments of the Poissonian first-detection time, obtained
/// from the rational survival transform and its derivative at `s = 0`.
pub fn poisson_stats(
    h: &TwoLevelHamiltonian,
    scheme: DetectionScheme,
    r: f64,
) -> Result<FirstDetectionStats> {
    check_rate(r)?;
    let cs = CosineSum::from_hamiltonian(h);
    let e = poisson_denominator(&cs, r);
    if e[0] == 0.0 {
        // Stationary collapse state: scheme 1 never detects and scheme 2
        // degenerates; the resolvent has a pole at s = 0.
        return Err(Error::PoleHit { denominator: 0.0 });
    }
    let d2 = cs.delta * cs.delta;
    // numerator/denominator (ascending in s) of S~ per scheme
    let (n, d): (Vec<f64>, Vec<f64>) = match scheme {
        DetectionScheme::Scheme1 => (vec![r * r + d2, 2.0 * r, 1.0], e.to_vec()),
        DetectionScheme::Scheme2 => {
            let n = vec![2.0 * r * cs.c1 * d2, r * r + d2, 2.0 * r, 1.0];
            // (r + s) * e on the denominator
            let mut d = vec![0.0; 5];
            for (i, &c) in e.iter().enumerate() {
                d[i] += r * c;
                d[i + 1] += c;
            }
            (n, d)
        }
    };
    let mean = n[0] / d[0];
    let second_moment = -2.0 * (n[1] * d[0] - n[0] * d[1]) / (d[0] * d[0]);
    let variance = second_moment - mean * mean;

    // Slowest decay rate of the density: the pole of S~ closest to the
    // imaginary axis.  Candidates are the cubic roots, plus s = -r for
    // scheme 2 when the weights break the c0 = c1 symmetry (then the
    // numerator no longer cancels that pole).
    let roots = poly::roots_durand_kerner(&e.to_vec())
        .ok_or_else(|| Error::InvalidParameter("pole search did not converge".into()))?;
    let mut slowest = f64::NEG_INFINITY;
    for root in &roots {
        slowest = slowest.max(root.re);
    }
    if scheme == DetectionScheme::Scheme2 && (cs.c1 - cs.c0).abs() > 1e-12 {
        slowest = slowest.max(-r);
    }
    if !(slowest < 0.0) {
        return Err(Error::PoleHit {
            denominator: slowest,
        });
    }
    let small_t_coefficient = match scheme {
        DetectionScheme::Scheme1 => r * transition_coupling_squared(h),
        DetectionScheme::Scheme2 => r,
    };
    Ok(FirstDetectionStats {
        mean,
        second_moment,
        variance,
        decay_time: -1.0 / slowest,
        small_t_coefficient,
    })
}

/// First-detection transforms for a general renewal measurement protocol:
/// attempts separated by i.i.d. waiting times with distribution `wait`.
///
/// The building blocks are the waiting-time transform `p~`, its survival
/// transform `q~`, and the persistence-weighted transform
/// `V~(s) = \int p(tau) g(tau) e^{-s tau} dtau`.
#[derive(Debug, Clone)]
pub struct ProtocolTransforms {
    cosine: CosineSum,
    coupling_sq: f64,
    wait: WaitingTimeDistribution,
    v0: f64,
}

impl ProtocolTransforms {
    pub fn new(h: &TwoLevelHamiltonian, wait: WaitingTimeDistribution) -> Result<Self> {
        let cosine = CosineSum::from_hamiltonian(h);
        // V~(0) through the spectral split: the cosine part of g turns into
        // the real part of p~ at +-i gap (exact, no oscillatory quadrature).
        let v0 = if cosine.delta == 0.0 {
            cosine.c0 + cosine.c1
        } else {
            let at_gap = wait.laplace_complex(Complex64::new(0.0, cosine.delta))?;
            cosine.c0 + cosine.c1 * at_gap.re
        };
        Ok(Self {
            cosine,
            coupling_sq: transition_coupling_squared(h),
            wait,
            v0,
        })
    }

    pub fn waiting(&self) -> &WaitingTimeDistribution {
        &self.wait
    }

    /// `V~(0)`: the average persistence probability per attempt.
    pub fn mean_persistence(&self) -> f64 {
        self.v0
    }

    pub fn p_tilde(&self, s: f64) -> Result<f64> {
        self.wait.laplace(s)
    }

    pub fn q_tilde(&self, s: f64) -> Result<f64> {
        self.wait.survival_laplace(s)
    }

    /// `V~(s)` by direct quadrature of `p g e^{-s tau}` for `s > 0`; the
    /// cached spectral value at `s = 0`.
    pub fn v_tilde(&self, s: f64) -> Result<f64> {
        if s < 0.0 || !s.is_finite() {
            return Err(Error::DivergentTransform { s });
        }
        if s == 0.0 {
            return Ok(self.v0);
        }
        let horizon = self.wait.horizon(s, 1e-15);
        let pts = laplace::geometric_breakpoints(horizon, 24);
        laplace::integrate_real(
            |tau| self.wait.density(tau).unwrap_or(0.0) * self.cosine.eval(tau) * (-s * tau).exp(),
            &pts,
            laplace::FORWARD_REL_TOL,
            1e-300,
        )
    }

    /// First-attempt analogue `U~(s) = \int p f e^{-s tau}` with `f` the
    /// probability that the *first* attempt fails.  When the initial state
    /// coincides with the collapse state (scheme 1) `f = g`, so `U~ = V~`;
    /// when it is the detected state (scheme 2) `f = 1 - g`, so
    /// `U~ = p~ - V~`.  Kept as an independent quadrature for exactly that
    /// consistency check.
    pub fn u_tilde(&self, scheme: DetectionScheme, s: f64) -> Result<f64> {
        if s < 0.0 || !s.is_finite() {
            return Err(Error::DivergentTransform { s });
        }
        if s == 0.0 {
            return Ok(match scheme {
                DetectionScheme::Scheme1 => self.v0,
                DetectionScheme::Scheme2 => 1.0 - self.v0,
            });
        }
        let first_attempt = move |tau: f64| -> f64 {
            let g = self.cosine.eval(tau);
            match scheme {
                DetectionScheme::Scheme1 => g,
                DetectionScheme::Scheme2 => 1.0 - g,
            }
        };
        let horizon = self.wait.horizon(s, 1e-15);
        let pts = laplace::geometric_breakpoints(horizon, 24);
        laplace::integrate_real(
            |tau| self.wait.density(tau).unwrap_or(0.0) * first_attempt(tau) * (-s * tau).exp(),
            &pts,
            laplace::FORWARD_REL_TOL,
            1e-300,
        )
    }

    pub fn p_tilde_complex(&self, z: Complex64) -> Result<Complex64> {
        self.wait.laplace_complex(z)
    }

    /// `V~` continued to complex frequency through the cosine split.
    pub fn v_tilde_complex(&self, z: Complex64) -> Result<Complex64> {
        let shift = Complex64::new(0.0, self.cosine.delta);
        let center = self.wait.laplace_complex(z)?;
        let upper = self.wait.laplace_complex(z - shift)?;
        let lower = self.wait.laplace_complex(z + shift)?;
        Ok(self.cosine.c0 * center + 0.5 * self.cosine.c1 * (upper + lower))
    }

    fn q_tilde_complex(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Err(Error::DivergentTransform { s: 0.0 });
        }
        Ok((1.0 - self.wait.laplace_complex(z)?) / z)
    }

    fn assemble_survival(
        &self,
        scheme: DetectionScheme,
        p: Complex64,
        q: Complex64,
        v: Complex64,
    ) -> Result<Complex64> {
        let denom = 1.0 - v;
        if denom.norm() < POLE_TOL {
            return Err(Error::PoleHit {
                denominator: denom.norm(),
            });
        }
        match scheme {
            DetectionScheme::Scheme1 => Ok(q / denom),
            DetectionScheme::Scheme2 => Ok(q * (1.0 + p - 2.0 * v) / denom),
        }
    }

    /// Survival transform `S~(s)`; at `s = 0` this is the mean
    /// first-detection time.
    pub fn survival_transform(&self, scheme: DetectionScheme, s: f64) -> Result<f64> {
        let p = self.p_tilde(s)?;
        let q = self.q_tilde(s)?;
        let v = self.v_tilde(s)?;
        self.assemble_survival(scheme, p.into(), q.into(), v.into())
            .map(|c| c.re)
    }

    pub fn survival_transform_complex(
        &self,
        scheme: DetectionScheme,
        z: Complex64,
    ) -> Result<Complex64> {
        let p = self.p_tilde_complex(z)?;
        let q = self.q_tilde_complex(z)?;
        let v = self.v_tilde_complex(z)?;
        self.assemble_survival(scheme, p, q, v)
    }

    /// `(1 - g)`-weighted waiting transform: the per-attempt detection
    /// success weight shared by both schemes' renewal numerators.  This is
    /// the same integral as the scheme-2 first-attempt transform.
    fn success_tilde(&self, s: f64) -> Result<f64> {
        self.u_tilde(DetectionScheme::Scheme2, s)
    }

    /// `p~ - V~` with the difference taken inside the cosine split, so the
    /// result stays accurate at large `|z|` where `p~` and `V~` approach
    /// each other and a literal subtraction would leave only roundoff.
    fn success_tilde_complex(&self, z: Complex64) -> Result<Complex64> {
        if self.cosine.delta == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let shift = Complex64::new(0.0, self.cosine.delta);
        let center = self.wait.laplace_complex(z)?;
        let upper = self.wait.laplace_complex(z - shift)?;
        let lower = self.wait.laplace_complex(z + shift)?;
        Ok(self.cosine.c1 * (center - 0.5 * (upper + lower)))
    }

    fn assemble_density(
        &self,
        scheme: DetectionScheme,
        success: Complex64,
        v: Complex64,
    ) -> Result<Complex64> {
        let denom = 1.0 - v;
        if denom.norm() < POLE_TOL {
            return Err(Error::PoleHit {
                denominator: denom.norm(),
            });
        }
        // Equal to 1 - z S~(z), but assembled from small building blocks:
        // at large |z| the product z S~ approaches 1 and the literal
        // subtraction would destroy the polynomially decaying density.
        match scheme {
            DetectionScheme::Scheme1 => Ok(success / denom),
            DetectionScheme::Scheme2 => Ok(v + success * success / denom),
        }
    }

    /// First-detection density transform `F~(s) = 1 - s S~(s)`.
    pub fn density_transform(&self, scheme: DetectionScheme, s: f64) -> Result<f64> {
        if s == 0.0 {
            return Ok(1.0);
        }
        let success = Complex64::new(self.success_tilde(s)?, 0.0);
        let v = Complex64::new(self.v_tilde(s)?, 0.0);
        Ok(self.assemble_density(scheme, success, v)?.re)
    }

    pub fn density_transform_complex(
        &self,
        scheme: DetectionScheme,
        z: Complex64,
    ) -> Result<Complex64> {
        let success = self.success_tilde_complex(z)?;
        let v = self.v_tilde_complex(z)?;
        self.assemble_density(scheme, success, v)
    }

    /// Mean first-detection time; `2 <tau>` for scheme 2 regardless of the
    /// waiting-time law, `<tau> / (1 - V~(0))` for scheme 1.
    pub fn mean_detection_time(&self, scheme: DetectionScheme) -> Result<f64> {
        let mean_tau = self.wait.mean().ok_or(Error::InfiniteMean)?;
        let denom = 1.0 - self.v0;
        if denom.abs() < POLE_TOL {
            return Err(Error::PoleHit { denominator: denom });
        }
        match scheme {
            DetectionScheme::Scheme1 => Ok(mean_tau / denom),
            DetectionScheme::Scheme2 => Ok(2.0 * mean_tau),
        }
    }

    /// Leading coefficient of the density near `t = 0`: the density starts
    /// as `c t^2` for scheme 1 and at the constant `c` for scheme 2.
    pub fn small_time_coefficient(&self, scheme: DetectionScheme) -> Result<f64> {
        let p0 = self.wait.density_at_zero()?;
        match scheme {
            DetectionScheme::Scheme1 => Ok(p0 * self.coupling_sq),
            DetectionScheme::Scheme2 => Ok(p0),
        }
    }

    /// Power-law tail `(amplitude, exponent)` of the detection density for
    /// heavy-tailed waiting times: the density falls off as
    /// `amplitude * t^-exponent`.
    pub fn tail_asymptote(&self, scheme: DetectionScheme) -> Result<(f64, f64)> {
        let (amp, mu) = self.wait.tail().ok_or(Error::NotHeavyTailed)?;
        // Integer exponents pick up logarithmic corrections that the pure
        // power-law form below does not capture.
        if (mu - mu.round()).abs() < 1e-12 {
            return Err(Error::IntegerExponent { mu_tail: mu });
        }
        match scheme {
            DetectionScheme::Scheme1 => {
                let denom = 1.0 - self.v0;
                if denom.abs() < POLE_TOL {
                    return Err(Error::PoleHit { denominator: denom });
                }
                Ok((amp / denom, mu + 1.0))
            }
            DetectionScheme::Scheme2 => Ok((2.0 * amp, mu + 1.0)),
        }
    }

    /// First-detection density at time `t` by contour inversion.
    pub fn density_at(&self, scheme: DetectionScheme, t: f64, config: TalbotConfig) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        if t == 0.0 {
            return match scheme {
                DetectionScheme::Scheme1 => Ok(0.0),
                DetectionScheme::Scheme2 => self.wait.density_at_zero(),
            };
        }
        invert_talbot(
            |z| self.density_transform_complex(scheme, z),
            t,
            config,
        )
    }

    /// Survival probability at time `t` by contour inversion.
    pub fn survival_at(
        &self,
        scheme: DetectionScheme,
        t: f64,
        config: TalbotConfig,
    ) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        if t == 0.0 {
            return Ok(1.0);
        }
        invert_talbot(
            |z| self.survival_transform_complex(scheme, z),
            t,
            config,
        )
    }
}
