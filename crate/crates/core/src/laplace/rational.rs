//! Strictly proper rational Laplace transforms and their exact inversion by
//! partial fractions.

use num_complex::Complex64;

use super::poly;
use crate::error::{Error, Result};

/// Pole separation below which automatic pole detection refuses to treat
/// roots as simple.
pub const POLE_SEPARATION_TOL: f64 = 1e-8;

/// Imaginary residue tolerated when a nominally real quantity is assembled
/// from conjugate pairs.
pub const IMAG_TOL: f64 = 1e-10;

/// N(s)/D(s) with `deg N < deg D`, all poles in the closed left half-plane.
#[derive(Debug, Clone)]
pub struct RationalTransform {
    num: Vec<f64>,
    den: Vec<f64>,
    poles: Vec<(Complex64, usize)>,
}

impl RationalTransform {
    /// Build from coefficient vectors (ascending powers).  Poles are located
    /// numerically and treated as simple; root pairs closer than
    /// `POLE_SEPARATION_TOL` are rejected - supply multiplicities through
    /// [`RationalTransform::from_poles`] in that case.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        let dn = poly::degree(&den);
        let dm = poly::degree(&num);
        if dn == 0 {
            return Err(Error::InvalidParameter(
                "denominator must not be constant".into(),
            ));
        }
        if dm >= dn && !num.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter(format!(
                "transform must be strictly proper (deg N = {dm}, deg D = {dn})"
            )));
        }
        let roots = poly::roots_durand_kerner(&den).ok_or_else(|| {
            Error::InvalidParameter("denominator root search failed".into())
        })?;
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let sep = (roots[i] - roots[j]).norm();
                if sep < POLE_SEPARATION_TOL * scale {
                    return Err(Error::ConfluentPoles { separation: sep });
                }
            }
        }
        let poles = roots.into_iter().map(|r| (r, 1usize)).collect();
        Self::validated(num, den, poles)
    }

    /// Build from a numerator and an explicit pole list with multiplicities;
    /// the denominator is the monic expansion of the poles scaled by
    /// `den_scale`.  Poles must be closed under conjugation.
    pub fn from_poles(
        num: Vec<f64>,
        poles: Vec<(Complex64, usize)>,
        den_scale: f64,
    ) -> Result<Self> {
        if den_scale == 0.0 || !den_scale.is_finite() {
            return Err(Error::InvalidParameter(
                "denominator scale must be finite and nonzero".into(),
            ));
        }
        let mut expanded = Vec::new();
        for &(p, m) in &poles {
            if m == 0 {
                return Err(Error::InvalidParameter(
                    "pole multiplicity must be at least 1".into(),
                ));
            }
            for _ in 0..m {
                expanded.push(p);
            }
        }
        let den = poly::from_roots(&expanded, IMAG_TOL)
            .ok_or(Error::NonRealInverse { imag: IMAG_TOL })?
            .into_iter()
            .map(|c| c * den_scale)
            .collect::<Vec<_>>();
        let dn = poly::degree(&den);
        let dm = poly::degree(&num);
        if dm >= dn && !num.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter(format!(
                "transform must be strictly proper (deg N = {dm}, deg D = {dn})"
            )));
        }
        Self::validated(num, den, poles)
    }

    fn validated(
        num: Vec<f64>,
        den: Vec<f64>,
        poles: Vec<(Complex64, usize)>,
    ) -> Result<Self> {
        let scale = poles.iter().map(|(p, _)| p.norm()).fold(1.0, f64::max);
        for (p, _) in &poles {
            if p.re > 1e-12 * scale {
                return Err(Error::InvalidParameter(format!(
                    "pole {p} lies in the right half-plane"
                )));
            }
        }
        Ok(Self { num, den, poles })
    }

    pub fn numerator(&self) -> &[f64] {
        &self.num
    }

    pub fn denominator(&self) -> &[f64] {
        &self.den
    }

    pub fn poles(&self) -> &[(Complex64, usize)] {
        &self.poles
    }

    /// Evaluate N(z)/D(z).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::eval_complex(&self.num, z) / poly::eval_complex(&self.den, z)
    }

    /// Partial-fraction expansion turned into an explicit time-domain
    /// function `sum_k sum_i A_{k,i} t^{i-1} e^{p_k t} / (i-1)!`.
    pub fn time_domain(&self) -> Result<TimeDomain> {
        let mut terms = Vec::new();
        for &(p, m) in &self.poles {
            // D_k(s) = D(s) / (s - p)^m via m synthetic divisions.
            let mut dk: Vec<Complex64> =
                self.den.iter().map(|&c| Complex64::new(c, 0.0)).collect();
            for _ in 0..m {
                dk = synthetic_divide(&dk, p)?;
            }
            // Taylor-expand N and D_k around p, then divide the series.
            let n_taylor = poly::taylor_at(&self.num, p);
            let dk_taylor = taylor_at_complex(&dk, p);
            if dk_taylor[0].norm() == 0.0 {
                return Err(Error::InvalidParameter(
                    "pole multiplicity inconsistent with denominator".into(),
                ));
            }
            let series = poly::series_div(&n_taylor, &dk_taylor, m);
            // series[j] is the coefficient of 1/(s-p)^(m-j).
            let coeffs: Vec<Complex64> = (0..m).map(|i| series[m - 1 - i]).collect();
            terms.push(PoleTerm {
                pole: p,
                coeffs,
            });
        }
        let td = TimeDomain { terms };
        // Conjugate pairing must make the function real; probe a few times.
        let scale = td
            .terms
            .iter()
            .flat_map(|t| t.coeffs.iter())
            .map(|c| c.norm())
            .fold(1.0, f64::max);
        for &t in &[0.0, 0.37, 1.9] {
            let v = td.eval_complex(t);
            if v.im.abs() > IMAG_TOL * scale {
                return Err(Error::NonRealInverse { imag: v.im.abs() });
            }
        }
        Ok(td)
    }
}

/// Divide a monic-or-not polynomial (ascending complex coefficients) by
/// (s - p); errors if the remainder is not negligible.
fn synthetic_divide(c: &[Complex64], p: Complex64) -> Result<Vec<Complex64>> {
    let n = c.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "cannot deflate a constant polynomial".into(),
        ));
    }
    let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut carry = c[n - 1];
    for k in (0..n - 1).rev() {
        q[k] = carry;
        carry = c[k] + carry * p;
    }
    let scale = c.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if carry.norm() > 1e-8 * scale {
        return Err(Error::InvalidParameter(format!(
            "claimed pole is not a denominator root (remainder {:.3e})",
            carry.norm()
        )));
    }
    Ok(q)
}

fn taylor_at_complex(p: &[Complex64], z0: Complex64) -> Vec<Complex64> {
    let mut a = p.to_vec();
    let n = a.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for k in (j..n.saturating_sub(1)).rev() {
            let next = a[k + 1];
            a[k] += next * z0;
        }
        out[j] = a[j];
    }
    out
}

#[derive(Debug, Clone)]
struct PoleTerm {
    pole: Complex64,
    /// coeffs[i] multiplies t^i e^{pole t} / i!.
    coeffs: Vec<Complex64>,
}

/// Exact inverse transform of a [`RationalTransform`].
#[derive(Debug, Clone)]
pub struct TimeDomain {
    terms: Vec<PoleTerm>,
}

impl TimeDomain {
    fn eval_complex(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let mut poly_part = Complex64::new(0.0, 0.0);
            let mut tpow = 1.0;
            let mut fact = 1.0;
            for (i, &c) in term.coeffs.iter().enumerate() {
                if i > 0 {
                    tpow *= t;
                    fact *= i as f64;
                }
                poly_part += c * (tpow / fact);
            }
            acc += poly_part * (term.pole * t).exp();
        }
        acc
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_complex(t).re
    }
}

/// Invert a rational transform at a single time.
pub fn invert_rational(transform: &RationalTransform, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(transform.time_domain()?.eval(t))
}
