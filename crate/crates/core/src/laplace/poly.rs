//! Minimal polynomial arithmetic used by the rational-transform inverter.
//! Coefficients are ascending: p[0] + p[1] s + p[2] s^2 + ...

use num_complex::Complex64;

pub fn eval_complex(p: &[f64], z: Complex64) -> Complex64 {
    p.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Degree after stripping (exactly) zero leading coefficients.
pub fn degree(p: &[f64]) -> usize {
    let mut d = p.len().saturating_sub(1);
    while d > 0 && p[d] == 0.0 {
        d -= 1;
    }
    d
}

/// Expand prod_k (s - roots[k]) into monic real coefficients.  Roots must be
/// closed under conjugation; the imaginary residue of each coefficient is
/// checked against `imag_tol`.
pub fn from_roots(roots: &[Complex64], imag_tol: f64) -> Option<Vec<f64>> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    let scale = c.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if c.iter().any(|z| z.im.abs() > imag_tol * scale) {
        return None;
    }
    Some(c.iter().map(|z| z.re).collect())
}

/// Taylor coefficients of p around z0: returns q with
/// p(z0 + h) = sum_j q[j] h^j.  Repeated in-place synthetic division.
pub fn taylor_at(p: &[f64], z0: Complex64) -> Vec<Complex64> {
    let mut a: Vec<Complex64> = p.iter().map(|&c| Complex64::new(c, 0.0)).collect();
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

/// First `n` coefficients of the power series a(h)/b(h) (b[0] != 0).
pub fn series_div(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut q = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        let mut acc = if j < a.len() {
            a[j]
        } else {
            Complex64::new(0.0, 0.0)
        };
        for k in 0..j {
            let bk = if j - k < b.len() {
                b[j - k]
            } else {
                Complex64::new(0.0, 0.0)
            };
            acc -= q[k] * bk;
        }
        q[j] = acc / b[0];
    }
    q
}

/// All roots of a real-coefficient polynomial by Durand-Kerner iteration
/// with a Newton polish.  Good enough for the low degrees (<= 6) that occur
/// here; tests cross-check against a companion-matrix eigensolver.
pub fn roots_durand_kerner(p: &[f64]) -> Option<Vec<Complex64>> {
    let d = degree(p);
    if d == 0 {
        return Some(Vec::new());
    }
    let lead = p[d];
    let monic: Vec<f64> = p[..=d].iter().map(|&c| c / lead).collect();
    // Cauchy bound for the root radius.
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max);
    // Deterministic non-real starting points spread on a circle.
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius * 0.8, angle)
        })
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                return None;
            }
            let delta = eval_complex(&monic, z[i]) / denom;
            z[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // Newton polish each root.
    let dp = derivative(&monic);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let f = eval_complex(&monic, *zi);
            let fp = eval_complex(&dp, *zi);
            if fp.norm() > 0.0 {
                *zi -= f / fp;
            }
        }
        // Snap near-real roots onto the axis.
        if zi.im.abs() < 1e-12 * zi.norm().max(1.0) {
            *zi = Complex64::new(zi.re, 0.0);
        }
    }
    Some(z)
}
