//! Derivative-free scalar minimization over the measurement rate: bracket
//! discovery by geometric expansion and golden-section refinement.
//!
//! The objectives pushed through here (mean detection time, maximal time
//! scale) are smooth but their derivatives pass through cubic roots, so a
//! bracketing method is the robust choice.

use crate::error::{Error, Result};

/// Golden ratio minus one; the section factor of the search.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Cap on objective evaluations inside [`minimize_scalar`].
pub const MAX_EVALS: usize = 200;

/// Cap on expansion steps inside [`find_bracket`].
pub const MAX_EXPANSIONS: usize = 60;

/// A triple `a < b < c` with `f(b) < min(f(a), f(c))`, guaranteeing an
/// interior minimum of a continuous `f`.  The objective values at the three
/// points are stored so refinement can reuse them.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    a: f64,
    b: f64,
    c: f64,
    fa: f64,
    fb: f64,
    fc: f64,
}

impl Bracket {
    /// Validate and build from points and their objective values.
    pub fn new(a: f64, b: f64, c: f64, fa: f64, fb: f64, fc: f64) -> Result<Self> {
        let ordered = a < b && b < c;
        let finite = [a, b, c, fa, fb, fc].iter().all(|v| v.is_finite());
        let interior_low = fb < fa && fb < fc;
        if !ordered || !finite || !interior_low {
            return Err(Error::BracketInvalid);
        }
        Ok(Self { a, b, c, fa, fb, fc })
    }

    /// Evaluate `f` at the three points and validate.
    pub fn evaluate<F>(f: F, a: f64, b: f64, c: f64) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        Self::new(a, b, c, f(a)?, f(b)?, f(c)?)
    }

    pub fn points(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn values(&self) -> (f64, f64, f64) {
        (self.fa, self.fb, self.fc)
    }
}

/// Expand geometrically from `r_init` (factor `growth`, default 2 when
/// `growth <= 1` is rejected) until a bracketing triple appears.  The search
/// walks downhill: upward from `r_init` while the objective keeps falling,
/// otherwise downward.  Fails with [`Error::MonotoneFunction`] after
/// [`MAX_EXPANSIONS`] steps, the expected outcome for objectives like the
/// scheme-2 mean `2/r` that have no interior minimum.
pub fn find_bracket<F>(f: F, r_init: f64, growth: f64) -> Result<Bracket>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(r_init > 0.0) || !r_init.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bracket search needs a positive starting rate, got {r_init}"
        )));
    }
    if !(growth > 1.0) || !growth.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bracket growth factor must exceed 1, got {growth}"
        )));
    }
    let mut x0 = r_init;
    let mut f0 = f(x0)?;
    let mut x1 = r_init * growth;
    let mut f1 = f(x1)?;
    // Walk in the downhill direction; `factor` > 1 walks up, < 1 walks down.
    let factor = if f1 < f0 {
        growth
    } else {
        std::mem::swap(&mut x0, &mut x1);
        std::mem::swap(&mut f0, &mut f1);
        1.0 / growth
    };
    for _ in 0..MAX_EXPANSIONS {
        let x2 = x0 * factor;
        let f2 = f(x2)?;
        if f2 > f0 {
            // f fell into x0 and rises again: (x1, x0, x2) ordered by value
            return if factor > 1.0 {
                Bracket::new(x1, x0, x2, f1, f0, f2)
            } else {
                Bracket::new(x2, x0, x1, f2, f0, f1)
            };
        }
        x1 = x0;
        f1 = f0;
        x0 = x2;
        f0 = f2;
    }
    Err(Error::MonotoneFunction)
}

/// Golden-section refinement of a validated bracket down to relative width
/// `tol`; returns the minimizer and its objective value.  The objective is
/// evaluated at most [`MAX_EVALS`] times.
pub fn minimize_scalar<F>(f: F, bracket: &Bracket, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(tol >= 1e-12) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "relative tolerance must be at least 1e-12, got {tol}"
        )));
    }
    let (mut a, _, mut c) = bracket.points();
    let mut evals = 0usize;
    let eval = |x: f64, n: &mut usize| -> Result<f64> {
        *n += 1;
        f(x)
    };
    let mut x1 = c - INV_PHI * (c - a);
    let mut x2 = a + INV_PHI * (c - a);
    let mut f1 = eval(x1, &mut evals)?;
    let mut f2 = eval(x2, &mut evals)?;
    while c - a > tol * (a.abs() + c.abs()) * 0.5 && evals < MAX_EVALS {
        if f1 < f2 {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - INV_PHI * (c - a);
            f1 = eval(x1, &mut evals)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (c - a);
            f2 = eval(x2, &mut evals)?;
        }
        if x2 - x1 <= f64::EPSILON * (x1.abs() + x2.abs()) {
            break;
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn quadratic_minimum_found() {
        let f = ok(|r| (r - 2.0) * (r - 2.0));
        let bracket = find_bracket(&f, 0.3, 2.0).unwrap();
        let (a, b, c) = bracket.points();
        assert!(a < 2.0 && 2.0 < c && a < b && b < c);
        let (r, v) = minimize_scalar(&f, &bracket, 1e-10).unwrap();
        assert!((r - 2.0).abs() < 1e-7, "r={r}");
        assert!(v < 1e-14);
    }

    #[test]
    fn increasing_function_has_no_bracket() {
        let f = ok(|r| r);
        assert!(matches!(find_bracket(&f, 1.0, 2.0), Err(Error::MonotoneFunction)));
    }

    #[test]
    fn decreasing_function_has_no_bracket() {
        // the scheme-2 mean shape: 2/r falls forever
        let f = ok(|r| 2.0 / r);
        assert!(matches!(find_bracket(&f, 1.0, 2.0), Err(Error::MonotoneFunction)));
    }

    #[test]
    fn invalid_bracket_rejected() {
        assert!(matches!(
            Bracket::new(1.0, 2.0, 3.0, 0.0, 1.0, 2.0),
            Err(Error::BracketInvalid)
        ));
        assert!(matches!(
            Bracket::new(3.0, 2.0, 1.0, 1.0, 0.0, 1.0),
            Err(Error::BracketInvalid)
        ));
    }

    #[test]
    fn tolerance_floor_enforced() {
        let f = ok(|r| (r - 2.0) * (r - 2.0));
        let bracket = Bracket::evaluate(&f, 1.0, 2.1, 4.0).unwrap();
        assert!(minimize_scalar(&f, &bracket, 1e-13).is_err());
    }

    #[test]
    fn eval_budget_respected() {
        use std::cell::Cell;
        let count = Cell::new(0usize);
        let f = |r: f64| -> Result<f64> {
            count.set(count.get() + 1);
            Ok((r - 2.0) * (r - 2.0))
        };
        let bracket = Bracket::evaluate(&f, 1e-3, 2.0, 1e3).unwrap();
        count.set(0);
        minimize_scalar(&f, &bracket, 1e-12).unwrap();
        assert!(count.get() <= MAX_EVALS);
    }

    #[test]
    fn asymmetric_minimum_found() {
        // skewed objective with minimum at e
        let f = ok(|r: f64| r.ln() * r.ln() - 2.0 * r.ln() + 5.0);
        let bracket = find_bracket(&f, 0.1, 2.0).unwrap();
        let (r, _) = minimize_scalar(&f, &bracket, 1e-10).unwrap();
        assert!((r - std::f64::consts::E).abs() < 1e-6, "r={r}");
    }

    #[test]
    fn bracket_search_walks_downward_too() {
        // minimum at 0.05, start above it
        let f = ok(|r: f64| (r.ln() - (0.05f64).ln()).powi(2));
        let bracket = find_bracket(&f, 3.0, 2.0).unwrap();
        let (a, _, c) = bracket.points();
        assert!(a < 0.05 && 0.05 < c);
        let (r, _) = minimize_scalar(&f, &bracket, 1e-10).unwrap();
        assert!((r - 0.05).abs() < 1e-7);
    }
}
