use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalization slack tolerated at construction.
pub const NORM_TOL: f64 = 1e-12;

/// Pure state of the two-level system, stored in the fixed computational
/// basis (|+>, |->).  By convention |+> is the state the protocol starts in;
/// which of the two states gets measured depends on the detection scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amp: [Complex64; 2],
}

impl PureState {
    /// Build a state from its two amplitudes.  Rejects non-finite entries and
    /// norms further than `NORM_TOL` from one.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        if !a0.is_finite() || !a1.is_finite() {
            return Err(Error::InvalidParameter(
                "state amplitudes must be finite".into(),
            ));
        }
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state norm {norm} differs from 1 by more than {NORM_TOL:e}"
            )));
        }
        Ok(Self { amp: [a0, a1] })
    }

    /// Normalize the given amplitudes, rejecting the zero vector.
    pub fn normalized(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidParameter(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Ok(Self {
            amp: [a0 / norm, a1 / norm],
        })
    }

    /// Carries unit norm by construction; used where the caller guarantees it
    /// (unitary evolution of an already valid state).
    pub(crate) fn new_unchecked(a0: Complex64, a1: Complex64) -> Self {
        debug_assert!((a0.norm_sqr() + a1.norm_sqr() - 1.0).abs() < 1e-9);
        Self { amp: [a0, a1] }
    }

    /// The initial state |+> = (1, 0).
    pub fn basis_plus() -> Self {
        Self {
            amp: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    /// The orthogonal basis state |-> = (0, 1).
    pub fn basis_minus() -> Self {
        Self {
            amp: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.amp
    }

    pub fn norm(&self) -> f64 {
        (self.amp[0].norm_sqr() + self.amp[1].norm_sqr()).sqrt()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amp[0].conj() * other.amp[0] + self.amp[1].conj() * other.amp[1]
    }

    /// Transition probability `|<self|other>|^2`.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_states_are_orthonormal() {
        let p = PureState::basis_plus();
        let m = PureState::basis_minus();
        assert_eq!(p.inner(&p), Complex64::new(1.0, 0.0));
        assert_eq!(p.inner(&m), Complex64::new(0.0, 0.0));
        assert_eq!(m.norm(), 1.0);
    }

    #[test]
    fn rejects_unnormalized() {
        let r = PureState::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.0));
        assert!(r.is_err());
    }

    #[test]
    fn normalized_rescales() {
        let s = PureState::normalized(Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn overlap_is_symmetric() {
        let a = PureState::normalized(Complex64::new(1.0, 0.5), Complex64::new(-0.25, 2.0)).unwrap();
        let b = PureState::normalized(Complex64::new(0.3, -1.0), Complex64::new(1.5, 0.0)).unwrap();
        assert!((a.overlap(&b) - b.overlap(&a)).abs() < 1e-15);
    }
}
