use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::state::PureState;

/// Largest Hermiticity violation accepted by the constructor.
pub const HERMITICITY_TOL: f64 = 1e-9;

/// Gap below which the spectrum counts as degenerate and the eigenbasis
/// reverts to the computational basis.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// A 2x2 Hermitian Hamiltonian with its eigendecomposition computed in
/// closed form at construction time.
///
/// Eigenvalues are sorted: `energies().0 >= energies().1`.  Eigenvectors are
/// exactly orthonormal (the second one is built as the orthogonal complement
/// of the first) and gauge-fixed so their largest component is real positive.
#[derive(Debug, Clone, Copy)]
pub struct TwoLevelHamiltonian {
    h: [[Complex64; 2]; 2],
    e_plus: f64,
    e_minus: f64,
    v_plus: [Complex64; 2],
    v_minus: [Complex64; 2],
}

fn gauge_fix(v: [Complex64; 2]) -> [Complex64; 2] {
    let pick = if v[0].norm_sqr() >= v[1].norm_sqr() {
        v[0]
    } else {
        v[1]
    };
    let n = pick.norm();
    if n == 0.0 {
        return v;
    }
    let phase = pick.conj() / n;
    [v[0] * phase, v[1] * phase]
}

impl TwoLevelHamiltonian {
    /// Build from matrix entries, row major.  Entries must be finite and
    /// Hermitian within `HERMITICITY_TOL`; the stored matrix is the exactly
    /// Hermitian average (H + H^dagger)/2.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        for row in &entries {
            for e in row {
                if !e.is_finite() {
                    return Err(Error::InvalidParameter(
                        "Hamiltonian entries must be finite".into(),
                    ));
                }
            }
        }
        let deviation = (entries[0][1] - entries[1][0].conj())
            .norm()
            .max(entries[0][0].im.abs())
            .max(entries[1][1].im.abs());
        if deviation > HERMITICITY_TOL {
            return Err(Error::NonHermitian { deviation });
        }

        let a = entries[0][0].re;
        let d = entries[1][1].re;
        let b = (entries[0][1] + entries[1][0].conj()) * 0.5;
        let h = [
            [Complex64::new(a, 0.0), b],
            [b.conj(), Complex64::new(d, 0.0)],
        ];

        let half_tr = 0.5 * (a + d);
        let half_diff = 0.5 * (a - d);
        let radius = half_diff.hypot(b.norm());
        let e_plus = half_tr + radius;
        let e_minus = half_tr - radius;

        let (v_plus, v_minus) = if 2.0 * radius < DEGENERACY_TOL {
            // (Near-)degenerate spectrum: any basis works, use the standard one.
            (
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            )
        } else {
            // Two equivalent row formulas for the E+ eigenvector; pick the one
            // whose entries avoid cancellation (E+ - a is tiny when a > d).
            let raw = if half_diff >= 0.0 {
                [Complex64::new(e_plus - d, 0.0), b.conj()]
            } else {
                [b, Complex64::new(e_plus - a, 0.0)]
            };
            let n = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
            let vp = gauge_fix([raw[0] / n, raw[1] / n]);
            // Orthogonal complement; exactly unit and orthogonal to vp.
            let vm = gauge_fix([-vp[1].conj(), vp[0].conj()]);
            (vp, vm)
        };

        Ok(Self {
            h,
            e_plus,
            e_minus,
            v_plus,
            v_minus,
        })
    }

    /// Resonant Jaynes-Cummings sector with `n` excitations: in the basis
    /// (|up, n-1>, |down, n>) the block is w_c (n - 1/2) I + g sqrt(n) sigma_x.
    /// The initial state |+> of the protocol is |up, n-1>.
    pub fn jaynes_cummings(g: f64, n: u32, omega_c: f64) -> Result<Self> {
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
        let diag = omega_c * (n as f64 - 0.5);
        let coupling = g * (n as f64).sqrt();
        Self::new([
            [Complex64::new(diag, 0.0), Complex64::new(coupling, 0.0)],
            [Complex64::new(coupling, 0.0), Complex64::new(diag, 0.0)],
        ])
    }

    /// Hermitized matrix entries.
    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.h
    }

    /// `(E_plus, E_minus)` with `E_plus >= E_minus`.
    pub fn energies(&self) -> (f64, f64) {
        (self.e_plus, self.e_minus)
    }

    /// Spectral gap `E_plus - E_minus >= 0`.
    pub fn gap(&self) -> f64 {
        self.e_plus - self.e_minus
    }

    pub fn eigenvector_plus(&self) -> PureState {
        PureState::new(self.v_plus[0], self.v_plus[1]).expect("eigenvector is unit by construction")
    }

    pub fn eigenvector_minus(&self) -> PureState {
        PureState::new(self.v_minus[0], self.v_minus[1])
            .expect("eigenvector is unit by construction")
    }

    /// `(|<E+|psi>|^2, |<E-|psi>|^2)`; sums to one for any unit `psi`.
    pub fn overlap_weights_for(&self, psi: &PureState) -> (f64, f64) {
        let a = psi.amplitudes();
        let wp = (self.v_plus[0].conj() * a[0] + self.v_plus[1].conj() * a[1]).norm_sqr();
        let wm = (self.v_minus[0].conj() * a[0] + self.v_minus[1].conj() * a[1]).norm_sqr();
        (wp, wm)
    }

    /// Overlap weights of the initial state |+>.
    pub fn overlap_weights(&self) -> (f64, f64) {
        (self.v_plus[0].norm_sqr(), self.v_minus[0].norm_sqr())
    }

    /// `H |psi>` (not normalized; not a state).
    pub fn apply(&self, psi: &PureState) -> [Complex64; 2] {
        let a = psi.amplitudes();
        [
            self.h[0][0] * a[0] + self.h[0][1] * a[1],
            self.h[1][0] * a[0] + self.h[1][1] * a[1],
        ]
    }

    /// `<phi| H |psi>`.
    pub fn matrix_element(&self, phi: &PureState, psi: &PureState) -> Complex64 {
        let hp = self.apply(psi);
        let f = phi.amplitudes();
        f[0].conj() * hp[0] + f[1].conj() * hp[1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_keeps_basis_vectors() {
        let h = TwoLevelHamiltonian::new([[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-2.0, 0.0)]])
            .unwrap();
        assert_eq!(h.energies(), (2.0, -2.0));
        let vp = h.eigenvector_plus().amplitudes();
        assert_eq!((vp[0].re, vp[1].re), (1.0, 0.0));
        // reversed order still sorts E+ >= E-
        let h = TwoLevelHamiltonian::new([[c(-2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(2.0, 0.0)]])
            .unwrap();
        assert_eq!(h.energies(), (2.0, -2.0));
        let vp = h.eigenvector_plus().amplitudes();
        assert_eq!((vp[0].re, vp[1].re), (0.0, 1.0));
    }

    #[test]
    fn jaynes_cummings_block_matches_closed_form() {
        let h = TwoLevelHamiltonian::jaynes_cummings(0.1, 37, 1.0).unwrap();
        let coupling = 0.1 * 37f64.sqrt();
        assert!((h.entries()[0][1].re - coupling).abs() < 1e-15);
        let (ep, em) = h.energies();
        assert!((ep - (36.5 + coupling)).abs() < 1e-12);
        assert!((em - (36.5 - coupling)).abs() < 1e-12);
        // symmetric block: both eigenvector weights are 1/2
        let (wp, wm) = h.overlap_weights();
        assert!((wp - 0.5).abs() < 1e-14);
        assert!((wm - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let r = TwoLevelHamiltonian::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]]);
        assert!(matches!(r, Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn tolerates_tiny_hermiticity_slack() {
        let r = TwoLevelHamiltonian::new([
            [c(1.0, 0.0), c(0.3, 0.2)],
            [c(0.3, -0.2 + 1e-10), c(-1.0, 0.0)],
        ]);
        assert!(r.is_ok());
    }

    #[test]
    fn degenerate_spectrum_reverts_to_standard_basis() {
        let h = TwoLevelHamiltonian::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        assert_eq!(h.gap(), 0.0);
        let vp = h.eigenvector_plus().amplitudes();
        assert_eq!((vp[0].re, vp[1].re), (1.0, 0.0));
    }

    #[test]
    fn eigenvectors_orthonormal_and_reconstruct() {
        // fixed generic complex Hermitian matrix
        let h = TwoLevelHamiltonian::new([
            [c(0.7, 0.0), c(-0.4, 0.9)],
            [c(-0.4, -0.9), c(-1.3, 0.0)],
        ])
        .unwrap();
        let vp = h.eigenvector_plus();
        let vm = h.eigenvector_minus();
        assert!(vp.inner(&vm).norm() < 1e-15);
        assert!((vp.norm() - 1.0).abs() < 1e-15);
        let (ep, em) = h.energies();
        // sum_E E |E><E| == H entrywise
        let vpa = vp.amplitudes();
        let vma = vm.amplitudes();
        for i in 0..2 {
            for j in 0..2 {
                let rec = vpa[i] * vpa[j].conj() * ep + vma[i] * vma[j].conj() * em;
                assert!(
                    (rec - h.entries()[i][j]).norm() < 1e-12,
                    "entry ({i},{j}) reconstruction off"
                );
            }
        }
        // eigenvalue equation through apply()
        let hv = h.apply(&vp);
        assert!((hv[0] - vpa[0] * ep).norm() < 1e-12);
        assert!((hv[1] - vpa[1] * ep).norm() < 1e-12);
    }

    #[test]
    fn weights_sum_to_one() {
        let h = TwoLevelHamiltonian::new([[c(0.2, 0.0), c(1.1, -0.7)], [c(1.1, 0.7), c(0.9, 0.0)]])
            .unwrap();
        let (wp, wm) = h.overlap_weights();
        assert!((wp + wm - 1.0).abs() < 1e-14);
        let s = PureState::normalized(c(0.3, 0.4), c(-0.8, 0.1)).unwrap();
        let (wp, wm) = h.overlap_weights_for(&s);
        assert!((wp + wm - 1.0).abs() < 1e-13);
    }
}
