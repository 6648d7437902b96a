//! Structural identities of the two detection schemes and the quantum
//! primitives they build on, swept over random Hamiltonians.

mod common;

use common::{log_grid, random_hermitian};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use qreset_core::twolevel::{evolve, first_failure_probability, persistence_probability};
use qreset_core::{DetectionScheme, WaitingTimeDistribution};

#[test]
fn first_attempt_identities_hold_over_random_sweep() {
    // Scheme 1 starts in the collapse state, so its first attempt fails
    // exactly as often as any later one: f = g.  Scheme 2 starts in the
    // detected state and by unitarity f = 1 - g.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let h = random_hermitian(&mut rng);
        for _ in 0..50 {
            let tau: f64 = rand::Rng::gen_range(&mut rng, 0.0..20.0);
            let g1 = persistence_probability(&h, DetectionScheme::Scheme1, tau).unwrap();
            let f1 = first_failure_probability(&h, DetectionScheme::Scheme1, tau).unwrap();
            let g2 = persistence_probability(&h, DetectionScheme::Scheme2, tau).unwrap();
            let f2 = first_failure_probability(&h, DetectionScheme::Scheme2, tau).unwrap();
            assert!((f1 - g1).abs() < 1e-12, "scheme1 f != g at tau={tau}");
            assert!((f2 + g2 - 1.0).abs() < 1e-12, "scheme2 f+g != 1 at tau={tau}");
            for p in [g1, f1, g2, f2] {
                assert!((-1e-12..=1.0 + 1e-12).contains(&p), "probability {p} out of range");
            }
        }
    }
}

#[test]
fn evolution_is_unitary_for_random_hamiltonians() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let h = random_hermitian(&mut rng);
        for scheme in [DetectionScheme::Scheme1, DetectionScheme::Scheme2] {
            let psi = scheme.detected_state();
            let tau: f64 = rand::Rng::gen_range(&mut rng, 0.0..10.0);
            let out = evolve(&h, &psi, tau).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn eigen_decomposition_reconstructs_the_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let h = random_hermitian(&mut rng);
        let (ep, em) = h.energies();
        let vp = h.eigenvector_plus();
        let vm = h.eigenvector_minus();
        let [p0, p1] = vp.amplitudes();
        let [m0, m1] = vm.amplitudes();
        let rebuilt = [
            [
                ep * p0 * p0.conj() + em * m0 * m0.conj(),
                ep * p0 * p1.conj() + em * m0 * m1.conj(),
            ],
            [
                ep * p1 * p0.conj() + em * m1 * m0.conj(),
                ep * p1 * p1.conj() + em * m1 * m1.conj(),
            ],
        ];
        let entries = h.entries();
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (rebuilt[i][j] - entries[i][j]).norm() < 1e-10,
                    "entry ({i},{j}) reconstruction off"
                );
            }
        }
        // Orthonormality of the eigenbasis.
        assert!(vp.inner(&vm).norm() < 1e-12);
        let (wp, wm) = h.overlap_weights();
        assert!((wp + wm - 1.0).abs() < 1e-12);
    }
}

#[test]
fn waiting_transform_pairs_with_survival_transform() {
    // p~(s) + s q~(s) = 1 links the density and survival transforms.
    let dists = [
        WaitingTimeDistribution::exponential(0.7).unwrap(),
        WaitingTimeDistribution::exponential(3.0).unwrap(),
        WaitingTimeDistribution::gamma(2.0, 0.7).unwrap(),
        WaitingTimeDistribution::gamma(0.5, 1.2).unwrap(),
        WaitingTimeDistribution::lomax(2.5, 1.0).unwrap(),
        WaitingTimeDistribution::lomax(1.5, 0.3).unwrap(),
    ];
    for dist in &dists {
        for s in log_grid(1e-3, 1e3, 25) {
            let p = dist.laplace(s).unwrap();
            let q = dist.survival_laplace(s).unwrap();
            assert!(
                (p + s * q - 1.0).abs() < 1e-9,
                "{}: identity violated at s={s}",
                dist.label()
            );
        }
    }
}

#[test]
fn complex_transforms_respect_conjugate_symmetry() {
    let dists = [
        WaitingTimeDistribution::exponential(1.1).unwrap(),
        WaitingTimeDistribution::gamma(2.0, 0.7).unwrap(),
        WaitingTimeDistribution::lomax(2.5, 1.0).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dist in &dists {
        for _ in 0..20 {
            let z = Complex64::new(
                rand::Rng::gen_range(&mut rng, 0.05..4.0),
                rand::Rng::gen_range(&mut rng, -6.0..6.0),
            );
            let v = dist.laplace_complex(z).unwrap();
            let vc = dist.laplace_complex(z.conj()).unwrap();
            assert!(
                (v.conj() - vc).norm() < 1e-12,
                "{}: conjugate symmetry broken at z={z}",
                dist.label()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any valid waiting-time parameters give a normalized, monotone law.
    #[test]
    fn waiting_laws_are_well_formed(
        rate in 0.05f64..20.0,
        shape in 0.2f64..8.0,
        scale in 0.05f64..5.0,
        mu in 1.05f64..6.0,
        tau0 in 0.05f64..5.0,
        tau in 0.0f64..30.0,
    ) {
        for dist in [
            WaitingTimeDistribution::exponential(rate).unwrap(),
            WaitingTimeDistribution::gamma(shape, scale).unwrap(),
            WaitingTimeDistribution::lomax(mu, tau0).unwrap(),
        ] {
            let d = dist.density(tau).unwrap();
            prop_assert!(d >= 0.0);
            let q = dist.survival(tau).unwrap();
            let q2 = dist.survival(tau + 0.5).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&q));
            prop_assert!(q2 <= q + 1e-12);
            let p = dist.laplace(1.0).unwrap();
            prop_assert!(p > 0.0 && p <= 1.0);
        }
    }

    // Persistence and failure stay inside [0, 1] for arbitrary couplings.
    #[test]
    fn probabilities_stay_bounded(
        a in -3.0f64..3.0,
        d in -3.0f64..3.0,
        bre in -2.0f64..2.0,
        bim in -2.0f64..2.0,
        tau in 0.0f64..50.0,
    ) {
        let c = Complex64::new;
        let h = qreset_core::TwoLevelHamiltonian::new(
            [[c(a, 0.0), c(bre, bim)], [c(bre, -bim), c(d, 0.0)]],
        ).unwrap();
        for scheme in [DetectionScheme::Scheme1, DetectionScheme::Scheme2] {
            let g = persistence_probability(&h, scheme, tau).unwrap();
            let f = first_failure_probability(&h, scheme, tau).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&g));
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        }
    }
}
