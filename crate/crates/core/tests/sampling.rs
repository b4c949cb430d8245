use std::f64::consts::PI;

use ncdchain::correlation::{
    chain_settings, sample_lhv_pair, sample_lhv_shared, sample_singlet_pair, singlet_joint_distribution,
    xor_distribution, xor_strings, BlochVector,
};
use ncdchain::{BitString, Bloch};
use proptest::prelude::*;

fn zero_fraction(z: &BitString) -> f64 {
    z.count_zeros() as f64 / z.len() as f64
}

fn within_sigmas(observed: f64, p: f64, n: usize, sigmas: f64) -> bool {
    (observed - p).abs() <= sigmas * (p * (1.0 - p) / n as f64).sqrt()
}

/// Midpoint quadrature over the sphere of the probability that the two
/// half-space outcomes agree after Bob's flip, i.e. `sign(a·λ) ≠ sign(b·λ)`.
fn lhv_xor_zero_by_quadrature(a: [f64; 3], b: [f64; 3]) -> f64 {
    let (n_theta, n_phi) = (800, 1600);
    let mut hit = 0.0;
    let mut total = 0.0;
    for i in 0..n_theta {
        let theta = (i as f64 + 0.5) * PI / n_theta as f64;
        let w = theta.sin();
        for j in 0..n_phi {
            let phi = (j as f64 + 0.5) * 2.0 * PI / n_phi as f64;
            let l = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let da = a[0] * l[0] + a[1] * l[1] + a[2] * l[2];
            let db = b[0] * l[0] + b[1] * l[1] + b[2] * l[2];
            total += w;
            if (da >= 0.0) != (db >= 0.0) {
                hit += w;
            }
        }
    }
    hit / total
}

#[test]
fn lhv_agreement_formula_matches_quadrature() {
    for angle in [PI / 5.0, PI / 2.0, 0.3, 2.5] {
        let a = [0.0, 0.0, 1.0];
        let b = [angle.sin(), 0.0, angle.cos()];
        let q = lhv_xor_zero_by_quadrature(a, b);
        assert!((q - angle / PI).abs() < 2e-3, "angle {angle}: quadrature {q}");
    }
}

#[test]
fn singlet_xor_frequency_concentrates() {
    let chain = chain_settings::<f64>(3).unwrap();
    let (x, y) = sample_singlet_pair(&chain.alice_dirs[0], &chain.bob_dirs[0], 1_000_000, 2024).unwrap();
    let p0 = (1.0 - (PI / 10.0).cos()) / 2.0;
    assert!((p0 - 0.02447).abs() < 1e-5);
    assert!(within_sigmas(zero_fraction(&xor_strings(&x, &y).unwrap()), p0, x.len(), 4.0));
    assert!(within_sigmas(zero_fraction(&x), 0.5, x.len(), 4.0));
    assert!(within_sigmas(zero_fraction(&y), 0.5, y.len(), 4.0));
}

#[test]
fn lhv_xor_frequency_follows_angle() {
    let a = Bloch::in_xz_plane(0.0);
    for (angle, expected) in [(PI / 2.0, 0.5), (PI / 5.0, 0.2)] {
        let b = Bloch::in_xz_plane(angle);
        let (x, y) = sample_lhv_pair(&a, &b, 1_000_000, 77).unwrap();
        let z = xor_strings(&x, &y).unwrap();
        assert!(within_sigmas(zero_fraction(&z), expected, z.len(), 4.0), "angle {angle}");
        assert!(within_sigmas(zero_fraction(&x), 0.5, x.len(), 4.0));
        assert!(within_sigmas(zero_fraction(&y), 0.5, y.len(), 4.0));
    }
}

#[test]
fn shared_lhv_sampling_matches_pairwise_statistics() {
    let chain = chain_settings::<f64>(3).unwrap();
    let (xs, ys) = sample_lhv_shared(&chain.alice_dirs, &chain.bob_dirs, 400_000, 8).unwrap();
    assert_eq!((xs.len(), ys.len()), (3, 3));
    // Neighbouring settings are π/10 apart.
    let z = xor_strings(&xs[1], &ys[0]).unwrap();
    assert!(within_sigmas(zero_fraction(&z), 0.1, z.len(), 4.0));
}

#[test]
fn chain_invariants_hold_up_to_64_settings() {
    for n in 2..=64 {
        let c = chain_settings::<f64>(n).unwrap();
        let target = (PI / (4 * n - 2) as f64).cos();
        assert!((c.theta - PI / (2 * n - 1) as f64).abs() < 1e-15);
        for i in 0..n {
            assert!((c.alice_dirs[i].dot(&c.bob_dirs[i]) - target).abs() < 1e-12);
            assert!((c.alice_dirs[i].norm() - 1.0).abs() < 1e-12);
            assert!((c.bob_dirs[i].norm() - 1.0).abs() < 1e-12);
        }
        for i in 0..n - 1 {
            assert!((c.alice_dirs[i + 1].dot(&c.bob_dirs[i]) - target).abs() < 1e-12);
        }
        assert!(c.alice_dirs[0].dot(&c.bob_dirs[n - 1]).abs() < 1e-12);
    }
}

fn unit_vector() -> impl Strategy<Value = Bloch> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(t, p)| {
        BlochVector::new(t.sin() * p.cos(), t.sin() * p.sin(), t.cos()).unwrap()
    })
}

proptest! {
    #[test]
    fn singlet_distribution_is_normalized_with_flat_marginals(a in unit_vector(), b in unit_vector()) {
        let j = singlet_joint_distribution(&a, &b).unwrap();
        for p in [j.p00, j.p01, j.p10, j.p11] {
            prop_assert!((0.0..=1.0).contains(&p));
        }
        prop_assert!((j.total() - 1.0).abs() < 1e-12);
        prop_assert!((j.alice_zero() - 0.5).abs() < 1e-12);
        prop_assert!((j.bob_zero() - 0.5).abs() < 1e-12);
        let x = xor_distribution(&a, &b).unwrap();
        prop_assert!((x.p0 - (j.p00 + j.p11)).abs() < 1e-15);
        prop_assert!((x.p0 + x.p1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn samplers_are_reproducible(a in unit_vector(), b in unit_vector(), n in 1usize..3000, seed in any::<u64>()) {
        let first = sample_singlet_pair(&a, &b, n, seed).unwrap();
        prop_assert_eq!(&first, &sample_singlet_pair(&a, &b, n, seed).unwrap());
        prop_assert_eq!(first.0.len(), n);
        let lhv = sample_lhv_pair(&a, &b, n, seed).unwrap();
        prop_assert_eq!(&lhv, &sample_lhv_pair(&a, &b, n, seed).unwrap());
    }

    #[test]
    fn xor_is_involutive(bits in prop::collection::vec(any::<(bool, bool)>(), 0..500)) {
        let x: BitString = bits.iter().map(|b| b.0).collect();
        let y: BitString = bits.iter().map(|b| b.1).collect();
        let z = xor_strings(&x, &y).unwrap();
        prop_assert_eq!(xor_strings(&z, &y).unwrap(), x);
    }
}
