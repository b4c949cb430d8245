use std::f64::consts::PI;

use ncdchain::correlation::{chain_settings, sample_lhv_shared, sample_singlet_pair, xor_strings};
use ncdchain::huffman::{empirical_rate, expected_rate};
use ncdchain::information::{
    binary_entropy, compressed_size, joint_compressed_size_xor, ncd, triangle_slack, uniformity_check,
    zurek_distance_approx, CompressorSpec, LocalSizeMode,
};
use ncdchain::rng::rng_from_seed;
use ncdchain::{BitString, Bloch, Ncd};
use proptest::prelude::*;
use rand::Rng;

const ASSUMED: LocalSizeMode = LocalSizeMode::AssumedIncompressible;

fn random_bits(n: usize, seed: u64) -> BitString {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| rng.random::<bool>()).collect()
}

fn huff(k: usize) -> CompressorSpec {
    CompressorSpec::huffman(k).unwrap()
}

#[test]
fn entropy_fixtures() {
    let cases = [
        (7.0 / 9.0, 0.764),
        ((1.0 - std::f64::consts::FRAC_1_SQRT_2) / 2.0, 0.601),
        ((1.0 - (PI / 10.0).cos()) / 2.0, 0.166),
    ];
    for (p0, want) in cases {
        let h: f64 = binary_entropy(p0).unwrap();
        assert!((h - want).abs() <= 1e-3, "H({p0}) = {h}");
    }
}

#[test]
fn entropy_shape_on_grid() {
    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    for &p in &grid {
        let h = binary_entropy(p).unwrap();
        assert!((h - binary_entropy(1.0 - p).unwrap()).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&h));
    }
    for w in grid.windows(3) {
        let [a, b, c] = [w[0], w[1], w[2]].map(|p| binary_entropy(p).unwrap());
        assert!(b >= (a + c) / 2.0 - 1e-12, "concavity at {}", w[1]);
    }
}

#[test]
fn independent_strings_do_not_compress_jointly() {
    let n = 10_000;
    let x = random_bits(n, 1);
    let y = random_bits(n, 2);
    let joint = joint_compressed_size_xor(&x, &y, 2).unwrap() as f64;
    assert!((joint / (2.0 * n as f64) - 1.0).abs() < 0.02, "joint {joint}");
    let z: f64 = zurek_distance_approx(&x, &y, huff(2), ASSUMED).unwrap();
    assert!((z / (2.0 * n as f64) - 1.0).abs() < 0.02, "zurek {z}");
}

#[test]
fn orthogonal_settings_give_unit_ncd() {
    let a = Bloch::in_xz_plane(0.0);
    let b = Bloch::in_xz_plane(PI / 2.0);
    let (x, y) = sample_singlet_pair(&a, &b, 99_999, 3).unwrap();
    let d: Ncd = ncd(&x, &y, huff(9), ASSUMED).unwrap();
    assert!((d.value - 1.0).abs() < 0.02, "{d:?}");
}

#[test]
fn singlet_ncd_tracks_analytic_rate() {
    let chain = chain_settings::<f64>(3).unwrap();
    let n = 900_000;
    let (x, y) = sample_singlet_pair(&chain.alice_dirs[1], &chain.bob_dirs[0], n, 9).unwrap();
    let d: Ncd = ncd(&x, &y, huff(9), ASSUMED).unwrap();
    assert!((d.value - 0.199).abs() < 0.01, "{}", d.value);
    let z: f64 = zurek_distance_approx(&x, &y, huff(9), ASSUMED).unwrap();
    // 2C(xy) - C(x) - C(y) = 2(C(z) + n) - 2n = 2C(z).
    assert!((z - 2.0 * n as f64 * 0.199).abs() < 0.01 * 2.0 * n as f64 * 0.199, "{z}");
    // In assumed mode the distance is exactly the rate of the XOR string.
    assert_eq!(d.value, empirical_rate(&xor_strings(&x, &y).unwrap(), 9).unwrap());
    assert_eq!(z, 2.0 * (d.c_xy - n) as f64);
}

#[test]
fn measured_mode_is_close_to_assumed_for_singlet_strings() {
    let a = Bloch::in_xz_plane(0.0);
    let b = Bloch::in_xz_plane(PI / 4.0);
    let (x, y) = sample_singlet_pair(&a, &b, 100_000, 4).unwrap();
    let measured: Ncd = ncd(&x, &y, huff(2), LocalSizeMode::Measured).unwrap();
    let assumed: Ncd = ncd(&x, &y, huff(2), ASSUMED).unwrap();
    assert!(measured.c_x <= x.len() && measured.c_x as f64 > 0.99 * x.len() as f64);
    assert!((measured.value - assumed.value).abs() < 0.02);
    assert!((assumed.value - expected_rate(0.5 - 0.5 * (PI / 4.0).cos(), 2).unwrap()).abs() < 0.01);
}

#[test]
fn uniformity_detects_mixed_strings() {
    let uniform = random_bits(100_000, 5);
    let r = uniformity_check(&uniform, 10_000, 2).unwrap();
    assert_eq!(r.rates.len(), 10);
    assert!(r.max_deviation < 0.02);

    let mut mixed = BitString::zeros(50_000);
    mixed.extend_from(&random_bits(50_000, 6));
    // k = 2: the zero half codes at 1/k = 0.5, the random half at ~1.0.
    let r = uniformity_check(&mixed, 50_000, 2).unwrap();
    assert_eq!(r.rates[0], 0.5);
    assert!((r.max_deviation - 0.25).abs() < 0.01, "{r:?}");
    // k = 8: 0.125 against ~1.0.
    let r = uniformity_check(&mixed, 50_000, 8).unwrap();
    assert_eq!(r.rates[0], 0.125);
    assert!(r.max_deviation > 0.3, "{r:?}");
}

#[test]
fn lhv_triples_respect_triangle_slack() {
    let n = 100_000;
    let slack = triangle_slack(n, 10.0);
    let angles = [0.0, 0.15, 0.4, 0.9, 1.4, 2.2, 3.0];
    let dirs: Vec<Bloch> = angles.iter().map(|&t| Bloch::in_xz_plane(t)).collect();
    for seed in 0..4 {
        let (xs, _) = sample_lhv_shared(&dirs, &[], n, seed).unwrap();
        for k in [2, 4, 9] {
            let k = if n % k == 0 { k } else { 5 };
            let d = |i: usize, j: usize| ncd::<f64>(&xs[i], &xs[j], huff(k), ASSUMED).unwrap().value;
            for i in 0..xs.len() {
                for j in 0..xs.len() {
                    for m in 0..xs.len() {
                        assert!(d(i, m) <= d(i, j) + d(j, m) + slack, "k={k} ({i},{j},{m})");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ncd_is_symmetric(n_blocks in 1usize..500, sx in any::<u64>(), sy in any::<u64>(), k in prop::sample::select(vec![1usize, 2, 4, 8])) {
        let x = random_bits(n_blocks * k, sx);
        let y = random_bits(n_blocks * k, sy);
        for mode in [ASSUMED, LocalSizeMode::Measured] {
            let a: Ncd = ncd(&x, &y, huff(k), mode).unwrap();
            let b: Ncd = ncd(&y, &x, huff(k), mode).unwrap();
            prop_assert_eq!(a.value, b.value);
        }
        let self_distance: Ncd = ncd(&x, &x, huff(k), ASSUMED).unwrap();
        prop_assert_eq!(self_distance.value, 1.0 / k as f64);
    }

    #[test]
    fn huffman_payload_is_at_least_one_bit_per_block(n_blocks in 1usize..400, seed in any::<u64>(), k in 1usize..=8) {
        let z = random_bits(n_blocks * k, seed);
        let size = compressed_size(&z, huff(k)).unwrap();
        prop_assert!(size >= n_blocks);
    }
}
