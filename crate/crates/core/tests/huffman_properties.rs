use ncdchain::huffman::{build_codebook, code_lengths, decode, encode, expected_rate, BlockWeights, HuffmanCodebook};
use ncdchain::information::binary_entropy;
use ncdchain::BitString;
use num_rational::Ratio;
use proptest::prelude::*;

/// Minimum of Σ w·len over all length assignments obeying Kraft's inequality.
/// Kraft-McMillan guarantees a prefix code exists for each such assignment.
fn brute_force_min_length(weights: &[u64]) -> u64 {
    let n = weights.len();
    if n == 1 {
        return weights[0];
    }
    let max_len = (n - 1) as u32;
    let mut lens = vec![1u32; n];
    let mut best = u64::MAX;
    loop {
        let kraft: u64 = lens.iter().map(|&l| 1u64 << (max_len - l)).sum();
        if kraft <= 1u64 << max_len {
            let cost = weights.iter().zip(&lens).map(|(w, &l)| w * l as u64).sum();
            best = best.min(cost);
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if lens[i] < max_len {
                lens[i] += 1;
                break;
            }
            lens[i] = 1;
            i += 1;
        }
    }
}

fn is_prefix_free(book: &HuffmanCodebook) -> bool {
    let codes: Vec<String> = book.iter().map(|(_, c)| c.to_string()).collect();
    codes
        .iter()
        .enumerate()
        .all(|(i, a)| codes.iter().enumerate().all(|(j, b)| i == j || !b.starts_with(a.as_str())))
}

fn multisets(max_size: usize, max_weight: u64) -> Vec<Vec<u64>> {
    fn rec(start: u64, max_weight: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for w in start..=max_weight {
            cur.push(w);
            rec(w, max_weight, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max_weight, max_size, &mut Vec::new(), &mut out);
    out
}

#[test]
fn matches_brute_force_optimum_on_small_alphabets() {
    let all = multisets(6, 8);
    assert_eq!(all.len(), 3002);
    for ws in all {
        let weights = BlockWeights::from_pairs(3, ws.iter().copied().enumerate()).unwrap();
        let book = build_codebook(&weights).unwrap();
        assert_eq!(book.weighted_length(&weights), brute_force_min_length(&ws), "weights {ws:?}");
        assert_eq!(book.len(), ws.len());
        assert!(is_prefix_free(&book));
        if ws.len() >= 2 {
            assert_eq!(book.kraft_sum(), 1.0);
        }
    }
}

#[test]
fn tie_breaking_never_changes_expected_length() {
    // Permuting which block carries which weight moves ties around but must
    // not change the optimal cost.
    let ws = [3u64, 3, 2, 2, 1, 1, 1];
    let reference = brute_force_min_length(&ws);
    for shift in 0..8 {
        let pairs = ws.iter().enumerate().map(|(i, &w)| ((i + shift) % 8, w));
        let weights = BlockWeights::from_pairs(3, pairs).unwrap();
        assert_eq!(build_codebook(&weights).unwrap().weighted_length(&weights), reference);
    }
}

#[test]
fn exact_rational_weights() {
    let w = |n, d| Ratio::new(n, d);
    let weights = BlockWeights::new(2, vec![w(2u64, 3), w(1, 9), w(1, 9), w(1, 9)]).unwrap();
    let book = build_codebook(&weights).unwrap();
    assert_eq!(book.to_dump_string(), "00\t0\n01\t10\n10\t110\n11\t111\n");
    // 2/3·1 + 1/9·2 + 1/9·3 + 1/9·3 = 14/9 bits per 2-bit block.
    assert_eq!(book.weighted_length(&weights), w(14, 9));
}

#[test]
fn float_and_count_weights_agree() {
    let counts = BlockWeights::from_pairs(2, [(0, 6u64), (1, 1), (2, 1), (3, 1)]).unwrap();
    let probs = BlockWeights::new(2, vec![6.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0]).unwrap();
    assert_eq!(code_lengths(&counts).unwrap(), code_lengths(&probs).unwrap());
}

#[test]
fn redundancy_bound_on_grid() {
    for step in 1..=99 {
        let p0 = step as f64 / 100.0;
        let h = binary_entropy(p0).unwrap();
        for k in 1..=12 {
            let r = expected_rate(p0, k).unwrap();
            assert!(h <= r + 1e-12 && r <= h + 1.0 / k as f64 + 1e-12, "p0={p0} k={k} r={r} h={h}");
        }
    }
}

#[test]
fn refinement_at_forty_five_degrees() {
    let p0 = (1.0 - std::f64::consts::FRAC_1_SQRT_2) / 2.0;
    let r2 = expected_rate(p0, 2).unwrap();
    let r4 = expected_rate(p0, 4).unwrap();
    let r8 = expected_rate(p0, 8).unwrap();
    assert!(r8 <= r4 && r4 <= r2);
}

#[test]
fn large_block_sizes_stay_consistent() {
    let r = expected_rate(0.3f64, 16).unwrap();
    let h = binary_entropy(0.3f64).unwrap();
    assert!(h <= r && r <= h + 1.0 / 16.0);
    assert_eq!(expected_rate(0.0f64, 24).unwrap(), 1.0 / 24.0);
}

fn bit_strings() -> impl Strategy<Value = (BitString, usize)> {
    (prop::sample::select(vec![1usize, 2, 4, 8]), 1usize..=1250, any::<u64>(), 0u8..=4).prop_map(
        |(k, blocks, seed, skew)| {
            // Skewed sources exercise long codewords as well as near-uniform ones.
            let mut state = seed | 1;
            let bits: BitString = (0..blocks * k)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % 16) < (8 >> skew) as u64
                })
                .collect();
            (bits, k)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encode_decode_roundtrip((z, k) in bit_strings()) {
        let enc = encode(&z, k).unwrap();
        prop_assert_eq!(decode(&enc.payload, &enc.codebook, enc.block_count).unwrap(), z.clone());
        prop_assert!(enc.payload.len() >= enc.block_count);
        prop_assert!(is_prefix_free(&enc.codebook));
        if enc.codebook.len() >= 2 {
            prop_assert!((enc.codebook.kraft_sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn truncated_payload_is_rejected((z, k) in bit_strings()) {
        let enc = encode(&z, k).unwrap();
        let mut short = enc.payload.clone();
        short.truncate(enc.payload.len() - 1);
        prop_assert!(decode(&short, &enc.codebook, enc.block_count).is_err());
    }
}
