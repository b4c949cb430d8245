use std::f64::consts::PI;

use ncdchain::correlation::{chain_settings, sample_lhv_pair, sample_singlet_pair, BlochVector};
use ncdchain::huffman::{build_codebook, empirical_rate, expected_block_weights, expected_rate};
use ncdchain::inequality::{evaluate_chain, ChainConfig, Mode, Sampling, Source};
use ncdchain::information::{
    binary_entropy, estimate_bit_probability, ncd, zurek_distance_approx, CompressorSpec, LocalSizeMode,
};
use ncdchain::{BitString, Bloch, Ncd, Report};
use serde_json::{json, Map, Value};

use crate::args::{
    CompressorArg, ExpectedRateArgs, InequalityArgs, LocalSizeArg, ModeArg, NcdArgs, PairArgs, SamplingArg,
    SimulateArgs, SourceArg,
};
use crate::output::{header, num, round_floats};
use crate::CliError;

const COUNTERFACTUAL_NOTE: &str = "all setting pairs, including (x_1, y_N), are sampled directly; \
the simulator is not limited by measurement incompatibility";

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    round_floats(serde_json::to_value(v).expect("library types serialize"))
}

fn source(s: SourceArg) -> Source {
    match s {
        SourceArg::Singlet => Source::Singlet,
        SourceArg::Lhv => Source::Lhv,
    }
}

fn source_name(s: SourceArg) -> &'static str {
    match s {
        SourceArg::Singlet => "singlet",
        SourceArg::Lhv => "lhv",
    }
}

pub fn expected_rate_cmd(args: &ExpectedRateArgs) -> Result<Map<String, Value>, CliError> {
    let p0 = match (args.p0, args.dot) {
        (Some(p0), None) => p0,
        (None, Some(dot)) => {
            if !(-1.0..=1.0).contains(&dot) {
                return Err(usage(format!("--dot {dot} is outside [-1, 1]")));
            }
            (1.0 - dot) / 2.0
        }
        _ => return Err(usage("exactly one of --p0 and --dot is required")),
    };
    let rate: f64 = expected_rate(p0, args.k).map_err(usage)?;
    let entropy = binary_entropy(p0).map_err(usage)?;
    if let Some(path) = &args.dump_codebook {
        let book = build_codebook(&expected_block_weights(p0, args.k).map_err(usage)?).map_err(usage)?;
        std::fs::write(path, book.to_dump_string()).map_err(CliError::Io)?;
    }
    let mut doc = header("expected-rate");
    doc.insert(
        "config".into(),
        json!({ "p0": args.p0.map(num), "dot": args.dot.map(num), "k": args.k,
                "dump_codebook": args.dump_codebook.as_ref().map(|p| p.display().to_string()) }),
    );
    doc.insert("p0".into(), num(p0));
    doc.insert("k".into(), args.k.into());
    doc.insert("rate".into(), num(rate));
    doc.insert("binary_entropy".into(), num(entropy));
    doc.insert("redundancy".into(), num(rate - entropy));
    Ok(doc)
}

pub fn inequality_cmd(args: &InequalityArgs) -> Result<Map<String, Value>, CliError> {
    let mode = match args.mode {
        ModeArg::Analytic => Mode::Analytic,
        ModeArg::MonteCarlo => Mode::MonteCarlo,
    };
    let sampling = match args.sampling {
        SamplingArg::Independent => Sampling::Independent,
        SamplingArg::Shared => Sampling::Shared,
    };
    let default_c = if mode == Mode::Analytic { 0.0 } else { 1.0 };
    let correction_c = args.correction_c.unwrap_or(default_c);
    let config = match mode {
        Mode::Analytic => ChainConfig::analytic(args.n_settings, args.k, source(args.source)),
        Mode::MonteCarlo => ChainConfig::monte_carlo(args.n_settings, args.k, source(args.source), args.n_bits, args.seed),
    }
    .with_correction(correction_c)
    .with_sampling(sampling);
    let report: Report = evaluate_chain(&config).map_err(usage)?;

    let mut doc = header("inequality");
    doc.insert(
        "config".into(),
        json!({
            "n_settings": args.n_settings,
            "k": args.k,
            "mode": if mode == Mode::Analytic { "analytic" } else { "monte-carlo" },
            "source": source_name(args.source),
            "n_bits": args.n_bits,
            "seed": args.seed,
            "correction_c": num(correction_c),
            "sampling": match sampling { Sampling::Independent => "independent", Sampling::Shared => "shared" },
        }),
    );
    doc.insert("bound".into(), num(1.0 / (2 * args.n_settings - 1) as f64));
    doc.insert("report".into(), to_value(&report));
    let mut notes = vec![Value::from(
        "terms: N diagonal pairs (x_i, y_i), then N-1 pairs (x_{i+1}, y_i); lhs is (x_1, y_N)",
    )];
    if mode == Mode::MonteCarlo {
        notes.push(COUNTERFACTUAL_NOTE.into());
        notes.push(
            match sampling {
                Sampling::Independent => "each term uses a freshly sampled pair seeded by (seed, term index)",
                Sampling::Shared => "all terms share one string per setting from a common hidden variable",
            }
            .into(),
        );
        notes.push("each term is the NCD with C(x) = C(y) = n, i.e. the block-Huffman rate of x xor y".into());
    }
    doc.insert("notes".into(), Value::Array(notes));
    Ok(doc)
}

struct Pair {
    a: Bloch,
    b: Bloch,
    dot: f64,
    x: BitString,
    y: BitString,
    n_used: usize,
}

fn sample_pair(args: &PairArgs) -> Result<Pair, CliError> {
    let (a, b) = match (args.dot, args.n_settings) {
        (Some(dot), None) => {
            if !(-1.0..=1.0).contains(&dot) {
                return Err(usage(format!("--dot {dot} is outside [-1, 1]")));
            }
            (Bloch::in_xz_plane(0.0), Bloch::in_xz_plane(dot.acos()))
        }
        (None, Some(n)) => {
            let chain = chain_settings::<f64>(n).map_err(usage)?;
            let pick = |name: &str, idx: Option<usize>, dirs: &[Bloch]| -> Result<Bloch, CliError> {
                match idx {
                    Some(i) if (1..=n).contains(&i) => Ok(dirs[i - 1]),
                    _ => Err(usage(format!("--{name} must be in 1..={n}"))),
                }
            };
            (pick("alice", args.alice, &chain.alice_dirs)?, pick("bob", args.bob, &chain.bob_dirs)?)
        }
        _ => return Err(usage("give either --dot or --n-settings with --alice and --bob")),
    };
    if args.k == 0 || args.k > ncdchain::huffman::MAX_BLOCK_SIZE {
        return Err(usage(format!("--k must be in 1..={}", ncdchain::huffman::MAX_BLOCK_SIZE)));
    }
    let rem = args.n_bits % args.k;
    let n_used = match (rem, args.truncate) {
        (0, _) => args.n_bits,
        (_, true) => args.n_bits - rem,
        (_, false) => {
            return Err(usage(format!(
                "--n-bits {} is not divisible by --k {}; pass --truncate to drop the remainder",
                args.n_bits, args.k
            )))
        }
    };
    let (x, y) = match args.source {
        SourceArg::Singlet => sample_singlet_pair(&a, &b, n_used, args.seed),
        SourceArg::Lhv => sample_lhv_pair(&a, &b, n_used, args.seed),
    }
    .map_err(usage)?;
    Ok(Pair { dot: a.dot(&b).clamp(-1.0, 1.0), a, b, x, y, n_used })
}

fn pair_config(args: &PairArgs, pair: &Pair) -> Value {
    json!({
        "source": source_name(args.source),
        "dot": args.dot.map(num),
        "n_settings": args.n_settings,
        "alice": args.alice,
        "bob": args.bob,
        "n_bits": args.n_bits,
        "n_bits_used": pair.n_used,
        "k": args.k,
        "seed": args.seed,
        "truncate": args.truncate,
        "a": direction(&pair.a),
        "b": direction(&pair.b),
    })
}

fn direction(v: &BlochVector<f64>) -> Value {
    json!([num(v.x), num(v.y), num(v.z)])
}

pub fn simulate_cmd(args: &SimulateArgs) -> Result<Map<String, Value>, CliError> {
    let pair = sample_pair(&args.pair)?;
    let k = args.pair.k;
    let z = pair.x.xor(&pair.y).map_err(usage)?;
    let p0_analytic = match args.pair.source {
        SourceArg::Singlet => (1.0 - pair.dot) / 2.0,
        SourceArg::Lhv => pair.dot.acos() / PI,
    };
    let p0_empirical = estimate_bit_probability(&z).map_err(usage)?;
    let rate = empirical_rate(&z, k).map_err(usage)?;
    let expected: f64 = expected_rate(p0_analytic, k).map_err(usage)?;
    let entropy = binary_entropy(p0_analytic).map_err(usage)?;
    let entropy_empirical = binary_entropy(p0_empirical).map_err(usage)?;

    let mut doc = header("simulate");
    doc.insert("config".into(), pair_config(&args.pair, &pair));
    doc.insert(
        "results".into(),
        json!({
            "p0_analytic": num(p0_analytic),
            "p0_empirical": num(p0_empirical),
            "empirical_rate": num(rate),
            "expected_rate": num(expected),
            "binary_entropy": num(entropy),
            "binary_entropy_empirical": num(entropy_empirical),
            "gap_empirical_minus_expected": num(rate - expected),
            "gap_expected_minus_entropy": num(expected - entropy),
            "gap_empirical_minus_entropy": num(rate - entropy),
        }),
    );
    if args.emit_strings {
        doc.insert(
            "strings".into(),
            json!({ "x": pair.x.to_string(), "y": pair.y.to_string(), "z": z.to_string() }),
        );
    }
    Ok(doc)
}

pub fn ncd_cmd(args: &NcdArgs) -> Result<Map<String, Value>, CliError> {
    let pair = sample_pair(&args.pair)?;
    let spec = match args.compressor {
        CompressorArg::Huffman => CompressorSpec::huffman(args.pair.k).map_err(usage)?,
        CompressorArg::Raw => CompressorSpec::Raw,
    };
    let mode = match args.local_size {
        LocalSizeArg::Assumed => LocalSizeMode::AssumedIncompressible,
        LocalSizeArg::Measured => LocalSizeMode::Measured,
    };
    let d: Ncd = ncd(&pair.x, &pair.y, spec, mode).map_err(usage)?;
    let zurek: f64 = zurek_distance_approx(&pair.x, &pair.y, spec, mode).map_err(usage)?;

    let mut doc = header("ncd");
    let mut config = pair_config(&args.pair, &pair);
    config["local_size"] = match args.local_size {
        LocalSizeArg::Assumed => "assumed",
        LocalSizeArg::Measured => "measured",
    }
    .into();
    config["compressor"] = match args.compressor {
        CompressorArg::Huffman => "huffman",
        CompressorArg::Raw => "raw",
    }
    .into();
    doc.insert("config".into(), config);
    doc.insert("ncd".into(), to_value(&d));
    doc.insert("zurek_distance_approx".into(), num(zurek));
    doc.insert(
        "notes".into(),
        json!(["joint size is C(x xor y) + n", "zurek distance uses compressed sizes in place of Kolmogorov complexity"]),
    );
    Ok(doc)
}
