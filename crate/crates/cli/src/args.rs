use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "ncdchain", version, about = "Compression rates, NCD and chain inequalities for singlet and classically correlated bit strings")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tree)]
    pub format: Format,
    /// Write the document to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute every published number and compare against it.
    ReproducePaper(ReproduceArgs),
    /// Analytic expected block-Huffman rate of a biased bit source.
    ExpectedRate(ExpectedRateArgs),
    /// Evaluate the chain inequality.
    Inequality(InequalityArgs),
    /// Sample one pair of strings and compare empirical, expected and entropy rates.
    Simulate(SimulateArgs),
    /// Sample one pair of strings and report their NCD and approximate Zurek distance.
    Ncd(NcdArgs),
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Master seed for the stochastic rows.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExpectedRateArgs {
    /// Probability of a 0 in the XOR string.
    #[arg(long, conflicts_with = "dot", required_unless_present = "dot")]
    pub p0: Option<f64>,
    /// Dot product a·b of the measurement directions (singlet: p0 = (1 - a·b)/2).
    #[arg(long, allow_hyphen_values = true)]
    pub dot: Option<f64>,
    #[arg(long)]
    pub k: usize,
    /// Write the codebook as `block<TAB>codeword` lines.
    #[arg(long)]
    pub dump_codebook: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Singlet,
    Lhv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Independent,
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocalSizeArg {
    Assumed,
    Measured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompressorArg {
    Huffman,
    Raw,
}

#[derive(Debug, Args)]
pub struct InequalityArgs {
    #[arg(long)]
    pub n_settings: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Analytic)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = SourceArg::Singlet)]
    pub source: SourceArg,
    /// Bits per string in monte-carlo mode.
    #[arg(long, default_value_t = 900_000)]
    pub n_bits: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Constant c in the correction c·N·log2(n)/n [default: 0 analytic, 1 monte-carlo].
    #[arg(long)]
    pub correction_c: Option<f64>,
    #[arg(long, value_enum, default_value_t = SamplingArg::Independent)]
    pub sampling: SamplingArg,
}

/// Which pair of directions to sample.
#[derive(Debug, Args)]
pub struct PairArgs {
    /// Dot product a·b; a is +z and b lies in the x-z plane.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n_settings", "alice", "bob"], required_unless_present = "n_settings")]
    pub dot: Option<f64>,
    /// Take the directions from the N-setting chain instead.
    #[arg(long, requires_all = ["alice", "bob"])]
    pub n_settings: Option<usize>,
    /// 1-based Alice setting index in the chain.
    #[arg(long)]
    pub alice: Option<usize>,
    /// 1-based Bob setting index in the chain.
    #[arg(long)]
    pub bob: Option<usize>,
    #[arg(long, value_enum, default_value_t = SourceArg::Singlet)]
    pub source: SourceArg,
    #[arg(long, default_value_t = 100_000)]
    pub n_bits: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Drop trailing bits when k does not divide n-bits instead of failing.
    #[arg(long)]
    pub truncate: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Include the sampled strings in the document.
    #[arg(long)]
    pub emit_strings: bool,
}

#[derive(Debug, Args)]
pub struct NcdArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = LocalSizeArg::Assumed)]
    pub local_size: LocalSizeArg,
    #[arg(long, value_enum, default_value_t = CompressorArg::Huffman)]
    pub compressor: CompressorArg,
}
