//! The chain of NCD triangle inequalities.
//!
//! For settings `x_1..x_N` (Alice) and `y_1..y_N` (Bob), chaining triangle
//! inequalities through neighbouring settings gives
//!
//! ```text
//! NCD(x_1, y_N) <= Σ_i NCD(x_i, y_i) + Σ_i NCD(x_{i+1}, y_i) + O(N log n / n)
//! ```
//!
//! with `2N - 1` terms on the right. On the settings of
//! [`chain_settings`](crate::correlation::chain_settings) every singlet term
//! has the same rate `r` while the left side is 1, so the inequality fails
//! exactly when `r < 1/(2N - 1)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitString;
use crate::correlation::{chain_settings, sample_lhv_pair, sample_lhv_shared, sample_singlet_pair, SettingsChain};
use crate::error::{Error, Result};
use crate::huffman::{check_block_size, expected_rate};
use crate::information::{ncd, triangle_slack, zurek_distance_approx, CompressorSpec, LocalSizeMode, NcdValue};
use crate::rng::{derive_seed, RNG_ID};
use crate::scalar::Real;

/// Smallest accepted `n_bits / (N k)` in Monte Carlo mode.
pub const MIN_BITS_PER_SETTING_BLOCK: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Analytic,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Singlet,
    Lhv,
}

/// How strings are drawn for the terms of a Monte Carlo chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Every term gets a freshly sampled pair of strings.
    #[default]
    Independent,
    /// One string per setting, shared by every term that mentions it. Only
    /// the hidden-variable source defines all settings jointly.
    Shared,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub n_settings: usize,
    pub block_size: usize,
    pub mode: Mode,
    pub source: Source,
    pub n_bits: usize,
    pub seed: u64,
    pub correction_c: f64,
    pub sampling: Sampling,
}

impl ChainConfig {
    pub fn analytic(n_settings: usize, block_size: usize, source: Source) -> Self {
        Self {
            n_settings,
            block_size,
            mode: Mode::Analytic,
            source,
            n_bits: 0,
            seed: 0,
            correction_c: 0.0,
            sampling: Sampling::Independent,
        }
    }

    pub fn monte_carlo(n_settings: usize, block_size: usize, source: Source, n_bits: usize, seed: u64) -> Self {
        Self {
            n_settings,
            block_size,
            mode: Mode::MonteCarlo,
            source,
            n_bits,
            seed,
            correction_c: 1.0,
            sampling: Sampling::Independent,
        }
    }

    pub fn with_correction(mut self, c: f64) -> Self {
        self.correction_c = c;
        self
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_settings < 2 {
            return Err(Error::InvalidChain(self.n_settings));
        }
        check_block_size(self.block_size)?;
        if self.mode == Mode::MonteCarlo {
            if !self.n_bits.is_multiple_of(self.block_size) {
                return Err(Error::BlockRemainder { len: self.n_bits, k: self.block_size });
            }
            let min = MIN_BITS_PER_SETTING_BLOCK * self.n_settings * self.block_size;
            if self.n_bits < min {
                return Err(Error::SampleTooSmall { n_bits: self.n_bits, min });
            }
            if self.sampling == Sampling::Shared && self.source == Source::Singlet {
                return Err(Error::Unsupported("shared sampling needs a joint model of all settings; use the lhv source"));
            }
        }
        Ok(())
    }
}

/// Outcome of evaluating the chain inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport<T> {
    pub n_settings: usize,
    pub block_size_k: usize,
    pub mode: Mode,
    pub source: Source,
    pub lhs: T,
    /// `N` diagonal terms `(x_i, y_i)` followed by `N - 1` terms `(x_{i+1}, y_i)`.
    pub rhs_terms: Vec<T>,
    pub rhs_sum: T,
    pub correction: T,
    pub violated: bool,
    pub violated_without_correction: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_bits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

/// Probability that `x ⊕ y = 0` for two settings at dot product `dot`.
fn xor_zero_probability<T: Real>(source: Source, dot: T) -> T {
    let d = dot.max(-T::one()).min(T::one());
    match source {
        Source::Singlet => (T::one() - d) * T::lit(0.5),
        // Half-space model: p(x ⊕ y = 0) = angle / π.
        Source::Lhv => d.acos() / T::PI(),
    }
}

fn analytic_rates<T: Real>(n_settings: usize, k: usize, source: Source) -> Result<(T, T)> {
    let chain: SettingsChain<T> = chain_settings(n_settings)?;
    let (a, b) = chain.end_pair();
    let r_diag = expected_rate(xor_zero_probability(source, chain.neighbour_dot()), k)?;
    let r_lhs = expected_rate(xor_zero_probability(source, chain.alice_dirs[a].dot(&chain.bob_dirs[b])), k)?;
    Ok((r_diag, r_lhs))
}

/// Expected singlet rate of every neighbouring term and of the far pair.
pub fn chain_rates_analytic<T: Real>(n_settings: usize, k: usize) -> Result<(T, T)> {
    analytic_rates(n_settings, k, Source::Singlet)
}

/// Setting pairs in report order: the far pair first, then the right-hand terms.
fn term_pairs<T: Real>(chain: &SettingsChain<T>) -> Vec<(usize, usize)> {
    std::iter::once(chain.end_pair())
        .chain(chain.diagonal_pairs())
        .chain(chain.off_diagonal_pairs())
        .collect()
}

/// String pairs for every term, in [`term_pairs`] order.
fn sample_chain<T: Real>(config: &ChainConfig, chain: &SettingsChain<T>) -> Result<Vec<(BitString, BitString)>> {
    let pairs = term_pairs(chain);
    let n = config.n_bits;
    match config.sampling {
        Sampling::Independent => pairs
            .par_iter()
            .enumerate()
            .map(|(term, &(i, j))| {
                let seed = derive_seed(config.seed, term as u64);
                let (a, b) = (&chain.alice_dirs[i], &chain.bob_dirs[j]);
                match config.source {
                    Source::Singlet => sample_singlet_pair(a, b, n, seed),
                    Source::Lhv => sample_lhv_pair(a, b, n, seed),
                }
            })
            .collect(),
        Sampling::Shared => {
            let (xs, ys) = sample_lhv_shared(&chain.alice_dirs, &chain.bob_dirs, n, config.seed)?;
            Ok(pairs.iter().map(|&(i, j)| (xs[i].clone(), ys[j].clone())).collect())
        }
    }
}

pub fn evaluate_chain<T: Real>(config: &ChainConfig) -> Result<InequalityReport<T>> {
    config.validate()?;
    let n_settings = config.n_settings;
    let k = config.block_size;
    let (lhs, rhs_terms, correction) = match config.mode {
        Mode::Analytic => {
            let (r_diag, r_lhs) = analytic_rates::<T>(n_settings, k, config.source)?;
            (r_lhs, vec![r_diag; 2 * n_settings - 1], T::zero())
        }
        Mode::MonteCarlo => {
            let chain: SettingsChain<T> = chain_settings(n_settings)?;
            let spec = CompressorSpec::huffman(k)?;
            let values = sample_chain(config, &chain)?
                .par_iter()
                .map(|(x, y)| ncd::<T>(x, y, spec, LocalSizeMode::AssumedIncompressible).map(|d| d.value))
                .collect::<Result<Vec<T>>>()?;
            let correction = config.correction_c * n_settings as f64 * triangle_slack(config.n_bits, 1.0);
            (values[0], values[1..].to_vec(), T::lit(correction))
        }
    };
    let rhs_sum = rhs_terms.iter().fold(T::zero(), |acc, &t| acc + t);
    let is_mc = config.mode == Mode::MonteCarlo;
    Ok(InequalityReport {
        n_settings,
        block_size_k: k,
        mode: config.mode,
        source: config.source,
        lhs,
        rhs_terms,
        rhs_sum,
        correction,
        violated: lhs > rhs_sum + correction,
        violated_without_correction: lhs > rhs_sum,
        n_bits: is_mc.then_some(config.n_bits),
        seed: is_mc.then_some(config.seed),
        rng_id: is_mc.then(|| RNG_ID.to_string()),
        sampling: is_mc.then_some(config.sampling),
    })
}

/// Smallest chain length `N <= n_max` whose analytic singlet chain is violated.
pub fn minimal_violating_n(k: usize, n_max: usize) -> Result<Option<usize>> {
    check_block_size(k)?;
    for n in 2..=n_max {
        let report: InequalityReport<f64> = evaluate_chain(&ChainConfig::analytic(n, k, Source::Singlet))?;
        if report.violated {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The chain evaluated with the approximate Zurek distance instead of NCD.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZurekChain<T> {
    pub lhs: T,
    pub rhs_terms: Vec<T>,
    pub rhs_sum: T,
    /// Bits per string.
    pub n_bits: usize,
}

/// Monte Carlo Zurek-distance chain on the same strings [`evaluate_chain`] would sample.
pub fn zurek_chain_monte_carlo<T: Real>(config: &ChainConfig) -> Result<ZurekChain<T>> {
    if config.mode != Mode::MonteCarlo {
        return Err(Error::Unsupported("the Zurek chain is only sampled in monte carlo mode"));
    }
    config.validate()?;
    let chain: SettingsChain<T> = chain_settings(config.n_settings)?;
    let spec = CompressorSpec::huffman(config.block_size)?;
    let values = sample_chain(config, &chain)?
        .par_iter()
        .map(|(x, y)| zurek_distance_approx::<T>(x, y, spec, LocalSizeMode::AssumedIncompressible))
        .collect::<Result<Vec<T>>>()?;
    let rhs_sum = values[1..].iter().fold(T::zero(), |acc, &t| acc + t);
    Ok(ZurekChain { lhs: values[0], rhs_terms: values[1..].to_vec(), rhs_sum, n_bits: config.n_bits })
}

/// NCD of every term of a Monte Carlo chain, exposed for diagnostics.
pub fn chain_ncd_values<T: Real>(config: &ChainConfig) -> Result<Vec<NcdValue<T>>> {
    config.validate()?;
    let chain: SettingsChain<T> = chain_settings(config.n_settings)?;
    let spec = CompressorSpec::huffman(config.block_size)?;
    sample_chain(config, &chain)?
        .par_iter()
        .map(|(x, y)| ncd::<T>(x, y, spec, LocalSizeMode::AssumedIncompressible))
        .collect()
}
