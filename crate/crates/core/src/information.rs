//! Entropy estimates and compression-based distances.

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::huffman::{check_block_size, compressed_bits, empirical_rate};
use crate::scalar::Real;

/// Shannon entropy in bits of a binary source emitting 0 with probability `p0`.
pub fn binary_entropy<T: Real>(p0: T) -> Result<T> {
    if !(p0 >= T::zero() && p0 <= T::one()) {
        return Err(Error::InvalidProbability(p0.to_f64().unwrap_or(f64::NAN)));
    }
    let term = |p: T| if p > T::zero() { -p * p.log2() } else { T::zero() };
    Ok(term(p0) + term(T::one() - p0))
}

/// Fraction of zeros in `z`.
pub fn estimate_bit_probability(z: &BitString) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(z.count_zeros() as f64 / z.len() as f64)
}

/// Compressor `C(·)` used for compressed sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompressorSpec {
    /// Identity: `C(s) = |s|`.
    Raw,
    /// Block Huffman over `block_size`-bit blocks.
    XorBlockHuffman { block_size: usize },
}

impl CompressorSpec {
    pub fn huffman(block_size: usize) -> Result<Self> {
        check_block_size(block_size)?;
        Ok(Self::XorBlockHuffman { block_size })
    }
}

/// How `C(x)` and `C(y)` are obtained for a pair of strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalSizeMode {
    /// Compress each string on its own.
    Measured,
    /// Take `C(x) = C(y) = n`, as for locally uniform strings.
    AssumedIncompressible,
}

/// Compressed size in bits of a single string.
pub fn compressed_size(s: &BitString, spec: CompressorSpec) -> Result<usize> {
    match spec {
        CompressorSpec::Raw => Ok(s.len()),
        CompressorSpec::XorBlockHuffman { block_size } => compressed_bits(s, block_size),
    }
}

fn check_same_length(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    if x.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(x.len())
}

fn joint_size(x: &BitString, y: &BitString, spec: CompressorSpec) -> Result<usize> {
    let n = check_same_length(x, y)?;
    Ok(compressed_size(&x.xor(y)?, spec)? + n)
}

/// `C(xy) = C(x ⊕ y) + n`: the XOR string is compressed, `y` is stored as is.
pub fn joint_compressed_size_xor(x: &BitString, y: &BitString, k: usize) -> Result<usize> {
    joint_size(x, y, CompressorSpec::huffman(k)?)
}

/// Normalized compression distance together with the sizes it was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NcdValue<T> {
    pub value: T,
    pub c_x: usize,
    pub c_y: usize,
    pub c_xy: usize,
}

struct Sizes {
    c_x: usize,
    c_y: usize,
    c_xy: usize,
}

fn sizes(x: &BitString, y: &BitString, spec: CompressorSpec, mode: LocalSizeMode) -> Result<Sizes> {
    let c_xy = joint_size(x, y, spec)?;
    let (c_x, c_y) = match mode {
        LocalSizeMode::AssumedIncompressible => (x.len(), y.len()),
        LocalSizeMode::Measured => (compressed_size(x, spec)?, compressed_size(y, spec)?),
    };
    Ok(Sizes { c_x, c_y, c_xy })
}

/// `(C(xy) - min(C(x), C(y))) / max(C(x), C(y))`.
///
/// With [`LocalSizeMode::AssumedIncompressible`] this reduces to `C(x ⊕ y)/n`.
pub fn ncd<T: Real>(
    x: &BitString,
    y: &BitString,
    spec: CompressorSpec,
    mode: LocalSizeMode,
) -> Result<NcdValue<T>> {
    let Sizes { c_x, c_y, c_xy } = sizes(x, y, spec, mode)?;
    let lo = c_x.min(c_y);
    let hi = c_x.max(c_y);
    let num = T::from_usize(c_xy).unwrap() - T::from_usize(lo).unwrap();
    Ok(NcdValue { value: num / T::from_usize(hi).unwrap(), c_x, c_y, c_xy })
}

/// Zurek distance `2C(xy) - C(x) - C(y)`, with compressed sizes standing in
/// for Kolmogorov complexity.
pub fn zurek_distance_approx<T: Real>(
    x: &BitString,
    y: &BitString,
    spec: CompressorSpec,
    mode: LocalSizeMode,
) -> Result<T> {
    let Sizes { c_x, c_y, c_xy } = sizes(x, y, spec, mode)?;
    let f = |v: usize| T::from_usize(v).unwrap();
    Ok(f(2 * c_xy) - f(c_x) - f(c_y))
}

/// `c · log₂(n) / n`, the slack allowed in an NCD triangle inequality.
pub fn triangle_slack(n: usize, c: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    c * (n as f64).log2() / n as f64
}

/// Per-window compression rates of one string.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformityReport {
    pub window: usize,
    pub block_size: usize,
    pub rates: Vec<f64>,
    pub mean_rate: f64,
    pub max_deviation: f64,
}

/// Compresses each disjoint `window`-bit chunk of `s` on its own and reports
/// how far the chunk rates stray from their mean. Trailing bits that do not
/// fill a window are ignored.
pub fn uniformity_check(s: &BitString, window: usize, k: usize) -> Result<UniformityReport> {
    check_block_size(k)?;
    if window == 0 || !window.is_multiple_of(k) || window > s.len() {
        return Err(Error::InvalidWindow { window, len: s.len(), k });
    }
    let rates = (0..s.len() / window)
        .map(|w| empirical_rate(&s.slice(w * window, window), k))
        .collect::<Result<Vec<f64>>>()?;
    let mean_rate = rates.iter().sum::<f64>() / rates.len() as f64;
    let max_deviation = rates.iter().map(|r| (r - mean_rate).abs()).fold(0.0, f64::max);
    Ok(UniformityReport { window, block_size: k, rates, mean_rate, max_deviation })
}
