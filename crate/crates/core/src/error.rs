use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid direction: norm {norm} is not within 1e-9 of 1")]
    InvalidDirection { norm: f64 },
    #[error("invalid settings chain: need at least 2 settings, got {0}")]
    InvalidChain(usize),
    #[error("empty sample: at least one bit is required")]
    EmptySample,
    #[error("length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid block size {k}: must be in 1..={max}")]
    InvalidBlockSize { k: usize, max: usize },
    #[error("length {len} is not divisible by block size {k}")]
    BlockRemainder { len: usize, k: usize },
    #[error("empty alphabet: no block has positive weight")]
    EmptyAlphabet,
    #[error("invalid weight for block {block}: weights must be finite and nonnegative")]
    InvalidWeight { block: usize },
    #[error("block value {block} out of range for block size {k}")]
    BlockOutOfRange { block: usize, k: usize },
    #[error("corrupt stream at bit {position}: {reason}")]
    CorruptStream { position: usize, reason: &'static str },
    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(f64),
    #[error("sample too small: n_bits = {n_bits}, need at least {min}")]
    SampleTooSmall { n_bits: usize, min: usize },
    #[error("window {window} invalid for string of length {len} with block size {k}")]
    InvalidWindow { window: usize, len: usize, k: usize },
    #[error("unsupported configuration: {0}")]
    Unsupported(&'static str),
    #[error("cannot parse bit string: unexpected character {0:?}")]
    Parse(char),
}
