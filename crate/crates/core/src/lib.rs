//! Compression of correlated bit strings.
//!
//! Bit strings are generated from singlet-state measurement statistics or a
//! classical hidden-variable model, XOR-ed together and compressed with a
//! block Huffman code. The resulting rates feed a Normalized Compression
//! Distance and a chain of triangle inequalities that classical strings obey
//! and singlet strings, for long enough chains, do not.
//!
//! Probability and geometry code is generic over [`Real`] (`f32` or `f64`);
//! Huffman construction is generic over [`Weight`], which also admits integer
//! counts and exact rationals. The aliases below fix the usual `f64` choice.

pub mod bits;
pub mod correlation;
pub mod error;
pub mod huffman;
pub mod information;
pub mod inequality;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use bits::BitString;
pub use error::{Error, Result};
pub use huffman::{build_codebook, decode, empirical_rate, encode, expected_rate, BlockWeights, Encoded, HuffmanCodebook};
pub use scalar::{Real, Weight};

/// Unit measurement direction in double precision.
pub type Bloch = correlation::BlochVector<f64>;
/// Chain of measurement settings in double precision.
pub type Chain = correlation::SettingsChain<f64>;
/// Singlet joint outcome distribution in double precision.
pub type Joint = correlation::JointDistribution<f64>;
/// Block frequency table from an observed string.
pub type BlockCounts = BlockWeights<u64>;
/// Block probability table for an i.i.d. source.
pub type BlockProbabilities = BlockWeights<f64>;
/// Normalized compression distance in double precision.
pub type Ncd = information::NcdValue<f64>;
/// Chain-inequality report in double precision.
pub type Report = inequality::InequalityReport<f64>;
