//! Block Huffman coding over `k`-bit symbols.
//!
//! A bit string is cut into `m = n/k` blocks, each block is read as an integer
//! in `[0, 2^k)` (first bit most significant), and an optimal prefix code is
//! built from the block frequencies.
//!
//! Code lengths come from the merge-table procedure: keep the symbols in a
//! table sorted by weight (heaviest first, equal weights in ascending block
//! order), repeatedly merge the last two entries, and insert the merged entry
//! above every entry of equal weight. Codewords are then assigned canonically:
//! symbols sorted by (length, block value) receive consecutive binary
//! codewords. For the frequency table `{00:6, 01:1, 10:1, 11:1}` this gives
//! `00→0, 01→10, 10→110, 11→111`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real, Weight};

/// Largest supported block size. The full `2^k` alphabet is materialized.
pub const MAX_BLOCK_SIZE: usize = 24;

/// Probabilities below this are treated as zero when building expected weights.
pub const NEGLIGIBLE_WEIGHT: f64 = 1e-300;

pub fn check_block_size(k: usize) -> Result<()> {
    if k == 0 || k > MAX_BLOCK_SIZE {
        return Err(Error::InvalidBlockSize { k, max: MAX_BLOCK_SIZE });
    }
    Ok(())
}

fn check_divisible(len: usize, k: usize) -> Result<()> {
    check_block_size(k)?;
    if !len.is_multiple_of(k) {
        return Err(Error::BlockRemainder { len, k });
    }
    Ok(())
}

/// Weight (count or probability) of every `k`-bit block value.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockWeights<W> {
    block_size: usize,
    weights: Vec<W>,
}

impl<W: Weight> BlockWeights<W> {
    /// Dense table with one entry per block value; `weights.len()` must be `2^k`.
    pub fn new(block_size: usize, weights: Vec<W>) -> Result<Self> {
        check_block_size(block_size)?;
        let alphabet = 1usize << block_size;
        if weights.len() != alphabet {
            return Err(Error::DimensionMismatch { left: weights.len(), right: alphabet });
        }
        for (block, w) in weights.iter().enumerate() {
            let is_valid = *w >= W::zero() && to_f64(*w).is_finite();
            if !is_valid {
                return Err(Error::InvalidWeight { block });
            }
        }
        Ok(Self { block_size, weights })
    }

    /// Sparse construction; unlisted blocks get weight zero and repeated blocks accumulate.
    pub fn from_pairs(block_size: usize, pairs: impl IntoIterator<Item = (usize, W)>) -> Result<Self> {
        check_block_size(block_size)?;
        let mut weights = vec![W::zero(); 1 << block_size];
        for (block, w) in pairs {
            let slot = weights
                .get_mut(block)
                .ok_or(Error::BlockOutOfRange { block, k: block_size })?;
            *slot = *slot + w;
        }
        Self::new(block_size, weights)
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn get(&self, block: usize) -> W {
        self.weights.get(block).copied().unwrap_or_else(W::zero)
    }

    pub fn as_slice(&self) -> &[W] {
        &self.weights
    }

    /// Blocks with strictly positive weight, in ascending block order.
    pub fn positive(&self) -> impl Iterator<Item = (usize, W)> + '_ {
        self.weights.iter().copied().enumerate().filter(|(_, w)| *w > W::zero())
    }

    pub fn total(&self) -> W {
        self.weights.iter().fold(W::zero(), |acc, w| acc + *w)
    }
}

impl BlockWeights<u64> {
    /// Frequencies of the `k`-bit blocks of `z`. The length of `z` must be a multiple of `k`.
    pub fn from_counts(z: &BitString, block_size: usize) -> Result<Self> {
        check_divisible(z.len(), block_size)?;
        let mut weights = vec![0u64; 1 << block_size];
        for block in z.blocks(block_size) {
            weights[block as usize] += 1;
        }
        Ok(Self { block_size, weights })
    }
}

/// Heap key; the heap pops the entry lowest in the merge table first.
struct Entry<W> {
    weight: W,
    rank: u64,
    node: u32,
}

impl<W: PartialOrd> Ord for Entry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for BinaryHeap: smaller weight, then lower table rank, pops first.
        other
            .weight
            .partial_cmp(&self.weight)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.rank.cmp(&self.rank))
    }
}

impl<W: PartialOrd> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: PartialOrd> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: PartialOrd> Eq for Entry<W> {}

/// Code length of every positive-weight block, as `(block, length)` in ascending block order.
pub fn code_lengths<W: Weight>(weights: &BlockWeights<W>) -> Result<Vec<(u32, u32)>> {
    let leaves: Vec<(usize, W)> = weights.positive().collect();
    match leaves.len() {
        0 => return Err(Error::EmptyAlphabet),
        1 => return Ok(vec![(leaves[0].0 as u32, 1)]),
        _ => {}
    }
    let alphabet = 1u64 << weights.block_size();
    let mut parent: Vec<u32> = vec![u32::MAX; 2 * leaves.len() - 1];
    let mut heap: BinaryHeap<Entry<W>> = leaves
        .iter()
        .enumerate()
        .map(|(node, &(block, weight))| Entry {
            weight,
            // Among equal weights, smaller block values sit higher in the table.
            rank: alphabet - 1 - block as u64,
            node: node as u32,
        })
        .collect();
    let mut next = leaves.len() as u32;
    while heap.len() > 1 {
        let last = heap.pop().unwrap();
        let above = heap.pop().unwrap();
        parent[last.node as usize] = next;
        parent[above.node as usize] = next;
        heap.push(Entry {
            weight: above.weight + last.weight,
            // Merged entries go above all existing entries of equal weight.
            rank: alphabet + next as u64,
            node: next,
        });
        next += 1;
    }
    // Parents are created after their children, so a reverse sweep sees parents first.
    let mut depth = vec![0u32; parent.len()];
    for node in (0..parent.len() - 1).rev() {
        depth[node] = depth[parent[node] as usize] + 1;
    }
    Ok(leaves
        .iter()
        .zip(&depth)
        .map(|(&(block, _), &d)| (block as u32, d))
        .collect())
}

/// A prefix-free code over the blocks it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCodebook {
    block_size: usize,
    symbols: Vec<u32>,
    lengths: Vec<u32>,
    offsets: Vec<usize>,
    arena: BitString,
}

impl HuffmanCodebook {
    /// Assigns canonical codewords to `(block, length)` pairs.
    ///
    /// The lengths must satisfy Kraft's inequality; with equality the code is complete.
    pub fn from_lengths(block_size: usize, mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        check_block_size(block_size)?;
        if pairs.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        pairs.sort_unstable_by_key(|&(block, len)| (len, block));

        let mut by_symbol: Vec<(u32, u32, usize)> = Vec::with_capacity(pairs.len());
        let mut arena = BitString::with_capacity(pairs.iter().map(|p| p.1 as usize).sum());
        let mut code = BitString::zeros(pairs[0].1 as usize);
        for (i, &(block, len)) in pairs.iter().enumerate() {
            if block as usize >= 1 << block_size {
                return Err(Error::BlockOutOfRange { block: block as usize, k: block_size });
            }
            if len == 0 {
                return Err(Error::Unsupported("zero-length codeword"));
            }
            if i > 0 {
                if !increment(&mut code) {
                    return Err(Error::Unsupported("code lengths violate the Kraft inequality"));
                }
                while code.len() < len as usize {
                    code.push(false);
                }
            }
            by_symbol.push((block, len, arena.len()));
            arena.extend_from(&code);
        }
        by_symbol.sort_unstable_by_key(|e| e.0);
        if by_symbol.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Unsupported("duplicate block in codebook"));
        }
        Ok(Self {
            block_size,
            symbols: by_symbol.iter().map(|e| e.0).collect(),
            lengths: by_symbol.iter().map(|e| e.1).collect(),
            offsets: by_symbol.iter().map(|e| e.2).collect(),
            arena,
        })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Number of coded blocks.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn index_of(&self, block: u32) -> Option<usize> {
        self.symbols.binary_search(&block).ok()
    }

    pub fn code_length(&self, block: u32) -> Option<u32> {
        self.index_of(block).map(|i| self.lengths[i])
    }

    pub fn codeword(&self, block: u32) -> Option<BitString> {
        self.index_of(block)
            .map(|i| self.arena.slice(self.offsets[i], self.lengths[i] as usize))
    }

    /// `(block, codeword)` in ascending block order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, BitString)> + '_ {
        (0..self.symbols.len())
            .map(move |i| (self.symbols[i], self.arena.slice(self.offsets[i], self.lengths[i] as usize)))
    }

    /// `(block, length)` in ascending block order.
    pub fn lengths(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.symbols.iter().copied().zip(self.lengths.iter().copied())
    }

    /// `Σ 2^-len` over all codewords.
    pub fn kraft_sum(&self) -> f64 {
        self.lengths.iter().map(|&l| 0.5f64.powi(l as i32)).sum()
    }

    /// `Σ weight(block) · len(block)` over the coded blocks.
    pub fn weighted_length<W: Weight>(&self, weights: &BlockWeights<W>) -> W {
        self.lengths().fold(W::zero(), |acc, (block, len)| {
            acc + weights.get(block as usize) * W::from_u32(len).expect("length fits weight type")
        })
    }

    /// Tab-separated dump, one `block<TAB>codeword` line per block, both in binary.
    pub fn to_dump_string(&self) -> String {
        let mut out = String::new();
        for (block, code) in self.iter() {
            let _ = writeln!(out, "{:0width$b}\t{}", block, code, width = self.block_size);
        }
        out
    }

    fn decoder(&self) -> Vec<[u32; 2]> {
        // Node 0 is the root. Leaves are tagged with LEAF | symbol index.
        let mut nodes = vec![[0u32; 2]];
        for i in 0..self.symbols.len() {
            let mut at = 0usize;
            let len = self.lengths[i] as usize;
            for t in 0..len {
                let bit = self.arena.get(self.offsets[i] + t) as usize;
                if t + 1 == len {
                    nodes[at][bit] = LEAF | i as u32;
                } else {
                    if nodes[at][bit] == 0 {
                        nodes.push([0; 2]);
                        nodes[at][bit] = (nodes.len() - 1) as u32;
                    }
                    at = nodes[at][bit] as usize;
                }
            }
        }
        nodes
    }
}

const LEAF: u32 = 1 << 31;

/// Adds one to a binary counter stored most significant bit first. Returns
/// false on overflow.
fn increment(code: &mut BitString) -> bool {
    for i in (0..code.len()).rev() {
        if code.get(i) {
            code.set(i, false);
        } else {
            code.set(i, true);
            return true;
        }
    }
    false
}

/// Optimal prefix code for the positive-weight blocks of `weights`.
///
/// A single positive block receives the one-bit codeword `0`.
pub fn build_codebook<W: Weight>(weights: &BlockWeights<W>) -> Result<HuffmanCodebook> {
    HuffmanCodebook::from_lengths(weights.block_size(), code_lengths(weights)?)
}

/// Output of [`encode`]. The codebook travels beside the payload and is not counted in its size.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoded {
    pub payload: BitString,
    pub codebook: HuffmanCodebook,
    pub block_count: usize,
}

pub fn encode(z: &BitString, k: usize) -> Result<Encoded> {
    check_divisible(z.len(), k)?;
    if z.is_empty() {
        return Err(Error::EmptySample);
    }
    let counts = BlockWeights::from_counts(z, k)?;
    let codebook = build_codebook(&counts)?;
    let payload_len = codebook.weighted_length(&counts) as usize;
    let mut payload = BitString::with_capacity(payload_len);
    for block in z.blocks(k) {
        let i = codebook.index_of(block).expect("every block has a codeword");
        payload.extend_range(&codebook.arena, codebook.offsets[i], codebook.lengths[i] as usize);
    }
    Ok(Encoded { payload, codebook, block_count: z.len() / k })
}

/// Inverse of [`encode`]: reads exactly `block_count` codewords.
pub fn decode(payload: &BitString, codebook: &HuffmanCodebook, block_count: usize) -> Result<BitString> {
    let k = codebook.block_size();
    let nodes = codebook.decoder();
    let mut out = BitString::with_capacity(block_count * k);
    let mut pos = 0usize;
    for _ in 0..block_count {
        let mut at = 0usize;
        loop {
            if pos >= payload.len() {
                return Err(Error::CorruptStream { position: pos, reason: "stream ends inside a codeword" });
            }
            let next = nodes[at][payload.get(pos) as usize];
            pos += 1;
            if next == 0 {
                return Err(Error::CorruptStream { position: pos - 1, reason: "unknown codeword prefix" });
            }
            if next & LEAF != 0 {
                let symbol = codebook.symbols[(next & !LEAF) as usize];
                out.push_block(symbol as u64, k);
                break;
            }
            at = next as usize;
        }
    }
    if pos != payload.len() {
        return Err(Error::CorruptStream { position: pos, reason: "dangling bits after last block" });
    }
    Ok(out)
}

/// Payload bits for `z` coded with its own block Huffman code.
pub fn compressed_bits(z: &BitString, k: usize) -> Result<usize> {
    check_divisible(z.len(), k)?;
    if z.is_empty() {
        return Err(Error::EmptySample);
    }
    let counts = BlockWeights::from_counts(z, k)?;
    let lengths = code_lengths(&counts)?;
    Ok(lengths
        .iter()
        .map(|&(block, len)| counts.get(block as usize) as usize * len as usize)
        .sum())
}

/// `ñ/n`: payload length over input length.
pub fn empirical_rate(z: &BitString, k: usize) -> Result<f64> {
    Ok(compressed_bits(z, k)? as f64 / z.len() as f64)
}

fn check_probability<T: Real>(p: T) -> Result<()> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::InvalidProbability(p.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// Probability of every `k`-bit block when each bit is independently 0 with probability `p0`.
pub fn expected_block_weights<T: Real>(p0: T, k: usize) -> Result<BlockWeights<T>> {
    check_probability(p0)?;
    check_block_size(k)?;
    let p1 = T::one() - p0;
    let negligible = T::lit(NEGLIGIBLE_WEIGHT);
    // by_ones[l] = p0^(k-l) p1^l
    let by_ones: Vec<T> = (0..=k)
        .map(|ones| {
            let w = p0.powi((k - ones) as i32) * p1.powi(ones as i32);
            if w < negligible { T::zero() } else { w }
        })
        .collect();
    let weights = (0..1u32 << k).map(|block| by_ones[block.count_ones() as usize]).collect();
    BlockWeights::new(k, weights)
}

/// Expected bits per source bit of the Huffman code built from [`expected_block_weights`].
pub fn expected_rate<T: Real>(p0: T, k: usize) -> Result<T> {
    let weights = expected_block_weights(p0, k)?;
    let lengths = code_lengths(&weights)?;
    let total = weights.total();
    let bits = lengths
        .iter()
        .fold(T::zero(), |acc, &(block, len)| acc + weights.get(block as usize) * T::from_u32(len).unwrap());
    Ok(bits / total / T::from_usize(k).unwrap())
}
