//! Measurement geometry and correlated bit-string sources.
//!
//! Two sources are provided: the singlet state, whose outcome statistics
//! along directions `a` and `b` are
//!
//! ```text
//! p(x, y | a, b) = (1 - (-1)^(x+y) a.b) / 4
//! ```
//!
//! and a classical local hidden variable model in which both parties see the
//! same uniformly random unit vector `λ` and answer with the sign of their
//! projection onto it (Bob's answer flipped so that equal settings give
//! perfect anticorrelation, as for the singlet).
//!
//! Setting indices are 0-based throughout: the chain's first Alice direction is
//! `alice_dirs[0]`.

use rand::Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, SimRng};
use crate::scalar::Real;

/// Absolute tolerance on `|norm - 1|` accepted for input directions.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Bits generated per independently seeded shard.
pub const SHARD_BITS: usize = 1 << 16;

fn unit_tolerance<T: Real>() -> T {
    T::lit(UNIT_TOLERANCE).max(T::epsilon() * T::lit(16.0))
}

/// A measurement direction on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochVector<T> {
    /// Builds a direction, rejecting vectors that are not unit length.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let v = Self { x, y, z };
        v.validate()?;
        Ok(v)
    }

    /// The direction at polar angle `angle` from +z inside the x-z plane.
    pub fn in_xz_plane(angle: T) -> Self {
        Self { x: angle.sin(), y: T::zero(), z: angle.cos() }
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn validate(&self) -> Result<()> {
        let norm = self.norm();
        if !norm.is_finite() || (norm - T::one()).abs() > unit_tolerance::<T>() {
            return Err(Error::InvalidDirection { norm: norm.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(())
    }

    fn to_f64(self) -> [f64; 3] {
        [self.x, self.y, self.z].map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

/// Validated dot product, clamped into [-1, 1] to absorb rounding.
fn checked_dot<T: Real>(a: &BlochVector<T>, b: &BlochVector<T>) -> Result<T> {
    a.validate()?;
    b.validate()?;
    Ok(a.dot(b).max(-T::one()).min(T::one()))
}

/// Joint outcome probabilities `p[x][y]` for one pair of measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution<T> {
    pub p00: T,
    pub p01: T,
    pub p10: T,
    pub p11: T,
}

impl<T: Real> JointDistribution<T> {
    pub fn get(&self, x: bool, y: bool) -> T {
        match (x, y) {
            (false, false) => self.p00,
            (false, true) => self.p01,
            (true, false) => self.p10,
            (true, true) => self.p11,
        }
    }

    pub fn total(&self) -> T {
        self.p00 + self.p01 + self.p10 + self.p11
    }

    /// Probability that Alice's outcome is 0.
    pub fn alice_zero(&self) -> T {
        self.p00 + self.p01
    }

    /// Probability that Bob's outcome is 0.
    pub fn bob_zero(&self) -> T {
        self.p00 + self.p10
    }

    /// Distribution of `x ⊕ y`.
    pub fn xor(&self) -> XorDistribution<T> {
        XorDistribution { p0: self.p00 + self.p11, p1: self.p01 + self.p10 }
    }
}

/// Bit probabilities of `z = x ⊕ y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XorDistribution<T> {
    pub p0: T,
    pub p1: T,
}

pub fn singlet_joint_distribution<T: Real>(
    a: &BlochVector<T>,
    b: &BlochVector<T>,
) -> Result<JointDistribution<T>> {
    let d = checked_dot(a, b)?;
    let quarter = T::lit(0.25);
    let same = (T::one() - d) * quarter;
    let diff = (T::one() + d) * quarter;
    Ok(JointDistribution { p00: same, p01: diff, p10: diff, p11: same })
}

pub fn xor_distribution<T: Real>(a: &BlochVector<T>, b: &BlochVector<T>) -> Result<XorDistribution<T>> {
    let d = checked_dot(a, b)?;
    Ok(xor_distribution_from_dot(d))
}

/// `p0 = (1 - d)/2`, `p1 = (1 + d)/2` for a dot product `d` in [-1, 1].
pub fn xor_distribution_from_dot<T: Real>(d: T) -> XorDistribution<T> {
    let half = T::lit(0.5);
    XorDistribution { p0: (T::one() - d) * half, p1: (T::one() + d) * half }
}

/// The chain of `N` Alice and `N` Bob directions in the x-z plane, spaced by
/// `θ/2` with `θ = π/(2N-1)`, alternating Alice, Bob, Alice, ...
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SettingsChain<T> {
    pub n_settings: usize,
    pub theta: T,
    pub alice_dirs: Vec<BlochVector<T>>,
    pub bob_dirs: Vec<BlochVector<T>>,
}

impl<T: Real> SettingsChain<T> {
    /// Dot product shared by every neighbouring pair: `cos(π/(4N-2))`.
    pub fn neighbour_dot(&self) -> T {
        (self.theta * T::lit(0.5)).cos()
    }

    /// Pairs `(alice i, bob i)` for `i = 0..N`.
    pub fn diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.n_settings).map(|i| (i, i))
    }

    /// Pairs `(alice i+1, bob i)` for `i = 0..N-1`.
    pub fn off_diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.n_settings - 1).map(|i| (i + 1, i))
    }

    /// The far pair `(alice 0, bob N-1)`, orthogonal by construction.
    pub fn end_pair(&self) -> (usize, usize) {
        (0, self.n_settings - 1)
    }
}

pub fn chain_settings<T: Real>(n_settings: usize) -> Result<SettingsChain<T>> {
    if n_settings < 2 {
        return Err(Error::InvalidChain(n_settings));
    }
    let n = T::from_usize(n_settings).expect("setting count fits in scalar");
    let theta = T::PI() / (n + n - T::one());
    let half = T::lit(0.5);
    let alice_dirs = (0..n_settings)
        .map(|i| BlochVector::in_xz_plane(T::from_usize(i).unwrap() * theta))
        .collect();
    let bob_dirs = (0..n_settings)
        .map(|j| BlochVector::in_xz_plane((T::from_usize(j).unwrap() + half) * theta))
        .collect();
    Ok(SettingsChain { n_settings, theta, alice_dirs, bob_dirs })
}

/// Generates `n` bits in independently seeded shards of [`SHARD_BITS`] and
/// concatenates them in shard order.
fn sharded<F>(n: usize, seed: u64, parties: usize, fill: F) -> Vec<BitString>
where
    F: Fn(&mut SimRng, usize, &mut [BitString]) + Sync,
{
    let shards: Vec<Vec<BitString>> = (0..n.div_ceil(SHARD_BITS))
        .into_par_iter()
        .map(|s| {
            let len = SHARD_BITS.min(n - s * SHARD_BITS);
            let mut rng = rng_from_seed(derive_seed(seed, s as u64));
            let mut out = vec![BitString::with_capacity(len); parties];
            fill(&mut rng, len, &mut out);
            out
        })
        .collect();
    let mut out = vec![BitString::with_capacity(n); parties];
    for shard in &shards {
        for (dst, src) in out.iter_mut().zip(shard) {
            dst.extend_from(src);
        }
    }
    out
}

/// Samples `n` independent singlet measurement rounds along `a` (Alice) and `b` (Bob).
pub fn sample_singlet_pair<T: Real>(
    a: &BlochVector<T>,
    b: &BlochVector<T>,
    n: usize,
    seed: u64,
) -> Result<(BitString, BitString)> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let p1 = xor_distribution(a, b)?.p1.to_f64().unwrap_or(f64::NAN);
    let mut out = sharded(n, seed, 2, |rng, len, out| {
        for _ in 0..len {
            // x is uniform; z = x ⊕ y equals 1 with probability p1.
            let x: bool = rng.random();
            let z = rng.random::<f64>() < p1;
            out[0].push(x);
            out[1].push(x ^ z);
        }
    });
    let y = out.pop().unwrap();
    let x = out.pop().unwrap();
    Ok((x, y))
}

/// Samples `n` rounds of the hidden-variable model along `a` (Alice) and `b` (Bob).
pub fn sample_lhv_pair<T: Real>(
    a: &BlochVector<T>,
    b: &BlochVector<T>,
    n: usize,
    seed: u64,
) -> Result<(BitString, BitString)> {
    let (mut xs, mut ys) = sample_lhv_shared(std::slice::from_ref(a), std::slice::from_ref(b), n, seed)?;
    Ok((xs.pop().unwrap(), ys.pop().unwrap()))
}

/// Samples all Alice and Bob settings from the same hidden variable in each round.
///
/// Alice outputs 0 when `a·λ ≥ 0`; Bob outputs 1 when `b·λ ≥ 0`. Unlike the
/// singlet, the hidden-variable model defines every setting's outcome at once,
/// so strings for incompatible settings can share rounds.
pub fn sample_lhv_shared<T: Real>(
    alice_dirs: &[BlochVector<T>],
    bob_dirs: &[BlochVector<T>],
    n: usize,
    seed: u64,
) -> Result<(Vec<BitString>, Vec<BitString>)> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    for d in alice_dirs.iter().chain(bob_dirs) {
        d.validate()?;
    }
    let alice: Vec<[f64; 3]> = alice_dirs.iter().map(|d| d.to_f64()).collect();
    let bob: Vec<[f64; 3]> = bob_dirs.iter().map(|d| d.to_f64()).collect();
    let dot = |u: &[f64; 3], v: &[f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let mut out = sharded(n, seed, alice.len() + bob.len(), |rng, len, out| {
        for _ in 0..len {
            let lambda: [f64; 3] = UnitSphere.sample(rng);
            for (dst, a) in out.iter_mut().zip(&alice) {
                dst.push(dot(a, &lambda) < 0.0);
            }
            for (dst, b) in out[alice.len()..].iter_mut().zip(&bob) {
                dst.push(dot(b, &lambda) >= 0.0);
            }
        }
    });
    let bobs = out.split_off(alice.len());
    Ok((out, bobs))
}

/// `z_t = x_t ⊕ y_t`. XOR-ing with `y` again recovers `x`.
pub fn xor_strings(x: &BitString, y: &BitString) -> Result<BitString> {
    x.xor(y)
}
