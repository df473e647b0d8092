//! Finite-dimensional orthogonal `SO(2)`-representations and the `SO(2)`
//! weight content of the spaces `ℋⁿ_m` of degree-`m` spherical harmonics in
//! `n` variables.
//!
//! A representation is `R[k_0,0] ⊕ R[k_1,1] ⊕ ...`, stored as the sparse map
//! `m -> k_m`. Weight `0` counts real dimensions of the trivial part; weight
//! `m >= 1` counts copies of the two-dimensional rotation representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SO2Rep {
    weights: BTreeMap<u64, u64>,
}

impl SO2Rep {
    /// The zero representation.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `R[k, m]`.
    pub fn isotypic(k: u64, m: u64) -> Self {
        let mut r = Self::zero();
        r.add_weight(m, k);
        r
    }

    pub fn trivial(dim: u64) -> Self {
        Self::isotypic(dim, 0)
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut r = Self::zero();
        for (m, k) in pairs {
            r.add_weight(m, k);
        }
        r
    }

    fn add_weight(&mut self, m: u64, k: u64) {
        if k > 0 {
            *self.weights.entry(m).or_insert(0) += k;
        }
    }

    /// Multiplicity `k_m` of weight `m`.
    pub fn multiplicity(&self, m: u64) -> u64 {
        self.weights.get(&m).copied().unwrap_or(0)
    }

    pub fn trivial_dim(&self) -> u64 {
        self.multiplicity(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.weights.iter().map(|(m, k)| (*m, *k))
    }

    /// Real dimension `k_0 + 2 Σ_{m>=1} k_m`.
    pub fn dim(&self) -> u64 {
        self.iter()
            .map(|(m, k)| if m == 0 { k } else { 2 * k })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Largest weight present.
    pub fn top_weight(&self) -> Option<u64> {
        self.weights.keys().next_back().copied()
    }

    /// `self ⊕ other`.
    pub fn oplus(&self, other: &SO2Rep) -> SO2Rep {
        let mut out = self.clone();
        for (m, k) in other.iter() {
            out.add_weight(m, k);
        }
        out
    }

    /// `k` copies of `self`.
    pub fn scaled(&self, k: u64) -> SO2Rep {
        SO2Rep::from_pairs(self.iter().map(|(m, mult)| (m, mult * k)))
    }
}

/// `reps[0]^{mults[0]} ⊕ reps[1]^{mults[1]} ⊕ ...`.
pub fn direct_sum(reps: &[SO2Rep], multiplicities: &[u64]) -> Result<SO2Rep> {
    if reps.len() != multiplicities.len() {
        return Err(Error::LengthMismatch {
            reps: reps.len(),
            mults: multiplicities.len(),
        });
    }
    Ok(reps
        .iter()
        .zip(multiplicities)
        .fold(SO2Rep::zero(), |acc, (r, &k)| acc.oplus(&r.scaled(k))))
}

impl fmt::Display for SO2Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(m, k)| format!("R[{k},{m}]")).collect();
        f.write_str(&parts.join("⊕"))
    }
}

#[derive(Serialize, Deserialize)]
struct RepWire {
    weights: Vec<(u64, u64)>,
}

impl Serialize for SO2Rep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RepWire {
            weights: self.iter().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SO2Rep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = RepWire::deserialize(deserializer)?;
        if wire.weights.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(D::Error::custom("weights must be strictly increasing"));
        }
        Ok(SO2Rep::from_pairs(wire.weights))
    }
}

/// The space `ℋⁿ_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HarmonicSpace {
    pub n: u32,
    pub m: u32,
}

impl HarmonicSpace {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self { n, m })
    }

    /// `SO(n)` acts trivially only on `ℋⁿ_0`.
    pub fn is_trivial(&self) -> bool {
        self.m == 0
    }

    pub fn dim(&self) -> u64 {
        harmonic_dim(self.n, self.m).expect("validated on construction")
    }

    pub fn decompose(&self) -> SO2Rep {
        so2_decompose(self.n, self.m).expect("validated on construction")
    }
}

impl fmt::Display for HarmonicSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}_{}", self.n, self.m)
    }
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn to_u64(x: BigUint, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} does not fit in 64 bits")))
}

/// `binom(a, b)` in exact arithmetic.
pub fn binomial(a: u64, b: u64) -> Result<u64> {
    if b > a {
        return Ok(0);
    }
    to_u64(
        factorial(a) / (factorial(b) * factorial(a - b)),
        "binomial coefficient",
    )
}

/// `dim ℋⁿ_m`: `1` for `n = 2, m = 0`, `2` for `n = 2, m >= 1`, and
/// `(2m+n-2) (n-3+m)! / (m! (n-2)!)` for `n >= 3`.
pub fn harmonic_dim(n: u32, m: u32) -> Result<u64> {
    match n {
        0 | 1 => Err(Error::DimensionTooSmall(n)),
        2 => Ok(if m == 0 { 1 } else { 2 }),
        _ => {
            let (n, m) = (n as u64, m as u64);
            let num = BigUint::from(2 * m + n - 2) * factorial(n - 3 + m);
            let den = factorial(m) * factorial(n - 2);
            to_u64(num / den, "harmonic dimension")
        }
    }
}

/// Multiplicity of weight `i` in `ℋⁿ_m` for `n >= 3`.
///
/// Basis functions of `ℋⁿ_m` are indexed by chains
/// `m = m_0 >= m_1 >= ... >= m_{n-2} >= 0` and the bottom entry is the
/// `SO(2)` weight. With the bottom fixed at `i`, the free middle entries form a
/// weakly decreasing sequence of length `n-3` in `[i, m]`, counted by
/// `binom(m - i + n - 3, n - 3)`. A bottom entry `i > 0` yields a `(cos, sin)`
/// pair, i.e. one copy of `R[1,i]`; `i = 0` yields a single trivial dimension.
pub fn chain_count(n: u32, m: u32, i: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "chain counting needs n >= 3, got {n}"
        )));
    }
    if i > m {
        return Ok(0);
    }
    let len = (n - 3) as u64;
    binomial((m - i) as u64 + len, len)
}

/// `SO(2)`-weight decomposition of `ℋⁿ_m` under the rotation of the first two
/// coordinates.
pub fn so2_decompose(n: u32, m: u32) -> Result<SO2Rep> {
    match n {
        0 | 1 => Err(Error::DimensionTooSmall(n)),
        2 if m == 0 => Ok(SO2Rep::trivial(1)),
        2 => Ok(SO2Rep::isotypic(1, m as u64)),
        _ => {
            let mut pairs = Vec::with_capacity(m as usize + 1);
            for i in 0..=m {
                pairs.push((i as u64, chain_count(n, m, i)?));
            }
            Ok(SO2Rep::from_pairs(pairs))
        }
    }
}
