//! Partitions and the residue statistics used throughout the crate.
//!
//! A [`Partition`] stores its parts in non-increasing order. The empty
//! partition is the unique partition of 0. Positions are 1-based with the
//! largest part first, which is the convention used by
//! [`Partition::alt_sum_type`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An integer partition with parts stored largest first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts that are already positive and
    /// non-increasing. Only checked in debug builds.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&p| p > 0));
        Partition { parts }
    }

    /// Sorts `parts` and drops zeros.
    pub(crate) fn from_unsorted_lossy(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Sum of the parts, |λ|.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Sum of the parts congruent to `i` modulo `m`, written |λ|_{i(m)}.
    pub fn residue_weight(&self, i: u32, m: u32) -> Result<u64> {
        let m = Modulus::new(m)?;
        if i >= m.get() {
            return Err(Error::InvalidResidue {
                residue: i,
                modulus: m.get(),
            });
        }
        Ok(self
            .parts
            .iter()
            .filter(|&&p| p % m.get() == i)
            .map(|&p| u64::from(p))
            .sum())
    }

    /// Number of parts equal to `v`.
    pub fn multiplicity(&self, v: u32) -> u32 {
        // parts are sorted, so the equal run is contiguous
        let start = self.parts.partition_point(|&p| p > v);
        let end = self.parts.partition_point(|&p| p >= v);
        (end - start) as u32
    }

    /// Largest multiplicity of any part, 0 for the empty partition.
    pub fn max_multiplicity(&self) -> u32 {
        self.runs().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn runs(&self) -> Runs<'_> {
        Runs {
            parts: &self.parts,
            pos: 0,
        }
    }

    /// The conjugate partition: its i-th part counts the parts that are at least i.
    pub fn conjugate(&self) -> Partition {
        let Some(&largest) = self.parts.first() else {
            return Partition::empty();
        };
        let mut out = Vec::with_capacity(largest as usize);
        let mut k = self.parts.len();
        for i in 1..=largest {
            while k > 0 && self.parts[k - 1] < i {
                k -= 1;
            }
            out.push(k as u32);
        }
        Partition::from_sorted(out)
    }

    /// True iff no part is divisible by `m`.
    pub fn is_m_regular(&self, m: Modulus) -> bool {
        self.parts.iter().all(|&p| p % m.get() != 0)
    }

    /// Entry i (1 ≤ i ≤ m−1) counts the parts congruent to i modulo m.
    pub fn length_type(&self, m: Modulus) -> TypeVector {
        let mut entries = vec![0u64; m.get() as usize - 1];
        for &p in &self.parts {
            let r = p % m.get();
            if r != 0 {
                entries[r as usize - 1] += 1;
            }
        }
        TypeVector {
            modulus: m,
            entries,
        }
    }

    /// Entry i is M_i − M_{i+1}, where M_i sums the parts at positions
    /// congruent to i modulo m (positions start at 1, M_m uses positions ≡ 0).
    pub fn alt_sum_type(&self, m: Modulus) -> TypeVector {
        let mm = m.get() as usize;
        let mut sums = vec![0u64; mm];
        for (idx, &p) in self.parts.iter().enumerate() {
            // position idx+1 has class (idx+1) mod m; store class c at index c-1, class 0 at m-1
            sums[idx % mm] += u64::from(p);
        }
        let entries = (0..mm - 1).map(|i| sums[i] - sums[i + 1]).collect();
        TypeVector {
            modulus: m,
            entries,
        }
    }

    /// Union of two partitions as multisets.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

/// Iterator over `(value, multiplicity)` pairs of a partition.
pub struct Runs<'a> {
    parts: &'a [u32],
    pos: usize,
}

impl Iterator for Runs<'_> {
    type Item = (u32, u32);

    fn next(&mut self) -> Option<(u32, u32)> {
        let v = *self.parts.get(self.pos)?;
        let start = self.pos;
        while self.pos < self.parts.len() && self.parts[self.pos] == v {
            self.pos += 1;
        }
        Some((v, (self.pos - start) as u32))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"a+b+c"` in any order; the empty (or all-blank) string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in s.split('+') {
            let token = token.trim();
            let value: i64 = token.parse().map_err(|_| Error::Parse {
                token: token.to_string(),
            })?;
            if value <= 0 || value > i64::from(u32::MAX) {
                return Err(Error::InvalidPart(value));
            }
            parts.push(value as u32);
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        let mut parts = Vec::with_capacity(v.len());
        for x in v {
            if x <= 0 || x > i64::from(u32::MAX) {
                return Err(Error::InvalidPart(x));
            }
            parts.push(x as u32);
        }
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

/// An (m−1)-tuple of nonnegative counts attached to a modulus m.
///
/// Used for both the m-length type and the m-alternating-sum type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeVector {
    modulus: Modulus,
    entries: Vec<u64>,
}

impl TypeVector {
    pub fn new(modulus: Modulus, entries: Vec<u64>) -> Result<Self> {
        let expected = modulus.get() as usize - 1;
        if entries.len() != expected {
            return Err(Error::TypeLength {
                got: format!("{entries:?}"),
                expected,
            });
        }
        Ok(TypeVector { modulus, entries })
    }

    pub fn zero(modulus: Modulus) -> Self {
        TypeVector {
            modulus,
            entries: vec![0; modulus.get() as usize - 1],
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Entry i, 1-based.
    pub fn get(&self, i: usize) -> u64 {
        self.entries[i - 1]
    }

    pub fn reversed(&self) -> TypeVector {
        let mut entries = self.entries.clone();
        entries.reverse();
        TypeVector {
            modulus: self.modulus,
            entries,
        }
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}
