//! Exhaustive generation of partitions under declarative constraints, and
//! the family counters built on top of it.
//!
//! Generation order is lexicographic descending: `5, 4+1, 3+2, 3+1+1, ...`.
//! Part-level rules (residues, minimum part, forbidden values) prune the
//! search; the remaining rules are checked on each complete partition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest n accepted by the generators.
pub const MAX_N: u32 = 200;

/// A modulus together with a set of residues modulo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    pub modulus: u32,
    pub residues: BTreeSet<u32>,
}

impl ResidueSet {
    pub fn new(modulus: u32, residues: impl IntoIterator<Item = u32>) -> Self {
        ResidueSet {
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.residues.contains(&(v % self.modulus))
    }
}

/// A rule on pairs of distinct values `u > v` that are both parts with
/// `u - v == difference`: the smaller value's residue must lie in `allowed_smaller`.
///
/// An empty `allowed_smaller` forbids the difference outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyRule {
    pub difference: u32,
    pub allowed_smaller: ResidueSet,
}

impl AdjacencyRule {
    pub fn forbid(difference: u32) -> Self {
        AdjacencyRule {
            difference,
            allowed_smaller: ResidueSet::new(1, []),
        }
    }
}

/// Declarative description of a family of partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub allowed_residues: Option<ResidueSet>,
    pub min_part: u32,
    pub forbidden_multiplicities: BTreeSet<u32>,
    /// No two parts `v` and `v + 1` both present.
    pub sequence_avoiding: bool,
    pub adjacency_rules: Vec<AdjacencyRule>,
    pub forbidden_part_values: BTreeSet<u32>,
}

impl Default for ConstraintSpec {
    fn default() -> Self {
        ConstraintSpec {
            allowed_residues: None,
            min_part: 1,
            forbidden_multiplicities: BTreeSet::new(),
            sequence_avoiding: false,
            adjacency_rules: Vec::new(),
            forbidden_part_values: BTreeSet::new(),
        }
    }
}

impl ConstraintSpec {
    /// Whether a single part value may appear at all.
    pub fn part_allowed(&self, v: u32) -> bool {
        v >= self.min_part
            && !self.forbidden_part_values.contains(&v)
            && self
                .allowed_residues
                .as_ref()
                .is_none_or(|rs| rs.contains(v))
    }

    /// True iff `p` meets every rule.
    pub fn satisfies(&self, p: &Partition) -> bool {
        self.first_violation(p).is_none()
    }

    /// Describes the first violated rule, if any.
    pub fn first_violation(&self, p: &Partition) -> Option<String> {
        let runs: Vec<(u32, u32)> = p.runs().collect();
        for &(v, mult) in &runs {
            if v < self.min_part {
                return Some(format!("part {v} is below the minimum {}", self.min_part));
            }
            if self.forbidden_part_values.contains(&v) {
                return Some(format!("part {v} is not allowed"));
            }
            if let Some(rs) = &self.allowed_residues {
                if !rs.contains(v) {
                    return Some(format!(
                        "part {v} is {} mod {}, allowed residues are {:?}",
                        v % rs.modulus,
                        rs.modulus,
                        rs.residues
                    ));
                }
            }
            if self.forbidden_multiplicities.contains(&mult) {
                return Some(format!("part {v} occurs {mult} times"));
            }
        }
        let values: BTreeSet<u32> = runs.iter().map(|&(v, _)| v).collect();
        if self.sequence_avoiding {
            if let Some(&v) = values.iter().find(|&&v| values.contains(&(v + 1))) {
                return Some(format!("consecutive parts {} and {v}", v + 1));
            }
        }
        for rule in &self.adjacency_rules {
            for &v in &values {
                if values.contains(&(v + rule.difference)) && !rule.allowed_smaller.contains(v) {
                    return Some(format!(
                        "parts {} and {v} differ by {} with the smaller part {} mod {}",
                        v + rule.difference,
                        rule.difference,
                        v % rule.allowed_smaller.modulus,
                        rule.allowed_smaller.modulus
                    ));
                }
            }
        }
        None
    }
}

/// Iterator over partitions of `n` whose parts all pass a part-level
/// predicate, in lexicographic descending order.
pub struct Partitions {
    n: u32,
    allowed: Vec<bool>,
    // feasible[r * (n + 1) + k]: r can be written with allowed parts <= k
    feasible: Vec<bool>,
    parts: Vec<u32>,
    rem: u32,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: u32, allowed: impl Fn(u32) -> bool) -> Self {
        let w = n as usize + 1;
        let allowed: Vec<bool> = (0..=n).map(|v| v > 0 && allowed(v)).collect();
        let mut feasible = vec![false; w * w];
        // row 0: the empty remainder is always reachable
        feasible[..w].fill(true);
        for r in 1..w {
            for k in 1..w {
                let via_k = k <= r && allowed[k] && feasible[(r - k) * w + k];
                feasible[r * w + k] = feasible[r * w + k - 1] || via_k;
            }
        }
        Partitions {
            n,
            allowed,
            feasible,
            parts: Vec::new(),
            rem: n,
            started: false,
            done: false,
        }
    }

    fn can_fill(&self, r: u32, k: u32) -> bool {
        let w = self.n as usize + 1;
        self.feasible[r as usize * w + k.min(self.n) as usize]
    }

    /// Largest allowed v <= bound with the remainder still fillable.
    fn best_part(&self, bound: u32) -> Option<u32> {
        (1..=bound.min(self.rem))
            .rev()
            .find(|&v| self.allowed[v as usize] && self.can_fill(self.rem - v, v))
    }

    fn fill(&mut self) {
        while self.rem > 0 {
            let bound = self.parts.last().copied().unwrap_or(self.n);
            let v = self
                .best_part(bound)
                .expect("feasibility table guarantees a completion");
            self.parts.push(v);
            self.rem -= v;
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if !self.can_fill(self.n, self.n) {
                self.done = true;
                return None;
            }
            self.fill();
            return Some(Partition::from_sorted(self.parts.clone()));
        }
        while let Some(v) = self.parts.pop() {
            self.rem += v;
            if let Some(w) = self.best_part(v - 1) {
                self.parts.push(w);
                self.rem -= w;
                self.fill();
                return Some(Partition::from_sorted(self.parts.clone()));
            }
        }
        self.done = true;
        None
    }
}

fn check_n(n: u32) -> Result<()> {
    if n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: u64::from(n),
            limit: u64::from(MAX_N),
        });
    }
    Ok(())
}

/// Every partition of `n`, lexicographic descending.
pub fn partitions_of(n: u32) -> Result<Partitions> {
    check_n(n)?;
    Ok(Partitions::new(n, |_| true))
}

/// Partitions of `n` meeting `spec`, lexicographic descending.
pub fn partitions_satisfying(
    n: u32,
    spec: &ConstraintSpec,
) -> Result<impl Iterator<Item = Partition> + '_> {
    check_n(n)?;
    Ok(Partitions::new(n, |v| spec.part_allowed(v)).filter(move |p| spec.satisfies(p)))
}

/// How to read a type vector off a partition: entry i counts the parts
/// congruent to `residues[i]` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpec {
    pub modulus: u32,
    pub residues: Vec<u32>,
}

impl TypeSpec {
    pub fn type_of(&self, p: &Partition) -> Vec<u64> {
        let mut out = vec![0u64; self.residues.len()];
        for &v in p.parts() {
            let r = v % self.modulus;
            if let Some(i) = self.residues.iter().position(|&x| x == r) {
                out[i] += 1;
            }
        }
        out
    }
}

/// A named family: constraints plus an optional type statistic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub spec: ConstraintSpec,
    pub type_spec: Option<TypeSpec>,
}

impl Family {
    pub fn count(&self, n: u32) -> Result<u64> {
        Ok(partitions_satisfying(n, &self.spec)?.count() as u64)
    }

    pub fn list(&self, n: u32) -> Result<Vec<Partition>> {
        Ok(partitions_satisfying(n, &self.spec)?.collect())
    }

    /// Members of weight `n` with the given type vector.
    pub fn list_with_type(&self, n: u32, ty: &[u64]) -> Result<Vec<Partition>> {
        let ts = self.require_type_spec(ty)?;
        Ok(partitions_satisfying(n, &self.spec)?
            .filter(|p| ts.type_of(p) == ty)
            .collect())
    }

    pub fn count_with_type(&self, n: u32, ty: &[u64]) -> Result<u64> {
        Ok(self.list_with_type(n, ty)?.len() as u64)
    }

    /// Counts for every type vector in one enumeration pass.
    pub fn count_by_type(&self, n: u32) -> Result<BTreeMap<Vec<u64>, u64>> {
        let ts = self.type_spec.as_ref().ok_or_else(|| Error::TypeLength {
            got: "a type vector".into(),
            expected: 0,
        })?;
        let mut map = BTreeMap::new();
        for p in partitions_satisfying(n, &self.spec)? {
            *map.entry(ts.type_of(&p)).or_insert(0) += 1;
        }
        Ok(map)
    }

    /// Members grouped by type vector in one pass.
    pub fn list_by_type(&self, n: u32) -> Result<BTreeMap<Vec<u64>, Vec<Partition>>> {
        let ts = self.type_spec.as_ref().ok_or_else(|| Error::TypeLength {
            got: "a type vector".into(),
            expected: 0,
        })?;
        let mut map: BTreeMap<Vec<u64>, Vec<Partition>> = BTreeMap::new();
        for p in partitions_satisfying(n, &self.spec)? {
            map.entry(ts.type_of(&p)).or_default().push(p);
        }
        Ok(map)
    }

    fn require_type_spec(&self, ty: &[u64]) -> Result<&TypeSpec> {
        let ts = self.type_spec.as_ref().ok_or_else(|| Error::TypeLength {
            got: format!("{ty:?}"),
            expected: 0,
        })?;
        if ts.residues.len() != ty.len() {
            return Err(Error::TypeLength {
                got: format!("{ty:?}"),
                expected: ts.residues.len(),
            });
        }
        Ok(ts)
    }
}

/// The named families of the mod-6 and Andrews-type identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Parts congruent to 0, 2, 3 or 4 mod 6.
    A1,
    /// No part occurs exactly once.
    A2,
    /// Sequence-avoiding with all parts at least 2.
    A3,
    /// A1 typed by the parts congruent to 2 and 4 mod 6.
    B1,
    /// A3 typed by the parts congruent to 2 and 1 mod 3.
    B2,
    /// Parts congruent to 0, 1, 3 or 5 mod 6, typed by residues 1 and 5 mod 6.
    C1,
    /// Difference rules with no part 2, typed by residues 1 and 2 mod 3.
    C2,
    /// Parts even or congruent to 2r+1 mod 4r+2, typed by residues 2i mod 4r+2.
    D1,
    /// Odd differences below 2r forbidden, smallest odd part at least 2r+1,
    /// entry i counting parts congruent to 2r−i+1 mod 2r+1.
    D2,
    /// D2's partitions with entry i counting parts congruent to 2i mod 2r+1.
    D2Doubled,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::A1,
        Preset::A2,
        Preset::A3,
        Preset::B1,
        Preset::B2,
        Preset::C1,
        Preset::C2,
        Preset::D1,
        Preset::D2,
        Preset::D2Doubled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::A1 => "A1",
            Preset::A2 => "A2",
            Preset::A3 => "A3",
            Preset::B1 => "B1",
            Preset::B2 => "B2",
            Preset::C1 => "C1",
            Preset::C2 => "C2",
            Preset::D1 => "D1",
            Preset::D2 => "D2",
            Preset::D2Doubled => "D2x",
        }
    }

    /// Whether the preset depends on `r`.
    pub fn uses_r(self) -> bool {
        matches!(self, Preset::D1 | Preset::D2 | Preset::D2Doubled)
    }

    /// Builds the family; `r` is ignored by the mod-6 presets.
    pub fn family(self, r: u32) -> Result<Family> {
        if self.uses_r() && r == 0 {
            return Err(Error::InvalidR(r));
        }
        let mut spec = ConstraintSpec::default();
        let mut type_spec = None;
        match self {
            Preset::A1 | Preset::B1 => {
                spec.allowed_residues = Some(ResidueSet::new(6, [0, 2, 3, 4]));
                if self == Preset::B1 {
                    type_spec = Some(TypeSpec {
                        modulus: 6,
                        residues: vec![2, 4],
                    });
                }
            }
            Preset::A2 => {
                spec.forbidden_multiplicities.insert(1);
            }
            Preset::A3 | Preset::B2 => {
                spec.sequence_avoiding = true;
                spec.min_part = 2;
                if self == Preset::B2 {
                    type_spec = Some(TypeSpec {
                        modulus: 3,
                        residues: vec![2, 1],
                    });
                }
            }
            Preset::C1 => {
                spec.allowed_residues = Some(ResidueSet::new(6, [0, 1, 3, 5]));
                type_spec = Some(TypeSpec {
                    modulus: 6,
                    residues: vec![1, 5],
                });
            }
            Preset::C2 => {
                spec.adjacency_rules = vec![
                    AdjacencyRule {
                        difference: 1,
                        allowed_smaller: ResidueSet::new(3, [0, 2]),
                    },
                    AdjacencyRule {
                        difference: 2,
                        allowed_smaller: ResidueSet::new(3, [2]),
                    },
                ];
                spec.forbidden_part_values.insert(2);
                type_spec = Some(TypeSpec {
                    modulus: 3,
                    residues: vec![1, 2],
                });
            }
            Preset::D1 => {
                let big = 4 * r + 2;
                let mut residues: Vec<u32> = (0..=2 * r).map(|i| 2 * i).collect();
                residues.push(2 * r + 1);
                spec.allowed_residues = Some(ResidueSet::new(big, residues));
                type_spec = Some(TypeSpec {
                    modulus: big,
                    residues: (1..=2 * r).map(|i| 2 * i).collect(),
                });
            }
            Preset::D2 | Preset::D2Doubled => {
                let m = 2 * r + 1;
                for d in (1..2 * r).step_by(2) {
                    spec.adjacency_rules.push(AdjacencyRule::forbid(d));
                    spec.forbidden_part_values.insert(d);
                }
                let residues = if self == Preset::D2 {
                    (1..=2 * r).map(|i| 2 * r - i + 1).collect()
                } else {
                    (1..=2 * r).map(|i| (2 * i) % m).collect()
                };
                type_spec = Some(TypeSpec {
                    modulus: m,
                    residues,
                });
            }
        }
        let name = if self.uses_r() {
            format!("{}(r={r})", self.name())
        } else {
            self.name().to_string()
        };
        Ok(Family {
            name,
            spec,
            type_spec,
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Partitions in which every part of odd multiplicity appears at least
/// 2r+1 times. For r = 1 this is the A2 family.
pub fn odd_multiplicity_family(r: u32) -> Result<Family> {
    if r == 0 {
        return Err(Error::InvalidR(r));
    }
    let spec = ConstraintSpec {
        forbidden_multiplicities: (1..2 * r).step_by(2).collect(),
        ..Default::default()
    };
    Ok(Family {
        name: format!("odd-multiplicity(r={r})"),
        spec,
        type_spec: None,
    })
}

fn preset_family(p: Preset, r: u32) -> Family {
    p.family(r).expect("r checked by caller")
}

/// A₁, A₂ or A₃ of n.
pub fn count_a(variant: u8, n: u32) -> Result<u64> {
    let preset = match variant {
        1 => Preset::A1,
        2 => Preset::A2,
        3 => Preset::A3,
        _ => return Err(Error::UnknownPreset(format!("A{variant}"))),
    };
    preset_family(preset, 1).count(n)
}

/// B₁(m₁, m₂, n) or B₂(m₁, m₂, n).
pub fn count_b(variant: u8, m1: u64, m2: u64, n: u32) -> Result<u64> {
    let preset = match variant {
        1 => Preset::B1,
        2 => Preset::B2,
        _ => return Err(Error::UnknownPreset(format!("B{variant}"))),
    };
    preset_family(preset, 1).count_with_type(n, &[m1, m2])
}

/// C₁(m₁, m₂, n) or C₂(m₁, m₂, n).
pub fn count_c(variant: u8, m1: u64, m2: u64, n: u32) -> Result<u64> {
    let preset = match variant {
        1 => Preset::C1,
        2 => Preset::C2,
        _ => return Err(Error::UnknownPreset(format!("C{variant}"))),
    };
    preset_family(preset, 1).count_with_type(n, &[m1, m2])
}

/// D₁(m⃗, r, n) or D₂(m⃗, r, n); `m` has 2r entries.
pub fn count_d(variant: u8, m: &[u64], r: u32, n: u32) -> Result<u64> {
    let preset = match variant {
        1 => Preset::D1,
        2 => Preset::D2,
        _ => return Err(Error::UnknownPreset(format!("D{variant}"))),
    };
    preset.family(r)?.count_with_type(n, m)
}
