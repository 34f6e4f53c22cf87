//! Colored partitions with 2r+1 colors and the maps that connect them to
//! the D₂ (for r = 1, B₂) family and, for three colors, to the C₂ family.
//!
//! Colors are numbered 1..=2r+1. A part k of color i stands for the integer
//! (2r+1)(k−1)+2i when i ≤ 2r and (2r+1)k when i = 2r+1. A colored partition
//! is admissible when it contains none of the pairs
//! * `j_i` with `(j+1)_ℓ` for i ≤ 2r and ℓ < i,
//! * `j_i` with `j_{2r+1}` for i ≤ 2r.
//!
//! With three colors the letters a, b, c stand for the parts 3k−1, 3k and
//! 3k+1, so a = color 1, c = color 2 and b = color 3; those partitions are
//! printed with letters and ordered 1a < 1b < 1c < 2a < ….

use std::collections::BTreeMap;
use std::fmt;

use crate::enumeration::Preset;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// A colored part: `value` carries color `color` in 1..=2r+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredPart {
    pub value: u32,
    pub color: u32,
}

/// Multiset of colored parts, stored largest first under the color order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPartition {
    r: u32,
    parts: Vec<ColoredPart>,
}

/// Position of a color inside one value's group.
fn rank(r: u32, color: u32) -> u32 {
    if r == 1 {
        // a < b < c
        match color {
            1 => 0,
            3 => 1,
            _ => 2,
        }
    } else {
        color - 1
    }
}

const LETTERS: [(u32, char); 3] = [(1, 'a'), (3, 'b'), (2, 'c')];

impl ColoredPartition {
    pub fn new(r: u32, mut parts: Vec<ColoredPart>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidR(r));
        }
        for p in &parts {
            if p.value == 0 || p.color == 0 || p.color > 2 * r + 1 {
                return Err(Error::InvalidColoredPart(format!(
                    "{}#{}",
                    p.value, p.color
                )));
            }
        }
        parts.sort_unstable_by_key(|p| std::cmp::Reverse((p.value, rank(r, p.color))));
        Ok(ColoredPartition { r, parts })
    }

    pub fn empty(r: u32) -> Self {
        ColoredPartition {
            r,
            parts: Vec::new(),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn parts(&self) -> &[ColoredPart] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the values, ignoring color.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| u64::from(p.value)).sum()
    }

    /// Number of parts of the given color.
    pub fn color_count(&self, color: u32) -> u64 {
        self.parts.iter().filter(|p| p.color == color).count() as u64
    }

    /// Counts of colors 1..=2r (the marked colors).
    pub fn marked_counts(&self) -> Vec<u64> {
        (1..=2 * self.r).map(|c| self.color_count(c)).collect()
    }

    /// The first forbidden pair present, if any.
    pub fn forbidden_pair(&self) -> Option<(ColoredPart, ColoredPart)> {
        let top = 2 * self.r + 1;
        let has = |value: u32, color: u32| {
            self.parts
                .iter()
                .any(|p| p.value == value && p.color == color)
        };
        for &p in &self.parts {
            if p.color > 2 * self.r {
                continue;
            }
            if has(p.value, top) {
                return Some((
                    p,
                    ColoredPart {
                        value: p.value,
                        color: top,
                    },
                ));
            }
            for l in 1..p.color {
                if has(p.value + 1, l) {
                    return Some((
                        p,
                        ColoredPart {
                            value: p.value + 1,
                            color: l,
                        },
                    ));
                }
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.forbidden_pair().is_none()
    }

    /// Parses `"3a+2b+1c"` (r = 1) or `"3#2+1#5"` (any r).
    pub fn parse(text: &str, r: u32) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return ColoredPartition::new(r, Vec::new());
        }
        let mut parts = Vec::new();
        for token in text.split('+') {
            let token = token.trim();
            let bad = || Error::InvalidColoredPart(token.to_string());
            let (value, color) = if let Some((v, c)) = token.split_once('#') {
                (v.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?)
            } else {
                if r != 1 {
                    return Err(bad());
                }
                let letter = token.chars().last().ok_or_else(bad)?;
                let color = LETTERS
                    .iter()
                    .find(|&&(_, l)| l == letter)
                    .map(|&(c, _)| c)
                    .ok_or_else(bad)?;
                let v = token[..token.len() - 1].parse().map_err(|_| bad())?;
                (v, color)
            };
            parts.push(ColoredPart { value, color });
        }
        ColoredPartition::new(r, parts)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if self.r == 1 {
                let letter = LETTERS.iter().find(|&&(c, _)| c == p.color).unwrap().1;
                write!(f, "{}{letter}", p.value)?;
            } else {
                write!(f, "{}#{}", p.value, p.color)?;
            }
        }
        Ok(())
    }
}

/// Colors the parts of a D₂-family partition (for r = 1 a B₂ partition).
pub fn to_colored(tau: &Partition, r: u32) -> Result<ColoredPartition> {
    let family = Preset::D2.family(r)?;
    if let Some(rule) = family.spec.first_violation(tau) {
        return Err(Error::FamilyViolation {
            family: family.name,
            partition: tau.to_string(),
            rule,
        });
    }
    let m = 2 * r + 1;
    let parts = tau
        .parts()
        .iter()
        .map(|&v| {
            if v % m == 0 {
                ColoredPart {
                    value: v / m,
                    color: m,
                }
            } else {
                let i = (1..=2 * r).find(|&i| (2 * i) % m == v % m).unwrap();
                // v >= 2i because the odd values below 2r+1 are excluded
                ColoredPart {
                    value: (v - 2 * i) / m + 1,
                    color: i,
                }
            }
        })
        .collect();
    ColoredPartition::new(r, parts)
}

/// Inverse of [`to_colored`].
pub fn from_colored(cp: &ColoredPartition) -> Partition {
    let m = 2 * cp.r + 1;
    let parts = cp
        .parts
        .iter()
        .map(|p| {
            if p.color == m {
                m * p.value
            } else {
                m * (p.value - 1) + 2 * p.color
            }
        })
        .collect();
    Partition::from_unsorted_lossy(parts)
}

/// Three-color dilation: k_a → 3k−2, k_b → 3k, k_c → 3k+2.
pub fn colored_to_mod6(cp: &ColoredPartition) -> Result<Partition> {
    if cp.r != 1 {
        return Err(Error::InvalidR(cp.r));
    }
    if let Some((x, y)) = cp.forbidden_pair() {
        return Err(Error::FamilyViolation {
            family: "admissible three-colored".into(),
            partition: cp.to_string(),
            rule: format!(
                "forbidden pair {}#{} and {}#{}",
                x.value, x.color, y.value, y.color
            ),
        });
    }
    let parts = cp
        .parts
        .iter()
        .map(|p| match p.color {
            1 => 3 * p.value - 2,
            3 => 3 * p.value,
            _ => 3 * p.value + 2,
        })
        .collect();
    Ok(Partition::from_unsorted_lossy(parts))
}

/// Inverse of [`colored_to_mod6`] on the C₂ family.
pub fn mod6_to_colored(p: &Partition) -> Result<ColoredPartition> {
    let family = Preset::C2.family(1)?;
    if let Some(rule) = family.spec.first_violation(p) {
        return Err(Error::FamilyViolation {
            family: "C2".into(),
            partition: p.to_string(),
            rule,
        });
    }
    let parts = p
        .parts()
        .iter()
        .map(|&v| match v % 3 {
            1 => ColoredPart {
                value: v.div_ceil(3),
                color: 1,
            },
            0 => ColoredPart {
                value: v / 3,
                color: 3,
            },
            _ => ColoredPart {
                value: (v - 2) / 3,
                color: 2,
            },
        })
        .collect();
    ColoredPartition::new(1, parts)
}

/// All admissible colored partitions of the given weight, in canonical
/// descending order.
pub fn admissible_colored(weight: u32, r: u32) -> Result<Vec<ColoredPartition>> {
    if r == 0 {
        return Err(Error::InvalidR(r));
    }
    let colors = 2 * r + 1;
    // items in descending canonical order
    let mut order: Vec<u32> = (1..=colors).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(rank(r, c)));
    let mut items = Vec::new();
    for v in (1..=weight).rev() {
        for &c in &order {
            items.push(ColoredPart { value: v, color: c });
        }
    }
    let mut out = Vec::new();
    let mut present = vec![0u64; weight as usize + 2];
    let mut cur = Vec::new();
    walk(&items, 0, weight, r, &mut present, &mut cur, &mut out);
    Ok(out)
}

fn clashes(present: &[u64], p: ColoredPart, r: u32) -> bool {
    let top = 2 * r + 1;
    let bit = |c: u32| 1u64 << c;
    let here = present[p.value as usize];
    let above = present.get(p.value as usize + 1).copied().unwrap_or(0);
    let below = if p.value > 1 {
        present[p.value as usize - 1]
    } else {
        0
    };
    if p.color == top {
        // any j_i with i <= 2r at the same value
        return here & !bit(top) != 0;
    }
    if here & bit(top) != 0 {
        return true;
    }
    // (j+1)_l with l < i
    if (1..p.color).any(|l| above & bit(l) != 0) {
        return true;
    }
    // (j-1)_i' with p.color < i' <= 2r
    (p.color + 1..=2 * r).any(|i| below & bit(i) != 0)
}

fn walk(
    items: &[ColoredPart],
    idx: usize,
    rem: u32,
    r: u32,
    present: &mut [u64],
    cur: &mut Vec<ColoredPart>,
    out: &mut Vec<ColoredPartition>,
) {
    if rem == 0 {
        out.push(ColoredPartition {
            r,
            parts: cur.clone(),
        });
        return;
    }
    for i in idx..items.len() {
        let p = items[i];
        if p.value > rem || clashes(present, p, r) {
            continue;
        }
        let max = rem / p.value;
        present[p.value as usize] |= 1 << p.color;
        for t in (1..=max).rev() {
            cur.extend(std::iter::repeat_n(p, t as usize));
            walk(items, i + 1, rem - t * p.value, r, present, cur, out);
            cur.truncate(cur.len() - t as usize);
        }
        present[p.value as usize] &= !(1 << p.color);
    }
}

/// Admissible colored partitions of every weight up to `max_weight`, counted
/// by (weight, counts of colors 1..=2r).
pub fn admissible_counts(max_weight: u32, r: u32) -> Result<BTreeMap<(u32, Vec<u64>), u64>> {
    let mut map = BTreeMap::new();
    for w in 0..=max_weight {
        for cp in admissible_colored(w, r)? {
            *map.entry((w, cp.marked_counts())).or_insert(0) += 1;
        }
    }
    Ok(map)
}
