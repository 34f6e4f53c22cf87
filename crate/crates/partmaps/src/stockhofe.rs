//! The bijection φ_m from m-regular partitions to partitions in which no
//! part occurs m or more times, carrying the m-length type of the input to
//! the m-alternating-sum type of the output.
//!
//! Both sides are read in blocks of m consecutive entries. Write a block as
//! `a_1 ≥ … ≥ a_m`; its *steps* are the drops `a_r − a_{r+1}` (each unit of
//! drop is a step of residue r, 1 ≤ r < m) and its *floor* is `a_m`.
//!
//! * The conjugate μ' of an m-regular μ has every block's floor equal to the
//!   next block's top, so μ' is determined by its step word (the residues of
//!   all steps, read top to bottom) and by where the blocks end, empty
//!   blocks included.
//! * A partition ν with multiplicities below m has no empty blocks, but a
//!   block may sit above the next one with some slack.
//!
//! The two sides share the same step word `w` of length k. A block must end
//! wherever `w` descends; every further break in μ' at gap j (between step j
//! and j+1, gap 0 being the top) is recorded as a part `k − j`, giving a
//! partition P with parts at most k. Let K₀ = 1 + #descents. The largest parts
//! `P_i > K₀ + i − 1` become extra block cuts of ν and the remaining parts
//! become slack: a part of size l lifts blocks 1..=l by one unit. An extra cut
//! at a non-descent gap j that closes block l stands for the part `k − j + l`;
//! cuts are matched greedily from the top. The inverse runs the same
//! bookkeeping backwards.

use crate::error::{Error, Result};
use crate::partition::{Modulus, Partition};

/// Blocks of m entries (zero padded) with their step residues and floors.
struct Blocks {
    /// Step residues for each block, top to bottom.
    steps: Vec<Vec<u32>>,
    floors: Vec<u32>,
    tops: Vec<u32>,
}

fn blocks_of(parts: &[u32], m: usize) -> Blocks {
    let nblocks = parts.len().div_ceil(m);
    let at = |i: usize| parts.get(i).copied().unwrap_or(0);
    let mut out = Blocks {
        steps: Vec::with_capacity(nblocks),
        floors: Vec::with_capacity(nblocks),
        tops: Vec::with_capacity(nblocks),
    };
    for b in 0..nblocks {
        let base = b * m;
        let mut steps = Vec::new();
        for r in 1..m {
            let drop = at(base + r - 1) - at(base + r);
            steps.extend(std::iter::repeat_n(r as u32, drop as usize));
        }
        out.steps.push(steps);
        out.tops.push(at(base));
        out.floors.push(at(base + m - 1));
    }
    out
}

fn descents(word: &[u32]) -> Vec<bool> {
    // descent[j] for gap j in 0..=k; gaps 0 and k never count
    let k = word.len();
    let mut d = vec![false; k + 1];
    for j in 1..k {
        d[j] = word[j - 1] > word[j];
    }
    d
}

/// Stacks blocks given as (steps, floor) into a partition, dropping zeros.
fn assemble(blocks: &[(&[u32], u64)], m: usize) -> Partition {
    let mut parts = Vec::with_capacity(blocks.len() * m);
    for &(steps, floor) in blocks {
        let mut counts = vec![0u64; m];
        for &r in steps {
            counts[r as usize] += 1;
        }
        let mut v = floor + steps.len() as u64;
        parts.push(v);
        for c in counts.iter().skip(1) {
            v -= c;
            parts.push(v);
        }
    }
    let parts = parts
        .into_iter()
        .filter(|&v| v > 0)
        .map(|v| v as u32)
        .collect();
    Partition::from_sorted(parts)
}

/// φ_m: m-regular partitions → partitions with every multiplicity below m.
pub fn phi(p: &Partition, m: Modulus) -> Result<Partition> {
    if !p.is_m_regular(m) {
        return Err(Error::NotRegular {
            partition: p.to_string(),
            modulus: m.get(),
        });
    }
    if p.is_empty() {
        return Ok(Partition::empty());
    }
    let mm = m.get() as usize;
    let conj = p.conjugate();
    let blocks = blocks_of(conj.parts(), mm);

    // step word and number of block ends at each gap
    let mut word = Vec::new();
    let mut ends: Vec<u64> = vec![0];
    for (b, steps) in blocks.steps.iter().enumerate() {
        debug_assert!(b + 1 == blocks.tops.len() || blocks.floors[b] == blocks.tops[b + 1]);
        word.extend_from_slice(steps);
        ends.resize(word.len() + 1, 0);
        ends[word.len()] += 1;
    }
    let k = word.len();
    let desc = descents(&word);
    ends[k] -= 1;
    for j in 1..k {
        if desc[j] {
            ends[j] -= 1;
        }
    }

    // extra breaks as a partition with parts <= k, largest first
    let mut big: Vec<u64> = Vec::new();
    for (j, &c) in ends.iter().enumerate().take(k) {
        for _ in 0..c {
            big.push((k - j) as u64);
        }
    }
    let k0 = 1 + desc.iter().filter(|&&d| d).count() as u64;
    let t = big
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| v > k0 + i as u64)
        .count();
    let (cut_values, slack_parts) = big.split_at(t);

    // place extra cuts greedily from the top
    let mut cuts = Vec::new();
    let mut is_extra = Vec::new();
    let mut next = 0;
    for (j, &descent) in desc.iter().enumerate().take(k).skip(1) {
        if descent {
            cuts.push(j);
            is_extra.push(false);
            continue;
        }
        let value = (k - j + 1 + cuts.len()) as u64;
        if next < t && value == cut_values[next] {
            cuts.push(j);
            is_extra.push(true);
            next += 1;
        }
    }
    assert_eq!(next, t, "extra cuts must all be placed");

    let nblocks = cuts.len() + 1;
    let mut slack = vec![0u64; nblocks + 1];
    for (l, &extra) in is_extra.iter().enumerate() {
        if extra {
            slack[l + 1] += 1;
        }
    }
    for &v in slack_parts {
        assert!(v as usize <= nblocks, "slack part exceeds the block count");
        slack[v as usize] += 1;
    }

    let mut bounds = Vec::with_capacity(nblocks + 1);
    bounds.push(0);
    bounds.extend_from_slice(&cuts);
    bounds.push(k);
    let mut out_blocks = Vec::with_capacity(nblocks);
    let mut lift: u64 = slack.iter().sum();
    for l in 1..=nblocks {
        let floor = lift + (k - bounds[l]) as u64;
        out_blocks.push((&word[bounds[l - 1]..bounds[l]], floor));
        lift -= slack[l];
    }
    Ok(assemble(&out_blocks, mm))
}

/// φ_m⁻¹: partitions with every multiplicity below m → m-regular partitions.
pub fn phi_inv(q: &Partition, m: Modulus) -> Result<Partition> {
    let mult = q.max_multiplicity();
    if mult >= m.get() {
        return Err(Error::MultiplicityTooLarge {
            partition: q.to_string(),
            multiplicity: mult,
            bound: m.get(),
        });
    }
    if q.is_empty() {
        return Ok(Partition::empty());
    }
    let mm = m.get() as usize;
    let blocks = blocks_of(q.parts(), mm);
    let nblocks = blocks.steps.len();

    let mut word = Vec::new();
    let mut cuts = Vec::new();
    for (b, steps) in blocks.steps.iter().enumerate() {
        debug_assert!(!steps.is_empty());
        word.extend_from_slice(steps);
        if b + 1 < nblocks {
            cuts.push(word.len());
        }
    }
    let k = word.len();
    let desc = descents(&word);

    let mut big: Vec<u64> = Vec::new();
    for l in 1..=nblocks {
        let next_top = if l < nblocks { blocks.tops[l] } else { 0 };
        let mut s = u64::from(blocks.floors[l - 1] - next_top);
        if l < nblocks && !desc[cuts[l - 1]] {
            debug_assert!(s >= 1);
            s -= 1;
            big.push((k - cuts[l - 1] + l) as u64);
        }
        big.extend(std::iter::repeat_n(l as u64, s as usize));
    }

    // every part v of `big` becomes an extra block end at gap k - v
    let mut ends = vec![0u64; k + 1];
    for &v in &big {
        ends[k - v as usize] += 1;
    }
    for j in 1..k {
        if desc[j] {
            ends[j] += 1;
        }
    }
    ends[k] += 1;

    let mut out_blocks: Vec<(&[u32], u64)> = Vec::new();
    let empty: &[u32] = &[];
    for _ in 0..ends[0] {
        out_blocks.push((empty, k as u64));
    }
    let mut start = 0;
    for j in 1..=k {
        if ends[j] > 0 {
            out_blocks.push((&word[start..j], (k - j) as u64));
            for _ in 1..ends[j] {
                out_blocks.push((empty, (k - j) as u64));
            }
            start = j;
        }
    }
    Ok(assemble(&out_blocks, mm).conjugate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::partitions_of;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn m(k: u32) -> Modulus {
        Modulus::new(k).unwrap()
    }

    #[test]
    fn worked_pair() {
        let mu = p("19+17+14+13+13+8+1");
        let nu = p("11+10+9+9+8+8+6+5+5+4+4+2+2+1+1");
        assert_eq!(phi(&mu, m(3)).unwrap(), nu);
        assert_eq!(phi_inv(&nu, m(3)).unwrap(), mu);
    }

    #[test]
    fn empty_maps_to_empty() {
        for k in 2..6 {
            assert_eq!(phi(&Partition::empty(), m(k)).unwrap(), Partition::empty());
            assert_eq!(
                phi_inv(&Partition::empty(), m(k)).unwrap(),
                Partition::empty()
            );
        }
    }

    #[test]
    fn rejects_out_of_family_inputs() {
        assert!(matches!(
            phi(&p("6+1"), m(3)),
            Err(Error::NotRegular { .. })
        ));
        assert!(matches!(
            phi_inv(&p("2+2+2"), m(3)),
            Err(Error::MultiplicityTooLarge { .. })
        ));
    }

    #[test]
    fn odd_to_distinct_at_ten() {
        let odd: Vec<_> = partitions_of(10)
            .unwrap()
            .filter(|q| q.is_m_regular(m(2)))
            .collect();
        assert_eq!(odd.len(), 10);
        let image: BTreeSet<_> = odd.iter().map(|q| phi(q, m(2)).unwrap()).collect();
        let distinct: BTreeSet<_> = partitions_of(10)
            .unwrap()
            .filter(|q| q.max_multiplicity() < 2)
            .collect();
        assert_eq!(image, distinct);
    }

    #[test]
    fn small_cases_by_hand() {
        // 2: one block (1,1,0) holding a single residue-2 step, no slack
        assert_eq!(phi(&p("2"), m(3)).unwrap(), p("1+1"));
        // 1+1+1+1: conjugate 4 is one block of four residue-1 steps
        assert_eq!(phi(&p("1+1+1+1"), m(3)).unwrap(), p("4"));
        // 4: conjugate 1+1+1+1 starts with an empty block, which becomes one unit of slack
        assert_eq!(phi(&p("4"), m(3)).unwrap(), p("2+1+1"));
    }

    #[test]
    fn round_trip_and_contract_m3() {
        for n in 0..=14 {
            for q in partitions_of(n).unwrap().filter(|q| q.is_m_regular(m(3))) {
                let image = phi(&q, m(3)).unwrap();
                assert_eq!(image.weight(), q.weight());
                assert!(image.max_multiplicity() < 3);
                assert_eq!(image.alt_sum_type(m(3)), q.length_type(m(3)));
                assert_eq!(phi_inv(&image, m(3)).unwrap(), q);
            }
        }
    }
}
