//! The composed bijections λ → μ → ν → π → ρ → τ between the residue-class
//! families (B₁/D₁) and the difference-condition families (B₂/D₂).
//!
//! Forward, for a parameter r ≥ 1 with m = 2r+1:
//! 1. μ: the parts of λ congruent to 2, 4, …, 4r mod 4r+2, halved (an m-regular partition);
//! 2. ν = φ_m(μ);
//! 3. π: every part of ν taken twice;
//! 4. ρ: π together with m copies of i for every remaining part m·i of λ;
//! 5. τ: the conjugate of ρ.
//!
//! The mod-6 chain is the case r = 1.

use std::fmt;

use serde::Serialize;

use crate::enumeration::{Family, Preset};
use crate::error::{Error, Result};
use crate::partition::{Modulus, Partition};
use crate::stockhofe::{phi, phi_inv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Every intermediate partition of one run of the chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainTrace {
    pub direction: Direction,
    pub r: u32,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub pi: Partition,
    pub rho: Partition,
    pub tau: Partition,
}

impl ChainTrace {
    /// `(symbol, partition)` pairs in chain order.
    pub fn steps(&self) -> [(&'static str, &Partition); 6] {
        [
            ("λ", &self.lambda),
            ("μ", &self.mu),
            ("ν", &self.nu),
            ("π", &self.pi),
            ("ρ", &self.rho),
            ("τ", &self.tau),
        ]
    }
}

impl fmt::Display for ChainTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (sym, p) in self.steps() {
            writeln!(f, "{sym} = {p}")?;
        }
        Ok(())
    }
}

/// Each part repeated `copies` times.
pub fn repeat_parts(p: &Partition, copies: u32) -> Partition {
    let mut parts = Vec::with_capacity(p.len() * copies as usize);
    for &v in p.parts() {
        parts.extend(std::iter::repeat_n(v, copies as usize));
    }
    Partition::from_sorted(parts)
}

/// Replaces each part by m−1 copies of itself. The m-alternating-sum type
/// of the result is the reverse of that of `p`.
pub fn duplicate(p: &Partition, m: Modulus) -> Partition {
    repeat_parts(p, m.get() - 1)
}

/// Halves every multiplicity; fails if some multiplicity is odd.
pub fn halve_multiplicities(p: &Partition) -> Result<Partition> {
    let mut parts = Vec::with_capacity(p.len() / 2);
    for (v, c) in p.runs() {
        if c % 2 != 0 {
            return Err(Error::FamilyViolation {
                family: "even multiplicities".into(),
                partition: p.to_string(),
                rule: format!("part {v} occurs {c} times"),
            });
        }
        parts.extend(std::iter::repeat_n(v, c as usize / 2));
    }
    Ok(Partition::from_sorted(parts))
}

/// Removes, for every part value, the unique number of t-tuples that leaves
/// a multiplicity in {0, 2, …, 2(t−1)}.
///
/// `t = 2r+1` must be odd and at least 3, and no multiplicity may lie in
/// {1, 3, …, 2r−1}. Returns the reduced partition and the `(value, tuples)`
/// removed, largest value first.
pub fn strip_tuples(p: &Partition, t: u32) -> Result<(Partition, Vec<(u32, u32)>)> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(Error::InvalidModulus(t));
    }
    let r = (t - 1) / 2;
    let mut kept = Vec::with_capacity(p.len());
    let mut removed = Vec::new();
    for (v, c) in p.runs() {
        if c % 2 == 1 && c < 2 * r {
            return Err(Error::FamilyViolation {
                family: format!("multiplicities outside {{1,3,...,{}}}", 2 * r - 1),
                partition: p.to_string(),
                rule: format!("part {v} occurs {c} times"),
            });
        }
        let residual = (0..=4 * r)
            .step_by(2)
            .find(|&e| e <= c && (c - e) % t == 0)
            .expect("residues 0,2,...,4r cover every class mod 2r+1");
        kept.extend(std::iter::repeat_n(v, residual as usize));
        let tuples = (c - residual) / t;
        if tuples > 0 {
            removed.push((v, tuples));
        }
    }
    Ok((Partition::from_sorted(kept), removed))
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidR(r));
    }
    Ok(())
}

fn require(family: &Family, label: &str, p: &Partition) -> Result<()> {
    if let Some(rule) = family.spec.first_violation(p) {
        return Err(Error::FamilyViolation {
            family: label.to_string(),
            partition: p.to_string(),
            rule,
        });
    }
    Ok(())
}

/// Forward chain for general r: parts even or ≡ 2r+1 (mod 4r+2) in,
/// D₂-type partition out.
pub fn andrews_forward(lambda: &Partition, r: u32) -> Result<ChainTrace> {
    check_r(r)?;
    let family = Preset::D1.family(r)?;
    require(&family, &family.name, lambda)?;
    forward_unchecked(lambda, r)
}

fn forward_unchecked(lambda: &Partition, r: u32) -> Result<ChainTrace> {
    let m = 2 * r + 1;
    let big = 4 * r + 2;
    let modulus = Modulus::new(m)?;
    let mut halves = Vec::new();
    let mut tuples = Vec::new();
    for &v in lambda.parts() {
        if v % m == 0 {
            tuples.extend(std::iter::repeat_n(v / m, m as usize));
        } else {
            debug_assert!(v % 2 == 0 && v % big != 0);
            halves.push(v / 2);
        }
    }
    let mu = Partition::from_sorted(halves);
    let nu = phi(&mu, modulus)?;
    let pi = repeat_parts(&nu, 2);
    let rho = pi.union(&Partition::from_unsorted_lossy(tuples));
    let tau = rho.conjugate();
    Ok(ChainTrace {
        direction: Direction::Forward,
        r,
        lambda: lambda.clone(),
        mu,
        nu,
        pi,
        rho,
        tau,
    })
}

/// Inverse chain for general r.
pub fn andrews_inverse(tau: &Partition, r: u32) -> Result<ChainTrace> {
    check_r(r)?;
    let family = Preset::D2.family(r)?;
    require(&family, &family.name, tau)?;
    inverse_unchecked(tau, r)
}

fn inverse_unchecked(tau: &Partition, r: u32) -> Result<ChainTrace> {
    let m = 2 * r + 1;
    let modulus = Modulus::new(m)?;
    let rho = tau.conjugate();
    let (pi, removed) = strip_tuples(&rho, m)?;
    let nu = halve_multiplicities(&pi)?;
    let mu = phi_inv(&nu, modulus)?;
    let mut parts: Vec<u32> = mu.parts().iter().map(|&v| 2 * v).collect();
    for (v, count) in removed {
        parts.extend(std::iter::repeat_n(m * v, count as usize));
    }
    let lambda = Partition::from_unsorted_lossy(parts);
    Ok(ChainTrace {
        direction: Direction::Inverse,
        r,
        lambda,
        mu,
        nu,
        pi,
        rho,
        tau: tau.clone(),
    })
}

/// The mod-6 chain: parts ≡ 0, 2, 3, 4 (mod 6) in, sequence-avoiding
/// partition without 1s out.
pub fn macmahon_forward(lambda: &Partition) -> Result<ChainTrace> {
    let family = Preset::B1.family(1)?;
    require(&family, "B1", lambda)?;
    forward_unchecked(lambda, 1)
}

/// Inverse of [`macmahon_forward`].
pub fn macmahon_inverse(tau: &Partition) -> Result<ChainTrace> {
    let family = Preset::B2.family(1)?;
    require(&family, "B2", tau)?;
    inverse_unchecked(tau, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn worked() -> ChainTrace {
        macmahon_forward(&p("39+38+34+28+26+26+18+16+3+2")).unwrap()
    }

    #[test]
    fn worked_chain_forward() {
        let t = worked();
        assert_eq!(t.mu, p("19+17+14+13+13+8+1"));
        assert_eq!(t.nu, p("11+10+9+9+8+8+6+5+5+4+4+2+2+1+1"));
        assert_eq!(
            t.pi,
            p("11+11+10+10+9+9+9+9+8+8+8+8+6+6+5+5+5+5+4+4+4+4+2+2+2+2+1+1+1+1")
        );
        assert_eq!(
            t.rho,
            p("13+13+13+11+11+10+10+9+9+9+9+8+8+8+8+6+6+6+6+6+5+5+5+5+4+4+4+4+2+2+2+2+1+1+1+1+1+1+1")
        );
        assert_eq!(t.tau, p("39+32+28+28+24+20+15+15+11+7+5+3+3"));
        assert_eq!(t.tau.weight(), 230);
    }

    #[test]
    fn worked_chain_inverse() {
        let t = macmahon_inverse(&p("39+32+28+28+24+20+15+15+11+7+5+3+3")).unwrap();
        assert_eq!(t.lambda, p("39+38+34+28+26+26+18+16+3+2"));
        assert_eq!(t.mu, worked().mu);
        assert_eq!(t.nu, worked().nu);
    }

    #[test]
    fn trivial_chains() {
        let t = macmahon_forward(&Partition::empty()).unwrap();
        assert!(t.steps().iter().all(|(_, q)| q.is_empty()));
        let t = macmahon_inverse(&Partition::empty()).unwrap();
        assert!(t.lambda.is_empty());

        let t = macmahon_forward(&p("3")).unwrap();
        assert!(t.mu.is_empty());
        assert_eq!(t.rho, p("1+1+1"));
        assert_eq!(t.tau, p("3"));

        let t = andrews_forward(&p("5"), 2).unwrap();
        assert_eq!(t.rho, p("1+1+1+1+1"));
        assert_eq!(t.tau, p("5"));
        assert_eq!(andrews_inverse(&p("5"), 2).unwrap().lambda, p("5"));
        assert!(andrews_forward(&Partition::empty(), 3)
            .unwrap()
            .tau
            .is_empty());
    }

    #[test]
    fn family_violations_are_reported() {
        match macmahon_forward(&p("7+2")) {
            Err(Error::FamilyViolation { rule, .. }) => assert!(rule.contains("part 7")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(macmahon_inverse(&p("5+4")).is_err());
        assert!(macmahon_inverse(&p("5+1")).is_err());
        assert!(andrews_forward(&p("3"), 2).is_err());
        assert!(andrews_forward(&p("2"), 0).is_err());
    }

    #[test]
    fn duplicate_examples() {
        let nu = worked().nu;
        assert_eq!(duplicate(&nu, Modulus::new(3).unwrap()), worked().pi);
        assert!(duplicate(&Partition::empty(), Modulus::new(5).unwrap()).is_empty());
        assert_eq!(
            duplicate(&p("3+1"), Modulus::new(4).unwrap()),
            p("3+3+3+1+1+1")
        );
    }

    #[test]
    fn strip_tuples_examples() {
        let (kept, removed) = strip_tuples(&p("5+5+5+5+5+5+5"), 3).unwrap();
        assert_eq!(kept, p("5+5+5+5"));
        assert_eq!(removed, vec![(5, 1)]);
        let (kept, removed) = strip_tuples(&p("4+4"), 3).unwrap();
        assert_eq!(kept, p("4+4"));
        assert!(removed.is_empty());
        let (kept, removed) = strip_tuples(&p("2+2+2+2+2+2"), 3).unwrap();
        assert!(kept.is_empty());
        assert_eq!(removed, vec![(2, 2)]);
        assert!(strip_tuples(&p("3"), 3).is_err());
        assert!(strip_tuples(&p("3+3+3"), 5).is_err());
        assert!(strip_tuples(&p("3+3"), 4).is_err());
    }

    #[test]
    fn halving() {
        assert_eq!(halve_multiplicities(&p("4+4+1+1+1+1")).unwrap(), p("4+1+1"));
        assert!(halve_multiplicities(&p("4+4+4")).is_err());
    }

    #[test]
    fn trace_display_has_six_lines() {
        let text = worked().to_string();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "λ = 39+38+34+28+26+26+18+16+3+2");
        assert_eq!(lines[5], "τ = 39+32+28+28+24+20+15+15+11+7+5+3+3");
    }
}
