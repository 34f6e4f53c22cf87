//! Exhaustive verification sweeps.
//!
//! Every identity is checked two ways where possible: enumeration against
//! enumeration, and enumeration against the truncated product. Sweeps fan
//! out over independent inputs; with [`Exec::Parallel`] (and the `parallel`
//! feature) they run on the rayon pool, otherwise sequentially. Results are
//! folded in input order, so reports are identical in both modes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::colored::{
    admissible_colored, admissible_counts, colored_to_mod6, mod6_to_colored, to_colored,
};
use crate::enumeration::{odd_multiplicity_family, partitions_of, Family, Preset};
use crate::error::Result;
use crate::maps::{
    andrews_forward, andrews_inverse, duplicate, macmahon_forward, macmahon_inverse,
};
use crate::partition::{Modulus, Partition};
use crate::qseries::{products, TruncatedSeries};
use crate::stockhofe::{phi, phi_inv};

/// Execution mode for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential execution without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Applies `f` to every item, preserving order.
pub fn map_items<I, T, F>(exec: Exec, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            cases: 0,
            counterexample: None,
        }
    }

    /// Records one comparison; the first failure is kept as the counterexample.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(detail());
        }
    }

    /// Folds another check of the same name into this one.
    pub fn absorb(&mut self, other: Check) {
        self.cases += other.cases;
        if self.passed && !other.passed {
            self.passed = false;
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub parameters: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name_prefix: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name.starts_with(name_prefix))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.identity, self.parameters)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  {status} {} ({} cases)", c.name, c.cases)?;
            if let Some(ce) = &c.counterexample {
                write!(f, ": {ce}")?;
            }
            writeln!(f)?;
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "  {status} overall in {:.1} ms", self.elapsed_ms)
    }
}

/// Merges per-item check lists (all with the same names, same order).
fn merge(per_item: Vec<Vec<Check>>) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    for checks in per_item {
        if out.is_empty() {
            out = checks;
            continue;
        }
        for (acc, c) in out.iter_mut().zip(checks) {
            acc.absorb(c);
        }
    }
    out
}

fn finish(
    identity: &str,
    parameters: String,
    checks: Vec<Check>,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        identity: identity.to_string(),
        parameters,
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn family(p: Preset, r: u32) -> Family {
    p.family(r).expect("valid r")
}

fn fmt_type(t: &[u64]) -> String {
    let inner: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Compares two type-indexed count maps over the union of their keys.
fn compare_maps(
    check: &mut Check,
    n: u32,
    left: &BTreeMap<Vec<u64>, u64>,
    right: &BTreeMap<Vec<u64>, u64>,
    names: (&str, &str),
) {
    let keys: BTreeSet<&Vec<u64>> = left.keys().chain(right.keys()).collect();
    for key in keys {
        let a = left.get(key).copied().unwrap_or(0);
        let b = right.get(key).copied().unwrap_or(0);
        check.record(a == b, || {
            format!(
                "n={n} type {}: {}={a}, {}={b}",
                fmt_type(key),
                names.0,
                names.1
            )
        });
    }
}

/// Compares enumeration counts keyed by marker exponents with a series.
fn compare_series(
    check: &mut Check,
    n: u32,
    counts: &BTreeMap<Vec<u64>, u64>,
    series: &TruncatedSeries,
) {
    let mut keys: BTreeSet<Vec<u64>> = counts.keys().cloned().collect();
    for (deg, e, _) in series.cells() {
        if deg == n as usize {
            keys.insert(e.iter().map(|&x| u64::from(x)).collect());
        }
    }
    for key in keys {
        let expected = counts.get(&key).copied().unwrap_or(0);
        let e: Vec<u32> = key.iter().map(|&x| x as u32).collect();
        let got = series.coeff(n as usize, &e).unwrap_or(i64::MIN);
        check.record(got == expected as i64, || {
            format!(
                "n={n} markers {}: enumeration {expected}, series {got}",
                fmt_type(&key)
            )
        });
    }
}

/// A₁(n) = A₂(n) = A₃(n), and A₁ against its product.
pub fn verify_macmahon(max_n: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let series = products::mod6(max_n as usize)?;
    let fams = [
        family(Preset::A1, 1),
        family(Preset::A2, 1),
        family(Preset::A3, 1),
    ];
    let per_n = map_items(exec, (0..=max_n).collect(), |n| {
        let a: Vec<u64> = fams.iter().map(|f| f.count(n).unwrap()).collect();
        let mut eq = Check::new("A1(n) = A2(n) = A3(n)");
        eq.record(a[0] == a[1] && a[1] == a[2], || {
            format!("n={n}: A1={} A2={} A3={}", a[0], a[1], a[2])
        });
        let mut ser = Check::new("A1(n) = [q^n] 1/(q^2,q^3,q^4,q^6;q^6)");
        let c = series.coeff(n as usize, &[]).unwrap();
        ser.record(c == a[0] as i64, || {
            format!("n={n}: A1={} series={c}", a[0])
        });
        vec![eq, ser]
    });
    Ok(finish(
        "macmahon",
        format!("n <= {max_n}"),
        merge(per_n),
        start,
    ))
}

/// B₁ = B₂ for every type, ΣB₁ = A₁, the refined product, and the chain.
pub fn verify_refined(max_n: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let series = products::refined_mod6(max_n as usize)?;
    let (b1, b2, a1) = (
        family(Preset::B1, 1),
        family(Preset::B2, 1),
        family(Preset::A1, 1),
    );
    let per_n = map_items(exec, (0..=max_n).collect(), |n| {
        let m1 = b1.count_by_type(n).unwrap();
        let m2 = b2.count_by_type(n).unwrap();
        let mut eq = Check::new("B1(m1,m2,n) = B2(m1,m2,n)");
        compare_maps(&mut eq, n, &m1, &m2, ("B1", "B2"));
        let mut sum = Check::new("sum of B1 over types = A1(n)");
        let total: u64 = m1.values().sum();
        let a = a1.count(n).unwrap();
        sum.record(total == a, || format!("n={n}: sum B1={total}, A1={a}"));
        let mut ser = Check::new("B1 cells = [A^m1 C^m2 q^n] of the refined product");
        compare_series(&mut ser, n, &m1, &series);
        let mut chain = Check::new("chain: B1 -> B2 type-preserving bijection with inverse");
        check_chain(&mut chain, n, 1, &b1, &b2);
        vec![eq, sum, ser, chain]
    });
    Ok(finish(
        "refined",
        format!("n <= {max_n}"),
        merge(per_n),
        start,
    ))
}

/// Runs the chain on every member of `source(n)` and checks the image is `target(n)`
/// with types carried over and the inverse undoing it. `target` must carry the
/// type statistic the chain realizes.
fn check_chain(check: &mut Check, n: u32, r: u32, source: &Family, target: &Family) {
    let src_ts = source.type_spec.as_ref().unwrap();
    let dst_ts = target.type_spec.as_ref().unwrap();
    let mut image = BTreeSet::new();
    for lambda in source.list(n).unwrap() {
        let trace = if r == 1 {
            macmahon_forward(&lambda)
        } else {
            andrews_forward(&lambda, r)
        };
        let trace = match trace {
            Ok(t) => t,
            Err(e) => {
                check.record(false, || format!("{lambda}: {e}"));
                continue;
            }
        };
        let tau = &trace.tau;
        let m = 2 * r + 1;
        let weights_ok = trace.rho.weight() == lambda.weight()
            && tau.weight() == lambda.weight()
            && trace.pi.weight() == 2 * trace.mu.weight();
        let rho_ok = trace.rho.runs().all(|(_, c)| !(c % 2 == 1 && c < m));
        let in_target = target.spec.satisfies(tau);
        let type_ok = src_ts.type_of(&lambda) == dst_ts.type_of(tau);
        let back = if r == 1 {
            macmahon_inverse(tau)
        } else {
            andrews_inverse(tau, r)
        };
        let back_ok = back.as_ref().map(|t| t.lambda == lambda).unwrap_or(false);
        check.record(
            weights_ok && rho_ok && in_target && type_ok && back_ok,
            || {
                format!(
                    "λ={lambda} τ={tau}: weights {weights_ok}, rho multiplicities {rho_ok}, \
                 in target {in_target}, type {type_ok}, inverse {back_ok}"
                )
            },
        );
        image.insert(tau.clone());
    }
    let expected: BTreeSet<Partition> = target.list(n).unwrap().into_iter().collect();
    check.record(image == expected, || {
        let missing = expected.difference(&image).next();
        format!(
            "n={n}: image has {} partitions, target family {}; first missing {:?}",
            image.len(),
            expected.len(),
            missing.map(|p| p.to_string())
        )
    });
}

/// C₁ = C₂ for every type, C₁ against its product, and the three-color dilation.
pub fn verify_companion(max_n: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let series = products::companion_mod6(max_n as usize)?;
    let (c1, c2) = (family(Preset::C1, 1), family(Preset::C2, 1));
    let per_n = map_items(exec, (0..=max_n).collect(), |n| {
        let m1 = c1.count_by_type(n).unwrap();
        let m2 = c2.count_by_type(n).unwrap();
        let mut eq = Check::new("C1(m1,m2,n) = C2(m1,m2,n)");
        compare_maps(&mut eq, n, &m1, &m2, ("C1", "C2"));
        let mut ser = Check::new("C1 cells = product coefficients");
        compare_series(&mut ser, n, &m1, &series);
        let mut dil = Check::new("C2 <-> admissible three-colored partitions under dilation");
        for p in c2.list(n).unwrap() {
            let ok = mod6_to_colored(&p)
                .ok()
                .filter(|cp| cp.is_admissible())
                .and_then(|cp| colored_to_mod6(&cp).ok())
                .is_some_and(|back| back == p);
            dil.record(ok, || format!("{p}"));
        }
        vec![eq, ser, dil]
    });
    Ok(finish(
        "companion",
        format!("n <= {max_n}"),
        merge(per_n),
        start,
    ))
}

/// D₁ = D₂ under both residue conventions, Andrews's count identity, the
/// product for D₁, the r = 1 cross-check with the B counters, and the chain.
pub fn verify_andrews(rs: &[u32], max_n: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut all = Vec::new();
    for &r in rs {
        let series = products::andrews_residues(max_n as usize, r)?;
        let d1 = Preset::D1.family(r)?;
        let d2 = Preset::D2.family(r)?;
        let d2x = Preset::D2Doubled.family(r)?;
        let odd = odd_multiplicity_family(r)?;
        let (b1, b2) = (family(Preset::B1, 1), family(Preset::B2, 1));
        let per_n = map_items(exec, (0..=max_n).collect(), |n| {
            let m1 = d1.count_by_type(n).unwrap();
            let m2 = d2.count_by_type(n).unwrap();
            let m2x = d2x.count_by_type(n).unwrap();
            let mut stated = Check::new(format!("r={r}: D1 = D2, m_i on residue 2r-i+1 mod 2r+1"));
            compare_maps(&mut stated, n, &m1, &m2, ("D1", "D2"));
            let mut doubled = Check::new(format!("r={r}: D1 = D2, m_i on residue 2i mod 2r+1"));
            compare_maps(&mut doubled, n, &m1, &m2x, ("D1", "D2"));
            let mut totals = Check::new(format!(
                "r={r}: sum D1 = sum D2 = odd multiplicities at least 2r+1"
            ));
            let (t1, t2): (u64, u64) = (m1.values().sum(), m2.values().sum());
            let t3 = odd.count(n).unwrap();
            totals.record(t1 == t2 && t2 == t3, || {
                format!("n={n}: D1={t1} D2={t2} odd-multiplicity={t3}")
            });
            let mut ser = Check::new(format!("r={r}: D1 cells = product coefficients"));
            compare_series(&mut ser, n, &m1, &series);
            let mut b_check = Check::new(format!("r={r}: D1 = B1 and D2 = B2 per type"));
            if r == 1 {
                compare_maps(
                    &mut b_check,
                    n,
                    &m1,
                    &b1.count_by_type(n).unwrap(),
                    ("D1", "B1"),
                );
                compare_maps(
                    &mut b_check,
                    n,
                    &m2,
                    &b2.count_by_type(n).unwrap(),
                    ("D2", "B2"),
                );
            }
            let mut chain = Check::new(format!("r={r}: chain D1 -> D2 bijection with inverse"));
            check_chain(&mut chain, n, r, &d1, &d2x);
            let mut back = Check::new(format!("r={r}: inverse then forward is the identity on D2"));
            for tau in d2.list(n).unwrap() {
                let again = andrews_inverse(&tau, r).and_then(|t| andrews_forward(&t.lambda, r));
                back.record(again.as_ref().is_ok_and(|t| t.tau == tau), || {
                    format!("τ={tau}: {again:?}")
                });
            }
            vec![stated, doubled, totals, ser, b_check, chain, back]
        });
        let mut checks = merge(per_n);
        if r != 1 {
            checks.retain(|c| !c.name.contains("= B1"));
        }
        all.extend(checks);
    }
    Ok(finish(
        "andrews",
        format!("r in {rs:?}, n <= {max_n}"),
        all,
        start,
    ))
}

/// The φ_m contract: weight, type transport, round trip and exact image,
/// plus the map-free count equality.
pub fn verify_phi(moduli: &[u32], max_n: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut items = Vec::new();
    for &m in moduli {
        Modulus::new(m)?;
        for n in 0..=max_n {
            items.push((m, n));
        }
    }
    let per = map_items(exec, items, |(m, n)| {
        let md = Modulus::new(m).unwrap();
        let mut weight = Check::new("weight preserved");
        let mut mult = Check::new("image multiplicities below m");
        let mut ty = Check::new("length type -> alternating-sum type");
        let mut round = Check::new("phi_inv(phi(p)) = p");
        let mut image = Check::new("image = partitions with multiplicities below m");
        let mut counts = Check::new("regular and bounded-multiplicity counts agree per type");
        let mut regular_types: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        let mut bounded_types: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        let mut bounded = BTreeSet::new();
        for p in partitions_of(n).unwrap() {
            if p.max_multiplicity() < m {
                *bounded_types
                    .entry(p.alt_sum_type(md).entries().to_vec())
                    .or_insert(0) += 1;
                bounded.insert(p.clone());
            }
            if !p.is_m_regular(md) {
                continue;
            }
            *regular_types
                .entry(p.length_type(md).entries().to_vec())
                .or_insert(0) += 1;
            let q = phi(&p, md).unwrap();
            weight.record(q.weight() == p.weight(), || format!("m={m}: {p} -> {q}"));
            mult.record(q.max_multiplicity() < m, || format!("m={m}: {p} -> {q}"));
            ty.record(q.alt_sum_type(md) == p.length_type(md), || {
                format!(
                    "m={m}: {p} type {} -> {q} type {}",
                    p.length_type(md),
                    q.alt_sum_type(md)
                )
            });
            let back = phi_inv(&q, md);
            round.record(back.as_ref() == Ok(&p), || {
                format!("m={m}: {p} -> {q} -> {back:?}")
            });
            seen.insert(q);
        }
        image.record(seen == bounded, || {
            format!(
                "m={m} n={n}: image {} vs target {}",
                seen.len(),
                bounded.len()
            )
        });
        compare_maps(
            &mut counts,
            n,
            &regular_types,
            &bounded_types,
            ("regular", "bounded"),
        );
        vec![weight, mult, ty, round, image, counts]
    });
    Ok(finish(
        "phi",
        format!("m in {moduli:?}, n <= {max_n}"),
        merge(per),
        start,
    ))
}

/// Conjugation carries the alternating-sum type to the length type, and
/// duplication reverses the alternating-sum type.
pub fn verify_lemmas(moduli: &[u32], max_weight: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let mods: Vec<Modulus> = moduli
        .iter()
        .map(|&m| Modulus::new(m))
        .collect::<Result<_>>()?;
    let per = map_items(exec, (0..=max_weight).collect(), |n| {
        let mut conj = Check::new("alt_sum_type(p) = length_type(conjugate(p))");
        let mut dup = Check::new("duplicate(p, m) reverses alt_sum_type");
        let mut inv = Check::new("conjugation is an involution");
        for p in partitions_of(n).unwrap() {
            let c = p.conjugate();
            inv.record(c.conjugate() == p, || format!("{p}"));
            for &m in &mods {
                conj.record(p.alt_sum_type(m) == c.length_type(m), || {
                    format!("m={m}: {p}")
                });
                let d = duplicate(&p, m);
                dup.record(d.alt_sum_type(m) == p.alt_sum_type(m).reversed(), || {
                    format!("m={m}: {p}")
                });
            }
        }
        vec![conj, dup, inv]
    });
    Ok(finish(
        "lemmas",
        format!("m in {moduli:?}, weight <= {max_weight}"),
        merge(per),
        start,
    ))
}

/// Admissible colored partitions against their products (three colors up to
/// `max_weight_r1`, five colors up to `max_weight_r2`), and the coloring of
/// B₂ partitions.
pub fn verify_colored(max_weight_r1: u32, max_weight_r2: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (r, w) in [(1u32, max_weight_r1), (2, max_weight_r2)] {
        let series = products::colored(w as usize, r)?;
        let counts = admissible_counts(w, r)?;
        let mut check = Check::new(format!(
            "r={r}: admissible colored counts = product coefficients"
        ));
        for n in 0..=w {
            let slice: BTreeMap<Vec<u64>, u64> = counts
                .iter()
                .filter(|((deg, _), _)| *deg == n)
                .map(|((_, k), &v)| (k.clone(), v))
                .collect();
            compare_series(&mut check, n, &slice, &series);
        }
        checks.push(check);
    }
    let mut coloring = Check::new("B2 partitions color into admissible three-colored partitions");
    let b2 = family(Preset::B2, 1);
    for n in 0..=max_weight_r1.min(30) {
        for tau in b2.list(n)? {
            let ok = to_colored(&tau, 1).is_ok_and(|cp| cp.is_admissible());
            coloring.record(ok, || tau.to_string());
        }
    }
    checks.push(coloring);
    let mut dilation = Check::new("dilation sends admissible three-colored partitions into C2");
    let c2 = family(Preset::C2, 1);
    for w in 0..=max_weight_r1.min(12) {
        for cp in admissible_colored(w, 1)? {
            let ok = colored_to_mod6(&cp).is_ok_and(|p| c2.spec.satisfies(&p));
            dilation.record(ok, || cp.to_string());
        }
    }
    checks.push(dilation);
    Ok(finish(
        "colored",
        format!("r=1 weight <= {max_weight_r1}, r=2 weight <= {max_weight_r2}"),
        checks,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(verify_macmahon(12, exec).unwrap().passed());
            assert!(verify_refined(12, exec).unwrap().passed());
            assert!(verify_companion(12, exec).unwrap().passed());
            assert!(verify_phi(&[2, 3], 10, exec).unwrap().passed());
            assert!(verify_lemmas(&[3, 5], 10, exec).unwrap().passed());
        }
        assert!(verify_colored(8, 6).unwrap().passed());
    }

    #[test]
    fn modes_agree() {
        let a = verify_refined(10, Exec::Sequential).unwrap();
        let b = verify_refined(10, Exec::Parallel).unwrap();
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn failures_keep_first_counterexample() {
        let mut c = Check::new("x");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert!(!c.passed);
        assert_eq!(c.cases, 3);
        assert_eq!(c.counterexample.as_deref(), Some("first"));
    }

    #[test]
    fn stated_andrews_convention_fails_at_r2() {
        let report = verify_andrews(&[2], 4, Exec::Sequential).unwrap();
        let stated = report.check("r=2: D1 = D2, m_i on residue 2r-i+1").unwrap();
        assert!(!stated.passed);
        assert!(stated.counterexample.as_ref().unwrap().starts_with("n=2"));
        let doubled = report.check("r=2: D1 = D2, m_i on residue 2i").unwrap();
        assert!(doubled.passed);
    }
}
