//! Truncated power series in q whose coefficients are polynomials in a
//! fixed number of marker variables, with checked integer arithmetic.
//!
//! Storage is dense in q (degrees 0..=N) and sparse in the markers (a map
//! from exponent vector to coefficient).

use std::collections::BTreeMap;

use crate::error::{Error, Result};

type Poly = BTreeMap<Vec<u32>, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    degree: usize,
    arity: usize,
    coeffs: Vec<Poly>,
}

fn add_into(target: &mut Poly, key: Vec<u32>, value: i64) -> Result<()> {
    let slot = target.entry(key).or_insert(0);
    *slot = slot
        .checked_add(value)
        .ok_or(Error::Overflow("series coefficient"))?;
    Ok(())
}

impl TruncatedSeries {
    /// The series 1 truncated at degree `degree`.
    pub fn one(degree: usize, arity: usize) -> Self {
        let mut coeffs = vec![Poly::new(); degree + 1];
        coeffs[0].insert(vec![0; arity], 1);
        TruncatedSeries {
            degree,
            arity,
            coeffs,
        }
    }

    pub fn zero(degree: usize, arity: usize) -> Self {
        TruncatedSeries {
            degree,
            arity,
            coeffs: vec![Poly::new(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn check_exponents(&self, e: &[u32]) -> Result<()> {
        if e.len() != self.arity {
            return Err(Error::TypeLength {
                got: format!("{e:?}"),
                expected: self.arity,
            });
        }
        Ok(())
    }

    /// Adds `value · M^e q^n`.
    pub fn add_term(&mut self, n: usize, e: &[u32], value: i64) -> Result<()> {
        self.check_exponents(e)?;
        if n > self.degree {
            return Ok(());
        }
        add_into(&mut self.coeffs[n], e.to_vec(), value)?;
        self.coeffs[n].retain(|_, v| *v != 0);
        Ok(())
    }

    /// Multiplies by 1/(1 − M q^k), M the monomial with exponents `e`.
    pub fn mul_inverse_factor(&self, k: usize, e: &[u32]) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                what: "part size",
                value: 0,
                limit: 0,
            });
        }
        self.check_exponents(e)?;
        // T_n = S_n + M T_{n-k}
        let mut out = self.clone();
        for n in k..=self.degree {
            let shifted: Vec<(Vec<u32>, i64)> = out.coeffs[n - k]
                .iter()
                .map(|(key, &v)| (key.iter().zip(e).map(|(a, b)| a + b).collect(), v))
                .collect();
            for (key, v) in shifted {
                add_into(&mut out.coeffs[n], key, v)?;
            }
        }
        Ok(out)
    }

    /// Coefficient of `M^e q^n`.
    pub fn coeff(&self, n: usize, e: &[u32]) -> Result<i64> {
        if n > self.degree {
            return Err(Error::OutOfRange {
                what: "degree",
                value: n as u64,
                limit: self.degree as u64,
            });
        }
        self.check_exponents(e)?;
        Ok(self.coeffs[n].get(e).copied().unwrap_or(0))
    }

    /// Sum of all marker coefficients at degree n (markers set to 1).
    pub fn total(&self, n: usize) -> Result<i64> {
        if n > self.degree {
            return Err(Error::OutOfRange {
                what: "degree",
                value: n as u64,
                limit: self.degree as u64,
            });
        }
        self.coeffs[n]
            .values()
            .try_fold(0i64, |acc, &v| acc.checked_add(v))
            .ok_or(Error::Overflow("series total"))
    }

    /// Nonzero cells `(degree, exponents, value)` in increasing order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, &[u32], i64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(n, poly)| {
            poly.iter()
                .filter(|(_, &v)| v != 0)
                .map(move |(e, &v)| (n, e.as_slice(), v))
        })
    }

    /// Product truncated at the smaller degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::TypeLength {
                got: format!("arity {}", other.arity),
                expected: self.arity,
            });
        }
        let degree = self.degree.min(other.degree);
        let mut out = TruncatedSeries::zero(degree, self.arity);
        for i in 0..=degree {
            for (ea, &a) in &self.coeffs[i] {
                for j in 0..=degree - i {
                    for (eb, &b) in &other.coeffs[j] {
                        let v = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
                        let key = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        add_into(&mut out.coeffs[i + j], key, v)?;
                    }
                }
            }
        }
        for poly in &mut out.coeffs {
            poly.retain(|_, v| *v != 0);
        }
        Ok(out)
    }

    /// Multiplies by 1/(M q^a; q^s)_∞ truncated at this series' degree:
    /// inverse factors at part sizes a, a+s, a+2s, …, each carrying `e`.
    pub fn mul_progression(&self, a: usize, s: usize, e: &[u32]) -> Result<Self> {
        if a == 0 || s == 0 {
            return Err(Error::OutOfRange {
                what: "progression start or step",
                value: 0,
                limit: 0,
            });
        }
        let mut out = self.clone();
        let mut k = a;
        while k <= self.degree {
            out = out.mul_inverse_factor(k, e)?;
            k += s;
        }
        Ok(out)
    }
}

/// 1/(M q^a; q^s)_∞ truncated at degree N.
pub fn product_over_progression(
    degree: usize,
    a: usize,
    s: usize,
    e: &[u32],
) -> Result<TruncatedSeries> {
    TruncatedSeries::one(degree, e.len()).mul_progression(a, s, e)
}

/// The infinite products attached to each identity.
pub mod products {
    use super::*;

    /// 1/(q;q)_∞.
    pub fn euler(degree: usize) -> Result<TruncatedSeries> {
        product_over_progression(degree, 1, 1, &[])
    }

    /// 1/(q², q³, q⁴, q⁶; q⁶)_∞: partitions into parts ≡ 0, 2, 3, 4 (mod 6).
    pub fn mod6(degree: usize) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::one(degree, 0);
        for a in [2, 3, 4, 6] {
            s = s.mul_progression(a, 6, &[])?;
        }
        Ok(s)
    }

    /// 1/((q³;q³)_∞ (Aq²;q⁶)_∞ (Cq⁴;q⁶)_∞), markers (A, C).
    pub fn refined_mod6(degree: usize) -> Result<TruncatedSeries> {
        TruncatedSeries::one(degree, 2)
            .mul_progression(3, 3, &[0, 0])?
            .mul_progression(2, 6, &[1, 0])?
            .mul_progression(4, 6, &[0, 1])
    }

    /// Parts ≡ 0, 1, 3, 5 (mod 6) with A marking 1 mod 6 and C marking 5 mod 6.
    pub fn companion_mod6(degree: usize) -> Result<TruncatedSeries> {
        TruncatedSeries::one(degree, 2)
            .mul_progression(6, 6, &[0, 0])?
            .mul_progression(3, 6, &[0, 0])?
            .mul_progression(1, 6, &[1, 0])?
            .mul_progression(5, 6, &[0, 1])
    }

    /// 1/((q;q)_∞ (Aq;q²)_∞ (Cq;q²)_∞), markers (A, C).
    pub fn three_color(degree: usize) -> Result<TruncatedSeries> {
        colored(degree, 1)
    }

    /// 1/((q;q)_∞ ∏_{i=1}^{2r} (A_i q;q²)_∞), markers A_1..A_{2r}.
    pub fn colored(degree: usize, r: u32) -> Result<TruncatedSeries> {
        if r == 0 {
            return Err(Error::InvalidR(r));
        }
        let arity = 2 * r as usize;
        let mut s = TruncatedSeries::one(degree, arity).mul_progression(1, 1, &vec![0; arity])?;
        for i in 0..arity {
            let mut e = vec![0; arity];
            e[i] = 1;
            s = s.mul_progression(1, 2, &e)?;
        }
        Ok(s)
    }

    /// Parts even or ≡ 2r+1 (mod 4r+2), A_i marking parts ≡ 2i (mod 4r+2).
    pub fn andrews_residues(degree: usize, r: u32) -> Result<TruncatedSeries> {
        if r == 0 {
            return Err(Error::InvalidR(r));
        }
        let arity = 2 * r as usize;
        let big = 4 * r as usize + 2;
        let zero = vec![0; arity];
        let mut s = TruncatedSeries::one(degree, arity)
            .mul_progression(big, big, &zero)?
            .mul_progression(2 * r as usize + 1, big, &zero)?;
        for i in 0..arity {
            let mut e = vec![0; arity];
            e[i] = 1;
            s = s.mul_progression(2 * (i + 1), big, &e)?;
        }
        Ok(s)
    }
}
