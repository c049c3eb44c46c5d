//! Counting components: set partitions with forbidden block profiles,
//! their vector-partition and generating-function forms, and the grid and
//! line-arrangement component counts.

pub mod series;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::decomposition::{count_nice_grid, count_nice_lines, GRID_PARTITION_BUDGET, LINES_PARTITION_BUDGET};
use crate::error::{Error, Result};
use crate::{BigCount, RationalEgf};

/// The closed form for grid counts is valid from `k, l >= 4`; checked
/// against enumeration at `(4,4)` and `(4,5)` in the test suite.
pub const GRID_FORMULA_MIN: usize = 4;
/// The line count identity `c(n) = q(n) - n` needs `n >= 5`: at `n = 4` the
/// block size `n - 1 = 3` is already forbidden.
pub const LINES_FORMULA_MIN: usize = 5;

/// Forbidden block profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileSet {
    /// One-dimensional: the forbidden block sizes.
    Sizes(BTreeSet<usize>),
    /// Two-dimensional set `S` of the grid count: every `(a, b)` with
    /// `a < 3`, `b < 3` or `(a, b) = (3, 3)`, except `(1,0)` and `(0,1)`.
    Grid,
    Explicit { dim: usize, members: BTreeSet<Vec<usize>> },
}

impl ProfileSet {
    pub fn sizes(forbidden: &[usize]) -> Self {
        Self::Sizes(forbidden.iter().copied().collect())
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Sizes(_) => 1,
            Self::Grid => 2,
            Self::Explicit { dim, .. } => *dim,
        }
    }

    /// Whether `m` is forbidden. The zero vector is never a member.
    pub fn contains(&self, m: &[usize]) -> bool {
        if m.iter().all(|&x| x == 0) {
            return false;
        }
        match self {
            Self::Sizes(s) => s.contains(&m[0]),
            Self::Grid => {
                let (a, b) = (m[0], m[1]);
                let base = a < 3 || b < 3 || (a == 3 && b == 3);
                base && (a, b) != (1, 0) && (a, b) != (0, 1)
            }
            Self::Explicit { members, .. } => members.contains(m),
        }
    }

    fn check_dim(&self, target: &[usize]) -> Result<()> {
        if target.len() != self.dim() {
            return Err(Error::BadParams(format!(
                "target has {} coordinates, profile set has dimension {}",
                target.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// A multiset of nonzero parts with multiplicities, parts in decreasing
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPartition {
    pub parts: Vec<(Vec<usize>, usize)>,
}

fn allowed_parts(target: &[usize], forbidden: &ProfileSet) -> Vec<Vec<usize>> {
    let mut parts = Vec::new();
    let mut m = vec![0; target.len()];
    loop {
        if m.iter().any(|&x| x > 0) && !forbidden.contains(&m) {
            parts.push(m.clone());
        }
        let mut i = m.len();
        loop {
            if i == 0 {
                parts.reverse();
                return parts;
            }
            i -= 1;
            if m[i] < target[i] {
                m[i] += 1;
                break;
            }
            m[i] = 0;
        }
    }
}

fn partitions_rec(
    parts: &[Vec<usize>],
    rest: &mut Vec<usize>,
    chosen: &mut Vec<(Vec<usize>, usize)>,
    out: &mut Vec<VectorPartition>,
) {
    if rest.iter().all(|&x| x == 0) {
        out.push(VectorPartition { parts: chosen.clone() });
        return;
    }
    let Some((part, later)) = parts.split_first() else { return };
    let max_mult = part
        .iter()
        .zip(rest.iter())
        .filter(|(p, _)| **p > 0)
        .map(|(p, r)| r / p)
        .min()
        .unwrap_or(0);
    for mult in (1..=max_mult).rev() {
        for (r, p) in rest.iter_mut().zip(part) {
            *r -= p * mult;
        }
        chosen.push((part.clone(), mult));
        partitions_rec(later, rest, chosen, out);
        chosen.pop();
        for (r, p) in rest.iter_mut().zip(part) {
            *r += p * mult;
        }
    }
    partitions_rec(later, rest, chosen, out);
}

/// Every multiset of allowed parts summing to `target`.
pub fn vector_partitions(target: &[usize], forbidden: &ProfileSet) -> Result<Vec<VectorPartition>> {
    forbidden.check_dim(target)?;
    let parts = allowed_parts(target, forbidden);
    let mut out = Vec::new();
    partitions_rec(&parts, &mut target.to_vec(), &mut Vec::new(), &mut out);
    Ok(out)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of set partitions of `[n_1] ⊔ ... ⊔ [n_d]` none of whose block
/// profiles is forbidden, as `Σ n! / (τ! Π a_m!)` over vector partitions.
pub fn q_s_multinomial(target: &[usize], forbidden: &ProfileSet) -> Result<BigCount> {
    let numerator: BigUint = target.iter().map(|&n| factorial(n)).product();
    let mut total = BigUint::zero();
    for vp in vector_partitions(target, forbidden)? {
        let mut denom = BigUint::one();
        for (part, mult) in &vp.parts {
            let part_fact: BigUint = part.iter().map(|&x| factorial(x)).product();
            denom *= part_fact.pow(*mult as u32) * factorial(*mult);
        }
        total += &numerator / denom;
    }
    Ok(total)
}

/// `exp(Σ_{allowed m <= bounds} x^m / m!)`.
pub fn egf_expand(forbidden: &ProfileSet, bounds: &[usize]) -> Result<RationalEgf> {
    forbidden.check_dim(bounds)?;
    let a = RationalEgf::from_fn(bounds, |m| {
        if m.iter().all(|&x| x == 0) || forbidden.contains(m) {
            BigRational::zero()
        } else {
            let f: BigUint = m.iter().map(|&x| factorial(x)).product();
            BigRational::new(1.into(), f.into())
        }
    });
    Ok(a.exp())
}

fn extract(egf: &RationalEgf, m: &[usize]) -> Result<BigCount> {
    egf.count_at(m)
        .ok_or_else(|| Error::RangeUnsupported(format!("coefficient at {m:?} is not a count")))
}

/// `2^k + 2^l - (k^2 + k + l^2 + l + 8) / 2`: partitions satisfying the
/// block-profile condition but containing all rows or all columns in a
/// block alongside other blocks.
pub fn b_grid(k: usize, l: usize) -> Result<BigCount> {
    if k < GRID_FORMULA_MIN || l < GRID_FORMULA_MIN {
        return Err(Error::RangeUnsupported(format!("b(k,l) needs k, l >= 4, got ({k},{l})")));
    }
    let two = BigUint::from(2u32);
    let pos = two.pow(k as u32 + 1) + two.pow(l as u32 + 1);
    let neg = BigUint::from(k * k + k + 4 + l * l + l + 4);
    Ok((pos - neg) / two)
}

/// `e^{2x+y} + e^{x+2y} - (x^2 + y^2 + 2x + 2y + 8) e^{x+y} / 2`.
pub fn b_egf(bounds: [usize; 2]) -> RationalEgf {
    let b = &bounds[..];
    let poly = RationalEgf::from_fn(b, |m| {
        let c: i64 = match m {
            [2, 0] | [0, 2] => 1,
            [1, 0] | [0, 1] => 2,
            [0, 0] => 8,
            _ => 0,
        };
        BigRational::from_integer(c.into())
    });
    let half = BigRational::new(1.into(), 2.into());
    RationalEgf::exp_linear(b, &[2, 1])
        .add(&RationalEgf::exp_linear(b, &[1, 2]))
        .sub(&poly.mul(&RationalEgf::exp_linear(b, &[1, 1])).scale(&half))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Enumerate,
    Formula,
    Egf,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Enumerate, Method::Formula, Method::Egf];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Enumerate => "enumerate",
            Self::Formula => "formula",
            Self::Egf => "egf",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Self::Enumerate),
            "formula" => Ok(Self::Formula),
            "egf" => Ok(Self::Egf),
            other => Err(Error::BadParams(format!("unknown method {other:?}"))),
        }
    }
}

pub fn c_grid(k: usize, l: usize, method: Method) -> Result<BigCount> {
    c_grid_with_budget(k, l, method, GRID_PARTITION_BUDGET)
}

/// Number of components for the `k × l` grid.
pub fn c_grid_with_budget(k: usize, l: usize, method: Method, budget: usize) -> Result<BigCount> {
    match method {
        Method::Enumerate => {
            if k < 3 || l < 3 {
                return Err(Error::RangeUnsupported(format!("enumeration needs k, l >= 3, got ({k},{l})")));
            }
            Ok(count_nice_grid(k, l, budget)?.into())
        }
        Method::Formula => {
            let q = q_s_multinomial(&[k, l], &ProfileSet::Grid)?;
            Ok(q - b_grid(k, l)?)
        }
        Method::Egf => {
            b_grid(k, l)?;
            let q = egf_expand(&ProfileSet::Grid, &[k, l])?;
            let combined = q.sub(&b_egf([k, l]));
            extract(&combined, &[k, l])
        }
    }
}

pub fn c_lines(n: usize, method: Method) -> Result<BigCount> {
    c_lines_with_budget(n, method, LINES_PARTITION_BUDGET)
}

/// Number of components for the arrangement of `n` lines.
pub fn c_lines_with_budget(n: usize, method: Method, budget: usize) -> Result<BigCount> {
    if method != Method::Enumerate && n < LINES_FORMULA_MIN {
        return Err(Error::RangeUnsupported(format!(
            "the {method} route needs n >= {LINES_FORMULA_MIN}, got {n}"
        )));
    }
    let forbidden = ProfileSet::sizes(&[2, 3]);
    match method {
        Method::Enumerate => Ok(count_nice_lines(n, budget)?.into()),
        Method::Formula => Ok(q_s_multinomial(&[n], &forbidden)? - BigUint::from(n)),
        Method::Egf => {
            let q = egf_expand(&forbidden, &[n])?;
            // x e^x has coefficient 1/(m-1)! at x^m
            let xex = RationalEgf::from_fn(&[n], |m| {
                if m[0] == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(1.into(), factorial(m[0] - 1).into())
                }
            });
            extract(&q.sub(&xex), &[n])
        }
    }
}

/// CSV with header `k,l,c`.
pub fn grid_counts_csv(rows: &[(usize, usize, BigCount)]) -> String {
    let mut out = String::from("k,l,c\n");
    for (k, l, c) in rows {
        out.push_str(&format!("{k},{l},{c}\n"));
    }
    out
}

/// CSV with header `n,c`.
pub fn line_counts_csv(rows: &[(usize, BigCount)]) -> String {
    let mut out = String::from("n,c\n");
    for (n, c) in rows {
        out.push_str(&format!("{n},{c}\n"));
    }
    out
}

/// Convenience for tests and tables: a count as `u64`.
pub fn small(c: &BigCount) -> Option<u64> {
    c.to_u64()
}
