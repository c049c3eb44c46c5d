//! Dense truncated power series in one or more variables, read as
//! exponential generating functions.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed};

/// `Σ c_m x^m` over multi-indices `m <= bounds` (componentwise).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedEgf<T> {
    bounds: Vec<usize>,
    coeffs: Vec<T>,
}

impl<T> TruncatedEgf<T>
where
    T: Num + FromPrimitive + Clone,
{
    pub fn zero(bounds: &[usize]) -> Self {
        let len = bounds.iter().map(|b| b + 1).product();
        Self {
            bounds: bounds.to_vec(),
            coeffs: vec![T::zero(); len],
        }
    }

    pub fn one(bounds: &[usize]) -> Self {
        let mut s = Self::zero(bounds);
        s.coeffs[0] = T::one();
        s
    }

    /// Series with coefficient `f(m)` at every multi-index within bounds.
    pub fn from_fn(bounds: &[usize], f: impl Fn(&[usize]) -> T) -> Self {
        let mut s = Self::zero(bounds);
        for (idx, m) in s.indices().into_iter().enumerate() {
            s.coeffs[idx] = f(&m);
        }
        s
    }

    /// `exp(Σ a_i x_i)`, i.e. coefficient `Π a_i^{m_i} / m_i!`.
    pub fn exp_linear(bounds: &[usize], a: &[i64]) -> Self {
        Self::from_fn(bounds, |m| {
            m.iter().zip(a).fold(T::one(), |acc, (&mi, &ai)| {
                let mut term = T::one();
                for j in 1..=mi {
                    term = term * T::from_i64(ai).unwrap() / T::from_usize(j).unwrap();
                }
                acc * term
            })
        })
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    fn offset(&self, m: &[usize]) -> Option<usize> {
        let mut off = 0;
        for (&mi, &b) in m.iter().zip(&self.bounds) {
            if mi > b {
                return None;
            }
            off = off * (b + 1) + mi;
        }
        Some(off)
    }

    /// Multi-indices in storage order (lexicographic).
    fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut m = vec![0; self.bounds.len()];
        loop {
            out.push(m.clone());
            let mut i = m.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if m[i] < self.bounds[i] {
                    m[i] += 1;
                    break;
                }
                m[i] = 0;
            }
        }
    }

    /// Coefficient at `m`, zero beyond the bounds.
    pub fn coefficient(&self, m: &[usize]) -> T {
        self.offset(m).map_or_else(T::zero, |o| self.coeffs[o].clone())
    }

    pub fn set(&mut self, m: &[usize], value: T) {
        let o = self.offset(m).expect("multi-index within bounds");
        self.coeffs[o] = value;
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(self.bounds, other.bounds, "series bounds differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        Self {
            bounds: self.bounds.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_shape(other);
        Self {
            bounds: self.bounds.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            bounds: self.bounds.clone(),
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let idx = self.indices();
        let mut out = Self::zero(&self.bounds);
        for (i, m) in idx.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for (j, n) in idx.iter().enumerate() {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let sum: Vec<usize> = m.iter().zip(n).map(|(a, b)| a + b).collect();
                if let Some(o) = out.offset(&sum) {
                    out.coeffs[o] = out.coeffs[o].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
                }
            }
        }
        out
    }

    /// `exp(self)` for a series with zero constant term. With `B = exp(A)`
    /// and `i` the first nonzero coordinate of `m`,
    /// `m_i b_m = Σ_{0 < j <= m} j_i a_j b_{m-j}`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs a zero constant term");
        let idx = self.indices();
        let mut out = Self::zero(&self.bounds);
        out.coeffs[0] = T::one();
        for (pos, m) in idx.iter().enumerate().skip(1) {
            let i = m.iter().position(|&x| x != 0).unwrap();
            let mut acc = T::zero();
            for (jpos, j) in idx.iter().enumerate().skip(1) {
                if j[i] == 0 || self.coeffs[jpos].is_zero() || j.iter().zip(m).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<usize> = m.iter().zip(j).map(|(a, b)| a - b).collect();
                let b = &out.coeffs[out.offset(&rest).unwrap()];
                acc = acc + T::from_usize(j[i]).unwrap() * self.coeffs[jpos].clone() * b.clone();
            }
            out.coeffs[pos] = acc / T::from_usize(m[i]).unwrap();
        }
        out
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl TruncatedEgf<BigRational> {
    /// `c_m · m!` as an exact rational.
    pub fn scaled(&self, m: &[usize]) -> BigRational {
        let f = m.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
        self.coefficient(m) * BigRational::from_integer(f)
    }

    /// `c_m · m!` when it is a nonnegative integer.
    pub fn count_at(&self, m: &[usize]) -> Option<BigUint> {
        let v = self.scaled(m);
        (v.is_integer() && !v.is_negative()).then(|| v.to_integer().to_biguint().unwrap())
    }
}
