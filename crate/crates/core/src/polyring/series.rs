//! Truncated graded series and the Todd power series.

use num::{BigInt, BigRational, One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Bernoulli numbers `B_0..=B_n` in the convention of `t/(1-e^{-t})`, so
/// `B_1 = +1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for k in 1..=n {
        // sum_{j<=k} C(k+1,j) B_j = 0
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(k + 1, j)) * bj;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    if n >= 1 {
        b[1] = q(1) / q(2);
    }
    b
}

/// Coefficients `B_k / k!` of `Q(t) = t / (1 - e^{-t})` up to `t^n`.
pub fn todd_coefficients(n: usize) -> Vec<BigRational> {
    let mut factorial = BigInt::one();
    bernoulli_numbers(n)
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            b / BigRational::from_integer(factorial.clone())
        })
        .collect()
}

/// Univariate truncated power series helpers on coefficient vectors.
pub mod univariate {
    use super::*;

    pub fn mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, x) in a.iter().enumerate().take(n + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn inverse(a: &[BigRational], n: usize) -> Result<Vec<BigRational>> {
        let a0 = a.first().cloned().unwrap_or_else(BigRational::zero);
        if a0.is_zero() {
            return Err(Error::input("series inverse needs a nonzero constant term"));
        }
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = a0.recip();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k.min(a.len() - 1) {
                acc += &a[j] * &out[k - j];
            }
            out[k] = -acc / &a0;
        }
        Ok(out)
    }

    /// `log(a)` for `a_0 = 1`.
    pub fn log(a: &[BigRational], n: usize) -> Result<Vec<BigRational>> {
        if a.first() != Some(&BigRational::one()) {
            return Err(Error::input("series log needs constant term 1"));
        }
        // (log a)' = a'/a
        let derivative: Vec<BigRational> = (1..a.len().min(n + 1))
            .map(|k| &a[k] * q(k as i64))
            .collect();
        let ratio = mul(&derivative, &inverse(a, n)?, n);
        let mut out = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            out[k] = &ratio[k - 1] / q(k as i64);
        }
        Ok(out)
    }
}

/// A graded element truncated above a fixed degree, stored as homogeneous
/// components `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedClass {
    weights: Vec<u32>,
    parts: Vec<Poly>,
}

impl TruncatedClass {
    pub fn zero(weights: &[u32], bound: u32) -> Self {
        TruncatedClass {
            weights: weights.to_vec(),
            parts: vec![Poly::zero(weights.len()); bound as usize + 1],
        }
    }

    pub fn one(weights: &[u32], bound: u32) -> Self {
        Self::constant(weights, bound, BigRational::one())
    }

    pub fn constant(weights: &[u32], bound: u32, c: BigRational) -> Self {
        let mut out = Self::zero(weights, bound);
        out.parts[0] = Poly::constant(weights.len(), c);
        out
    }

    /// Split `p` into homogeneous components, dropping degrees above `bound`.
    pub fn from_poly(p: &Poly, weights: &[u32], bound: u32) -> Self {
        let mut out = Self::zero(weights, bound);
        for (mono, c) in p.terms() {
            let deg = super::poly::weighted_degree(mono, weights);
            if deg <= bound {
                out.parts[deg as usize].add_term(mono.clone(), c.clone());
            }
        }
        out
    }

    pub fn bound(&self) -> u32 {
        self.parts.len() as u32 - 1
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn part(&self, degree: usize) -> &Poly {
        &self.parts[degree]
    }

    pub fn parts(&self) -> &[Poly] {
        &self.parts
    }

    pub fn constant_term(&self) -> BigRational {
        self.parts[0].constant_term()
    }

    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero(self.weights.len());
        for p in &self.parts {
            out.add_scaled(p, &BigRational::one());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.parts.len(), other.parts.len(), "truncation bounds differ");
        TruncatedClass {
            weights: self.weights.clone(),
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedClass {
            weights: self.weights.clone(),
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.parts.len(), other.parts.len(), "truncation bounds differ");
        let n = self.parts.len();
        let mut parts = vec![Poly::zero(self.weights.len()); n];
        for i in 0..n {
            if self.parts[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.parts[j].is_zero() {
                    continue;
                }
                let product = &self.parts[i] * &other.parts[j];
                parts[i + j].add_scaled(&product, &BigRational::one());
            }
        }
        TruncatedClass {
            weights: self.weights.clone(),
            parts,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(&self.weights, self.bound());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// `sum_k coeffs[k] * self^k` for `self` with vanishing constant term.
    pub fn compose(&self, coeffs: &[BigRational]) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::input("series composition needs a vanishing constant term"));
        }
        let mut out = Self::zero(&self.weights, self.bound());
        let mut power = Self::one(&self.weights, self.bound());
        for (k, c) in coeffs.iter().enumerate().take(self.parts.len()) {
            if k > 0 {
                power = power.mul(self);
            }
            if !c.is_zero() {
                out = out.add(&power.scale(c));
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse up to the truncation degree.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::input("series inverse needs a nonzero constant term"));
        }
        let c_inv = c.recip();
        // self = c (1 + v), inverse = c^{-1} sum (-v)^k
        let v = self.scale(&c_inv).sub(&Self::one(&self.weights, self.bound()));
        let geometric: Vec<BigRational> = (0..self.parts.len())
            .map(|k| if k % 2 == 0 { q(1) } else { q(-1) })
            .collect();
        Ok(v.compose(&geometric)?.scale(&c_inv))
    }

    /// `exp(self)` for `self` with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::input(
                "exp of a class with nonzero constant term is not rational",
            ));
        }
        let mut factorial = BigInt::one();
        let coeffs: Vec<BigRational> = (0..self.parts.len())
            .map(|k| {
                if k > 0 {
                    factorial *= BigInt::from(k);
                }
                BigRational::new(BigInt::one(), factorial.clone())
            })
            .collect();
        self.compose(&coeffs)
    }
}

/// `Q(t) = sum_{k<=bound} B_k/k! t^k` for a linear form `t`.
pub fn todd_factor(t: &Poly, weights: &[u32], bound: u32) -> Result<TruncatedClass> {
    todd_factor_with(t, weights, bound, &todd_coefficients(bound as usize))
}

/// [`todd_factor`] with caller-supplied series coefficients.
pub fn todd_factor_with(
    t: &Poly,
    weights: &[u32],
    bound: u32,
    coeffs: &[BigRational],
) -> Result<TruncatedClass> {
    if !(t.is_zero() || (t.is_homogeneous(weights) && t.degree(weights) == Some(1))) {
        return Err(Error::input("Todd factor needs a homogeneous degree-one argument"));
    }
    TruncatedClass::from_poly(t, weights, bound).compose(coeffs)
}
