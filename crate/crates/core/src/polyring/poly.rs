use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

/// Sparse multivariate polynomial over the rationals.
///
/// Zero coefficients are never stored. Grading is supplied by the caller as a
/// weight per variable, so the same type serves both for Chern roots (all
/// weights 1) and for elementary symmetric generators (`x_{i,k}` has weight
/// `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: HashMap<Monomial, BigRational>,
}

pub fn weighted_degree(mono: &[u16], weights: &[u32]) -> u32 {
    mono.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut mono = vec![0; nvars];
        mono[index] = 1;
        Poly::monomial(mono, BigRational::one())
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero(mono.len());
        p.add_term(mono, c);
        p
    }

    /// `sum_j c_j x_j` over the listed variables.
    pub fn linear(nvars: usize, coeffs: &[(usize, BigRational)]) -> Self {
        let mut p = Poly::zero(nvars);
        for (index, c) in coeffs {
            let mut mono = vec![0; nvars];
            mono[*index] = 1;
            p.add_term(mono, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigRational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, mono: &[u16]) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        debug_assert_eq!(mono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::hash_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (mono, coeff) in &other.terms {
            self.add_term(mono.clone(), coeff * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Product keeping only terms of weighted degree `<= bound`.
    pub fn mul_truncated(&self, other: &Poly, weights: &[u32], bound: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        let rhs: Vec<(&Monomial, &BigRational, u32)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, weighted_degree(m, weights)))
            .filter(|&(_, _, deg)| deg <= bound)
            .collect();
        for (m1, c1) in &self.terms {
            let d1 = weighted_degree(m1, weights);
            if d1 > bound {
                continue;
            }
            for &(m2, c2, d2) in &rhs {
                if d1 + d2 > bound {
                    continue;
                }
                let mono: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a monomial; a pure exponent shift.
    pub fn shift(&self, mono: &[u16]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Highest weighted degree of a term, `None` for the zero polynomial.
    pub fn degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| weighted_degree(m, weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degrees = self.terms.keys().map(|m| weighted_degree(m, weights));
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn homogeneous_part(&self, weights: &[u32], degree: u32) -> Poly {
        self.filter_terms(|m| weighted_degree(m, weights) == degree)
    }

    pub fn truncate(&self, weights: &[u32], bound: u32) -> Poly {
        self.filter_terms(|m| weighted_degree(m, weights) <= bound)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rename exponents monomial by monomial; `f` must be injective.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Substitute `value` for the variable `index`.
    pub fn substitute(&self, index: usize, value: &Poly) -> Poly {
        let max_power = self.terms.keys().map(|m| m[index]).max().unwrap_or(0);
        let mut powers = vec![Poly::one(self.nvars)];
        for k in 1..=max_power as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::replace(&mut rest[index], 0) as usize;
            for (pm, pc) in &powers[e].terms {
                let mono: Monomial = rest.iter().zip(pm).map(|(a, b)| a + b).collect();
                out.add_term(mono, c * pc);
            }
        }
        out
    }

    /// Terms sorted by weighted degree, then by exponent vector.
    pub fn sorted_terms(&self, weights: &[u32]) -> Vec<(&Monomial, &BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            weighted_degree(a.0, weights)
                .cmp(&weighted_degree(b.0, weights))
                .then_with(|| a.0.cmp(b.0))
        });
        terms
    }

    /// Canonical text form `c * v^e * ...`, terms joined by ` + `.
    pub fn render(&self, weights: &[u32], name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (mono, c)) in self.sorted_terms(weights).into_iter().enumerate() {
            if k > 0 {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                out.push('-');
            }
            write!(out, "{}", c.abs()).unwrap();
            for (index, &e) in mono.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(out, " * {}", name(index)).unwrap(),
                    _ => write!(out, " * {}^{}", name(index), e).unwrap(),
                }
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mono: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expected = &x.pow(2) - &y.pow(2);
        assert_eq!(prod, expected);
        assert!((&prod - &expected).is_zero());
    }

    #[test]
    fn substitution() {
        // x^2 y with x := 1 - y gives y - 2 y^2 + y^3
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &x.pow(2) * &y;
        let value = &Poly::one(2) - &y;
        let g = f.substitute(0, &value);
        assert_eq!(g.coeff(&[0, 1]), q(1));
        assert_eq!(g.coeff(&[0, 2]), q(-2));
        assert_eq!(g.coeff(&[0, 3]), q(1));
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn weighted_truncation() {
        let w = [1, 2];
        let f = &(&Poly::var(2, 0) + &Poly::var(2, 1)).pow(3) + &Poly::one(2);
        assert_eq!(f.degree(&w), Some(6));
        let t = f.truncate(&w, 3);
        assert_eq!(t.degree(&w), Some(3));
        assert!(f.homogeneous_part(&w, 4).is_homogeneous(&w));
        let a = &Poly::var(2, 0) + &Poly::var(2, 1);
        assert_eq!(a.mul_truncated(&a, &w, 3), (&a * &a).truncate(&w, 3));
    }

    #[test]
    fn rendering_is_sorted() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &(&y.pow(2) - &x) + &Poly::constant(2, q(3));
        let text = f.render(&[1, 1], |i| format!("v{i}"));
        assert_eq!(text, "3 - 1 * v0 + 1 * v1^2");
    }
}
