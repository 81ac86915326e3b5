use std::collections::HashMap;

use num::{BigInt, BigRational};

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

/// Sparse polynomial with machine-integer coefficients.
///
/// Relation polynomials and Schur expansions have integer coefficients of
/// modest size; keeping them in `i128` avoids bignum traffic in the hottest
/// loops. Every operation is overflow-checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: HashMap<Monomial, i128>,
}

fn overflow() -> Error {
    Error::structural("integer coefficient overflow")
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = IntPoly::zero(nvars);
        p.terms.insert(vec![0; nvars], 1);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut mono = vec![0; nvars];
        mono[index] = 1;
        let mut p = IntPoly::zero(nvars);
        p.terms.insert(mono, 1);
        p
    }

    /// `v_hi - v_lo`.
    pub fn difference(nvars: usize, hi: usize, lo: usize) -> Self {
        let mut p = IntPoly::var(nvars, hi);
        let mut mono = vec![0; nvars];
        mono[lo] = 1;
        p.terms.insert(mono, -1);
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i128)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Monomial, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(mono) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get().checked_add(c).ok_or_else(overflow)?;
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &IntPoly, c: i128) -> Result<()> {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.checked_mul(c).ok_or_else(overflow)?)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        let mut out: HashMap<Monomial, i128> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let c = c1.checked_mul(*c2).ok_or_else(overflow)?;
                let slot = out.entry(mono).or_insert(0);
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(IntPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn pow(&self, exponent: u32) -> Result<IntPoly> {
        let mut acc = IntPoly::one(self.nvars);
        for _ in 0..exponent {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, &c) in &self.terms {
            p.add_term(m.clone(), BigRational::from_integer(BigInt::from(c)));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_expansion() {
        let d = IntPoly::difference(2, 1, 0);
        let cube = d.pow(3).unwrap();
        assert_eq!(cube.len(), 4);
        assert_eq!(cube.terms.get(&vec![1, 2]).copied(), Some(-3));
        assert_eq!(cube.terms.get(&vec![2, 1]).copied(), Some(3));
        assert_eq!(cube.to_poly().len(), 4);
    }

    #[test]
    fn overflow_is_reported() {
        let mut p = IntPoly::zero(1);
        p.add_term(vec![0], i128::MAX).unwrap();
        assert!(p.add_term(vec![0], 1).is_err());
    }
}
