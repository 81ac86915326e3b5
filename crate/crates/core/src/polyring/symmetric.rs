//! Passage between Chern roots and elementary symmetric generators.
//!
//! Two independent routes live here. [`to_elementary`] is the textbook
//! leading-term reduction on a `W_d`-invariant polynomial in the roots.
//! [`SchurRho`] evaluates the symmetrization map monomial by monomial: the
//! alternant of `xi^alpha` divided by the discriminant is a signed Schur
//! polynomial, which Jacobi–Trudi expresses in the elementary generators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Zero};

use super::intpoly::IntPoly;
use super::poly::{Monomial, Poly};
use super::weyl::{inversion_count, is_invariant, VarLayout};
use crate::error::{Error, Result};

/// `e_k(xi_{vertex,1}, ..., xi_{vertex,d})` as a polynomial in the roots.
pub fn elementary_in_roots(layout: &VarLayout, vertex: usize, k: usize) -> Poly {
    let nvars = layout.nvars();
    let n = layout.dim(vertex);
    if k > n {
        return Poly::zero(nvars);
    }
    // coefficients of prod_j (1 + xi_j t)
    let mut coeffs = vec![Poly::one(nvars)];
    for j in 1..=n {
        let root = layout.root(vertex, j);
        let mut next = coeffs.clone();
        next.push(Poly::zero(nvars));
        for (deg, c) in coeffs.iter().enumerate() {
            next[deg + 1] = &next[deg + 1] + &(c * &root);
        }
        coeffs = next;
    }
    coeffs.swap_remove(k)
}

/// Substitute `x_{i,k} = e_k(xi_{i,*})` into a polynomial in the generators.
pub fn from_elementary(layout: &VarLayout, g: &Poly) -> Poly {
    let nvars = layout.nvars();
    let images: Vec<Poly> = (0..nvars)
        .map(|index| {
            let (vertex, k) = layout.position(index);
            elementary_in_roots(layout, vertex, k)
        })
        .collect();
    let mut power_cache: HashMap<(usize, u16), Poly> = HashMap::new();
    let mut out = Poly::zero(nvars);
    for (mono, c) in g.terms() {
        let mut term = Poly::constant(nvars, c.clone());
        for (index, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let power = power_cache
                .entry((index, e))
                .or_insert_with(|| images[index].pow(e as u32));
            term = &term * power;
        }
        out = &out + &term;
    }
    out
}

/// Rewrite a `W_d`-invariant polynomial in the roots as a polynomial in the
/// elementary generators `x_{i,k}`, by repeatedly peeling off the
/// lexicographically leading term.
pub fn to_elementary(layout: &VarLayout, f: &Poly) -> Result<Poly> {
    if !is_invariant(layout, f) {
        return Err(Error::input("polynomial is not invariant under the Weyl group"));
    }
    let nvars = layout.nvars();
    let mut rest = f.clone();
    let mut out = Poly::zero(nvars);
    while !rest.is_zero() {
        let (lead, c) = rest
            .terms()
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut x_mono = vec![0u16; nvars];
        for vertex in 0..layout.vertex_count() {
            let block = layout.block(vertex);
            let exps = &lead[block.clone()];
            for k in 0..exps.len() {
                let next = exps.get(k + 1).copied().unwrap_or(0);
                if exps[k] < next {
                    return Err(Error::structural(
                        "leading exponent is not a partition; invariance check is inconsistent",
                    ));
                }
                x_mono[block.start + k] = exps[k] - next;
            }
        }
        let term = Poly::monomial(x_mono, c);
        rest = &rest - &from_elementary(layout, &term);
        out = &out + &term;
    }
    Ok(out)
}

/// Schur polynomials in the elementary generators of one vertex, memoized.
///
/// Polynomials are in `n` local variables, local variable `j` standing for
/// `e_{j+1}`.
#[derive(Default)]
pub struct SchurTable {
    schur: Mutex<HashMap<SchurEntry, Arc<IntPoly>>>,
    complete: Mutex<HashMap<usize, Vec<Arc<IntPoly>>>>,
}

impl SchurTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn elementary(n: usize, k: i64) -> Option<IntPoly> {
        match k {
            0 => Some(IntPoly::one(n)),
            k if k < 0 || k as usize > n => None,
            k => Some(IntPoly::var(n, k as usize - 1)),
        }
    }

    /// `h_k` for `k <= max`, via `h_k = sum_j (-1)^{j-1} e_j h_{k-j}`.
    fn complete(&self, n: usize, max: usize) -> Result<Vec<Arc<IntPoly>>> {
        let mut cache = self.complete.lock().unwrap();
        let list = cache.entry(n).or_insert_with(|| vec![Arc::new(IntPoly::one(n))]);
        while list.len() <= max {
            let k = list.len();
            let mut h = IntPoly::zero(n);
            for j in 1..=k.min(n) {
                let term = IntPoly::var(n, j - 1).mul(&list[k - j])?;
                h.add_scaled(&term, if j % 2 == 1 { 1 } else { -1 })?;
            }
            list.push(Arc::new(h));
        }
        Ok(list[..=max].to_vec())
    }

    /// `s_lambda(xi_1..xi_n)` in terms of `e_1..e_n`; `lambda` is a
    /// partition with at most `n` nonzero parts (trailing zeros allowed).
    pub fn schur(&self, n: usize, lambda: &[u16]) -> Result<Arc<IntPoly>> {
        let parts: Vec<u16> = lambda.iter().copied().filter(|&x| x > 0).collect();
        if let Some(hit) = self.schur.lock().unwrap().get(&(n, parts.clone())) {
            return Ok(hit.clone());
        }
        let poly = Arc::new(self.compute_schur(n, &parts)?);
        self.schur
            .lock()
            .unwrap()
            .insert((n, parts), poly.clone());
        Ok(poly)
    }

    fn compute_schur(&self, n: usize, parts: &[u16]) -> Result<IntPoly> {
        if parts.is_empty() {
            return Ok(IntPoly::one(n));
        }
        let length = parts.len();
        let width = parts[0] as usize;
        let entries: Vec<Vec<Option<IntPoly>>> = if width <= length || width <= 8 {
            // dual Jacobi–Trudi: det(e_{lambda'_i - i + j})
            let conjugate: Vec<i64> = (1..=width)
                .map(|c| parts.iter().filter(|&&p| p as usize >= c).count() as i64)
                .collect();
            (0..width)
                .map(|i| {
                    (0..width)
                        .map(|j| Self::elementary(n, conjugate[i] - i as i64 + j as i64))
                        .collect()
                })
                .collect()
        } else {
            let h = self.complete(n, parts[0] as usize + length)?;
            (0..length)
                .map(|i| {
                    (0..length)
                        .map(|j| {
                            let k = parts[i] as i64 - i as i64 + j as i64;
                            (k >= 0).then(|| (*h[k as usize]).clone())
                        })
                        .collect()
                })
                .collect()
        };
        determinant(n, &entries)
    }
}

/// Laplace expansion by rows with memoization over used-column masks.
fn determinant(nvars: usize, entries: &[Vec<Option<IntPoly>>]) -> Result<IntPoly> {
    let size = entries.len();
    let mut layer: HashMap<u32, IntPoly> = HashMap::from([(0u32, IntPoly::one(nvars))]);
    for row in entries {
        let mut next: HashMap<u32, IntPoly> = HashMap::new();
        for (mask, partial) in &layer {
            for (col, entry) in row.iter().enumerate() {
                let Some(entry) = entry else { continue };
                if mask & (1 << col) != 0 {
                    continue;
                }
                let above = (mask >> (col + 1)).count_ones();
                let product = partial.mul(entry)?;
                let slot = next
                    .entry(mask | (1 << col))
                    .or_insert_with(|| IntPoly::zero(nvars));
                slot.add_scaled(&product, if above % 2 == 0 { 1 } else { -1 })?;
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    Ok(layer
        .remove(&((1u32 << size) - 1))
        .unwrap_or_else(|| IntPoly::zero(nvars)))
}

/// Fast evaluation of the symmetrization map straight into the elementary
/// generators.
pub struct SchurRho<'a> {
    layout: &'a VarLayout,
    table: &'a SchurTable,
}

/// Variable count and partition of a cached Schur polynomial.
type SchurEntry = (usize, Vec<u16>);

/// Per-vertex partitions identifying a product of Schur polynomials.
type SchurKey = Vec<u16>;

impl<'a> SchurRho<'a> {
    pub fn new(layout: &'a VarLayout, table: &'a SchurTable) -> Self {
        SchurRho { layout, table }
    }

    /// `(-1)^{sum_i d_i(d_i-1)/2}`, the sign relating the discriminant to
    /// the standard Vandermonde determinant.
    fn base_sign(&self) -> i32 {
        let pairs: usize = self.layout.dims().iter().map(|&n| n * n.saturating_sub(1) / 2).sum();
        if pairs.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The Schur key and sign of `rho(xi^alpha)`, or `None` when it vanishes.
    fn classify(&self, mono: &[u16]) -> Option<(SchurKey, i32, u32)> {
        let mut sign = self.base_sign();
        let mut key = Vec::with_capacity(mono.len());
        let mut degree = 0u32;
        for vertex in 0..self.layout.vertex_count() {
            let block = &mono[self.layout.block(vertex)];
            let n = block.len();
            let mut sorted = block.to_vec();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return None;
            }
            if inversion_count(&block.iter().map(|&x| std::cmp::Reverse(x)).collect::<Vec<_>>()) % 2
                == 1
            {
                sign = -sign;
            }
            for (k, &beta) in sorted.iter().enumerate() {
                let part = beta - (n - 1 - k) as u16;
                degree += part as u32;
                key.push(part);
            }
        }
        Some((key, sign, degree))
    }

    fn expand(&self, acc: HashMap<SchurKey, BigRational>) -> Result<Poly> {
        let layout = self.layout;
        let nvars = layout.nvars();
        let mut out = Poly::zero(nvars);
        let mut keys: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, c) in keys {
            // Cartesian product of per-vertex Schur expansions.
            let mut partial: Vec<(Monomial, i128)> = vec![(vec![0; nvars], 1)];
            for vertex in 0..layout.vertex_count() {
                let block = layout.block(vertex);
                let schur = self.table.schur(block.len(), &key[block.clone()])?;
                let mut next = Vec::with_capacity(partial.len() * schur.len());
                for (mono, coeff) in &partial {
                    for (local, x) in schur.terms() {
                        let mut m = mono.clone();
                        m[block.clone()].copy_from_slice(local);
                        let product = coeff
                            .checked_mul(*x)
                            .ok_or_else(|| Error::structural("integer coefficient overflow"))?;
                        next.push((m, product));
                    }
                }
                partial = next;
            }
            for (mono, coeff) in partial {
                out.add_term(mono, &c * BigRational::from_integer(BigInt::from(coeff)));
            }
        }
        Ok(out)
    }

    /// `rho(f)` in the elementary generators, keeping only terms of degree
    /// `<= bound` when a bound is given.
    pub fn apply(&self, f: &Poly, bound: Option<u32>) -> Result<Poly> {
        let mut acc: HashMap<SchurKey, BigRational> = HashMap::new();
        for (mono, c) in f.terms() {
            if let Some((key, sign, degree)) = self.classify(mono) {
                if bound.is_some_and(|b| degree > b) {
                    continue;
                }
                let slot = acc.entry(key).or_insert_with(BigRational::zero);
                if sign > 0 {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
        }
        self.expand(acc)
    }

    /// `rho(xi^shift * f)` for an integer polynomial `f`.
    pub fn apply_shifted(&self, f: &IntPoly, shift: &[u16], bound: Option<u32>) -> Result<Poly> {
        let mut acc: HashMap<SchurKey, i128> = HashMap::new();
        let mut mono = vec![0u16; shift.len()];
        for (m, &c) in f.terms() {
            for (slot, (a, b)) in mono.iter_mut().zip(m.iter().zip(shift)) {
                *slot = a + b;
            }
            if let Some((key, sign, degree)) = self.classify(&mono) {
                if bound.is_some_and(|b| degree > b) {
                    continue;
                }
                let slot = acc.entry(key).or_insert(0);
                *slot = slot
                    .checked_add(if sign > 0 { c } else { -c })
                    .ok_or_else(|| Error::structural("integer coefficient overflow"))?;
            }
        }
        self.expand(
            acc.into_iter()
                .map(|(k, c)| (k, BigRational::from_integer(BigInt::from(c))))
                .collect(),
        )
    }

    /// The staircase monomial `prod_{i,k} xi_{i,k}^{d_i - k}`.
    pub fn staircase(&self) -> Monomial {
        let layout = self.layout;
        (0..layout.vertex_count())
            .flat_map(|i| (1..=layout.dim(i)).map(move |k| (layout.dim(i) - k) as u16))
            .collect()
    }

    /// Invariant-to-generator rewrite through `g = ±rho(g * staircase)`.
    pub fn to_elementary(&self, g: &Poly, bound: Option<u32>) -> Result<Poly> {
        let shifted = g.shift(&self.staircase());
        let out = self.apply(&shifted, bound)?;
        Ok(if self.base_sign() > 0 {
            out
        } else {
            out.scale(&-BigRational::one())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::weyl::{discriminant, symmetrize};
    use crate::quiver::DimVector;

    fn layout(d: &[u32]) -> VarLayout {
        VarLayout::new(&DimVector::new(d.to_vec()))
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn power_sums_via_newton() {
        let l = layout(&[3]);
        let sum = &(&l.root(0, 1) + &l.root(0, 2)) + &l.root(0, 3);
        assert_eq!(to_elementary(&l, &sum).unwrap(), Poly::var(3, 0));
        let squares = &(&l.root(0, 1).pow(2) + &l.root(0, 2).pow(2)) + &l.root(0, 3).pow(2);
        let expected = &Poly::var(3, 0).pow(2) - &Poly::var(3, 1).scale(&q(2));
        assert_eq!(to_elementary(&l, &squares).unwrap(), expected);
        assert!(to_elementary(&l, &l.root(0, 1)).is_err());
    }

    #[test]
    fn schur_small_cases() {
        let table = SchurTable::new();
        // s_(1,1) = e_2, s_(2) = h_2 = e_1^2 - e_2, s_(2,1) = e_1 e_2 - e_3
        let s11 = table.schur(3, &[1, 1]).unwrap();
        assert_eq!(*s11, IntPoly::var(3, 1));
        let s2 = table.schur(3, &[2]).unwrap();
        let mut expected = IntPoly::var(3, 0).pow(2).unwrap();
        expected.add_scaled(&IntPoly::var(3, 1), -1).unwrap();
        assert_eq!(*s2, expected);
        let s21 = table.schur(3, &[2, 1, 0]).unwrap();
        let mut expected = IntPoly::var(3, 0).mul(&IntPoly::var(3, 1)).unwrap();
        expected.add_scaled(&IntPoly::var(3, 2), -1).unwrap();
        assert_eq!(*s21, expected);
    }

    #[test]
    fn wide_partitions_match_bialternant() {
        let table = SchurTable::new();
        for lambda in [[9u16, 2], [12, 0], [10, 10]] {
            let wide = table.compute_schur(2, &lambda.iter().copied().filter(|&x| x > 0).collect::<Vec<_>>()).unwrap();
            // check against the root-side definition via from_elementary
            let l = layout(&[2]);
            let x = from_elementary(&l, &wide.to_poly());
            let alt = {
                let a = lambda[0] + 1;
                let b = lambda[1];
                let m1 = &l.root(0, 1).pow(a as u32) * &l.root(0, 2).pow(b as u32);
                let m2 = &l.root(0, 2).pow(a as u32) * &l.root(0, 1).pow(b as u32);
                &m1 - &m2
            };
            let vandermonde = &l.root(0, 1) - &l.root(0, 2);
            assert_eq!(&x * &vandermonde, alt);
        }
    }

    #[test]
    fn fast_rho_matches_definition() {
        let l = layout(&[2, 3]);
        let table = SchurTable::new();
        let rho = SchurRho::new(&l, &table);
        let delta = discriminant(&l);
        let f1 = &(&l.root(0, 1).pow(3) * &l.root(1, 2)) + &(&l.root(1, 3).pow(4) * &l.root(0, 2));
        let f2 = &(&delta * &l.root(1, 1)) + &Poly::one(5);
        let f3 = &(&l.root(1, 1) - &l.root(0, 2)).pow(4) * &l.root(1, 2).pow(2);
        for f in [f1, f2, f3, delta] {
            let slow = to_elementary(&l, &symmetrize(&l, &f).unwrap()).unwrap();
            let fast = rho.apply(&f, None).unwrap();
            assert_eq!(slow, fast);
        }
    }

    #[test]
    fn both_invariant_rewrites_agree() {
        let l = layout(&[2, 2]);
        let table = SchurTable::new();
        let rho = SchurRho::new(&l, &table);
        let g = &(&l.root(0, 1) * &l.root(0, 2)).pow(2)
            + &(&(&l.root(1, 1) + &l.root(1, 2)) * &(&l.root(0, 1).pow(3) + &l.root(0, 2).pow(3)));
        assert_eq!(
            rho.to_elementary(&g, None).unwrap(),
            to_elementary(&l, &g).unwrap()
        );
        let back = from_elementary(&l, &to_elementary(&l, &g).unwrap());
        assert_eq!(back, g);
    }
}
