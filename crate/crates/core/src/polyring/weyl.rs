use std::ops::Range;

use num::{BigRational, One};
use rayon::prelude::*;

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Indexing of the variables `v_{i,k}`, `1 <= k <= d_i`, grouped by vertex.
///
/// The same layout indexes Chern roots `xi_{i,k}` (weight 1) and elementary
/// symmetric generators `x_{i,k}` (weight `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarLayout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    nvars: usize,
}

impl VarLayout {
    pub fn new(d: &DimVector) -> Self {
        let dims: Vec<usize> = d.entries().iter().map(|&x| x as usize).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut nvars = 0;
        for &n in &dims {
            offsets.push(nvars);
            nvars += n;
        }
        VarLayout {
            dims,
            offsets,
            nvars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex]
    }

    /// Index of `v_{vertex,k}` with `k` one-based.
    pub fn index(&self, vertex: usize, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.dims[vertex]);
        self.offsets[vertex] + k - 1
    }

    /// Inverse of [`VarLayout::index`].
    pub fn position(&self, index: usize) -> (usize, usize) {
        let vertex = (0..self.dims.len())
            .find(|&v| self.block(v).contains(&index))
            .expect("variable index out of range");
        (vertex, index - self.offsets[vertex] + 1)
    }

    pub fn block(&self, vertex: usize) -> Range<usize> {
        self.offsets[vertex]..self.offsets[vertex] + self.dims[vertex]
    }

    pub fn root_weights(&self) -> Vec<u32> {
        vec![1; self.nvars]
    }

    pub fn elementary_weights(&self) -> Vec<u32> {
        self.dims.iter().flat_map(|&n| 1..=n as u32).collect()
    }

    pub fn root_name(&self, index: usize) -> String {
        let (i, k) = self.position(index);
        format!("xi_{i}_{k}")
    }

    pub fn elementary_name(&self, index: usize) -> String {
        let (i, k) = self.position(index);
        format!("x_{i}_{k}")
    }

    /// `xi_{vertex,k}` as a polynomial.
    pub fn root(&self, vertex: usize, k: usize) -> Poly {
        Poly::var(self.nvars, self.index(vertex, k))
    }

    /// `|W_d| = prod_i d_i!`.
    pub fn weyl_order(&self) -> u64 {
        self.dims
            .iter()
            .map(|&n| (1..=n as u64).product::<u64>())
            .product()
    }
}

/// An element of `W_d = prod_i Sym_{d_i}`: one permutation per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perms: Vec<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(layout: &VarLayout) -> Self {
        WeylElement {
            perms: layout.dims().iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    /// Zero-based permutations, one per vertex.
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            let mut seen = vec![false; p.len()];
            for &x in p {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::input(format!("{p:?} is not a permutation")));
                }
            }
        }
        Ok(WeylElement { perms })
    }

    /// Transposition of `xi_{vertex,a}` and `xi_{vertex,b}` (one-based).
    pub fn transposition(layout: &VarLayout, vertex: usize, a: usize, b: usize) -> Self {
        let mut g = WeylElement::identity(layout);
        g.perms[vertex].swap(a - 1, b - 1);
        g
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perms: self
                .perms
                .iter()
                .zip(&other.perms)
                .map(|(p, q)| q.iter().map(|&x| p[x]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            perms: self
                .perms
                .iter()
                .map(|p| {
                    let mut inv = vec![0; p.len()];
                    for (k, &x) in p.iter().enumerate() {
                        inv[x] = k;
                    }
                    inv
                })
                .collect(),
        }
    }

    pub fn sign(&self) -> i32 {
        let inversions: usize = self.perms.iter().map(|p| inversion_count(p)).sum();
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn apply_to_monomial(&self, layout: &VarLayout, mono: &[u16]) -> Monomial {
        let mut out = vec![0; mono.len()];
        for (vertex, p) in self.perms.iter().enumerate() {
            let block = layout.block(vertex);
            for (k, &image) in p.iter().enumerate() {
                out[block.start + image] = mono[block.start + k];
            }
        }
        out
    }
}

pub(crate) fn inversion_count<T: Ord>(p: &[T]) -> usize {
    let mut count = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                count += 1;
            }
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut all = vec![current.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return all;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        all.push(current.clone());
    }
}

/// Every element of `W_d`, in lexicographic order of the per-vertex
/// permutations.
pub fn weyl_group(layout: &VarLayout) -> Vec<WeylElement> {
    let mut elements = vec![WeylElement { perms: vec![] }];
    for &n in layout.dims() {
        let perms = permutations(n);
        elements = elements
            .into_iter()
            .flat_map(|g| {
                perms.iter().map(move |p| {
                    let mut next = g.perms.clone();
                    next.push(p.clone());
                    WeylElement { perms: next }
                })
            })
            .collect();
    }
    elements
}

/// `sigma . f`, permuting the second index of `xi_{i,k}` within each vertex.
pub fn act(layout: &VarLayout, sigma: &WeylElement, f: &Poly) -> Poly {
    f.map_monomials(|m| sigma.apply_to_monomial(layout, m))
}

/// `delta = prod_i prod_{k<l} (xi_{i,l} - xi_{i,k})`.
pub fn discriminant(layout: &VarLayout) -> Poly {
    let mut delta = Poly::one(layout.nvars());
    for vertex in 0..layout.vertex_count() {
        for l in 1..=layout.dim(vertex) {
            for k in 1..l {
                let factor = &layout.root(vertex, l) - &layout.root(vertex, k);
                delta = &delta * &factor;
            }
        }
    }
    delta
}

/// Exact quotient of `p` by `xi_hi - xi_lo`; fails on a nonzero remainder.
pub fn divide_by_difference(p: &Poly, hi: usize, lo: usize) -> Result<Poly> {
    let nvars = p.nvars();
    let top = p.terms().map(|(m, _)| m[hi]).max().unwrap_or(0) as usize;
    // coefficients of p as a polynomial in xi_hi
    let mut coeffs: Vec<Poly> = vec![Poly::zero(nvars); top + 1];
    for (m, c) in p.terms() {
        let mut rest = m.clone();
        let e = std::mem::replace(&mut rest[hi], 0) as usize;
        coeffs[e].add_term(rest, c.clone());
    }
    let mut lo_mono = vec![0u16; nvars];
    lo_mono[lo] = 1;
    let mut quotient = Poly::zero(nvars);
    let mut carry = Poly::zero(nvars);
    for j in (1..=top).rev() {
        // q_{j-1} = c_j + xi_lo q_j
        let q = &coeffs[j] + &carry.shift(&lo_mono);
        let mut power = vec![0u16; nvars];
        power[hi] = (j - 1) as u16;
        quotient.add_scaled(&q.shift(&power), &BigRational::one());
        carry = q;
    }
    let remainder = &coeffs[0] + &carry.shift(&lo_mono);
    if !remainder.is_zero() {
        return Err(Error::structural(format!(
            "division by a root difference left a remainder with {} terms",
            remainder.len()
        )));
    }
    Ok(quotient)
}

/// The symmetrization map `rho(f) = delta^{-1} sum_sigma sign(sigma) sigma.f`,
/// computed literally: full sum over `W_d` followed by exact division by
/// each factor of the discriminant.
pub fn symmetrize(layout: &VarLayout, f: &Poly) -> Result<Poly> {
    let group = weyl_group(layout);
    let nvars = layout.nvars();
    let alternating = group
        .par_iter()
        .fold(
            || Poly::zero(nvars),
            |mut acc, sigma| {
                let sign = BigRational::from_integer(sigma.sign().into());
                acc.add_scaled(&act(layout, sigma, f), &sign);
                acc
            },
        )
        .reduce(|| Poly::zero(nvars), |a, b| &a + &b);
    let mut quotient = alternating;
    for vertex in 0..layout.vertex_count() {
        for l in 1..=layout.dim(vertex) {
            for k in 1..l {
                if quotient.is_zero() {
                    return Ok(quotient);
                }
                quotient =
                    divide_by_difference(&quotient, layout.index(vertex, l), layout.index(vertex, k))?;
            }
        }
    }
    Ok(quotient)
}

/// The monomials `prod xi_{i,k}^{e_{i,k}}` with `0 <= e_{i,k} <= d_i - k`,
/// a basis of the root ring over the invariants.
pub fn descending_basis(layout: &VarLayout) -> Vec<Monomial> {
    let bounds: Vec<usize> = (0..layout.vertex_count())
        .flat_map(|i| (1..=layout.dim(i)).map(move |k| (i, k)))
        .map(|(i, k)| layout.dim(i) - k)
        .collect();
    let mut basis = vec![Vec::with_capacity(bounds.len())];
    for &bound in &bounds {
        basis = basis
            .into_iter()
            .flat_map(|prefix: Monomial| {
                (0..=bound as u16).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    basis
}

/// Whether `f` is fixed by every adjacent transposition.
pub fn is_invariant(layout: &VarLayout, f: &Poly) -> bool {
    (0..layout.vertex_count()).all(|vertex| {
        (1..layout.dim(vertex)).all(|k| {
            let swap = WeylElement::transposition(layout, vertex, k, k + 1);
            act(layout, &swap, f) == *f
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn layout(d: &[u32]) -> VarLayout {
        VarLayout::new(&DimVector::new(d.to_vec()))
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn layout_indexing() {
        let l = layout(&[2, 3]);
        assert_eq!(l.nvars(), 5);
        assert_eq!(l.index(1, 2), 3);
        assert_eq!(l.position(3), (1, 2));
        assert_eq!(l.position(0), (0, 1));
        assert_eq!(l.elementary_weights(), vec![1, 2, 1, 2, 3]);
        assert_eq!(l.weyl_order(), 12);
        assert_eq!(l.root_name(4), "xi_1_3");
        let with_empty = layout(&[0, 2]);
        assert_eq!(with_empty.position(0), (1, 1));
    }

    #[test]
    fn group_structure() {
        let l = layout(&[2, 3]);
        let group = weyl_group(&l);
        assert_eq!(group.len(), 12);
        assert_eq!(group.iter().map(|g| g.sign()).sum::<i32>(), 0);
        for g in &group {
            assert_eq!(g.compose(&g.inverse()), WeylElement::identity(&l));
            for h in &group {
                assert_eq!(g.compose(h).sign(), g.sign() * h.sign());
            }
        }
    }

    #[test]
    fn action_examples() {
        let l = layout(&[2, 1]);
        let xi11 = l.root(0, 1);
        let swap = WeylElement::transposition(&l, 0, 1, 2);
        assert_eq!(act(&l, &swap, &xi11), l.root(0, 2));
        let f = &xi11.pow(2) + &l.root(1, 1);
        assert_eq!(act(&l, &WeylElement::identity(&l), &f), f);
    }

    #[test]
    fn action_is_a_left_action() {
        let l = layout(&[3, 2]);
        let group = weyl_group(&l);
        let f = &(&l.root(0, 1).pow(3) * &l.root(0, 2)) + &(&l.root(1, 1) * &l.root(0, 3).pow(2));
        for g in group.iter().step_by(5) {
            for h in group.iter().step_by(3) {
                let lhs = act(&l, &g.compose(h), &f);
                let rhs = act(&l, g, &act(&l, h, &f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn discriminant_properties() {
        assert_eq!(discriminant(&layout(&[1, 1])), Poly::one(2));
        let l = layout(&[2, 3]);
        let delta = discriminant(&l);
        assert_eq!(delta.degree(&l.root_weights()), Some(4));
        for g in weyl_group(&l) {
            assert_eq!(act(&l, &g, &delta), delta.scale(&q(g.sign() as i64)));
        }
    }

    #[test]
    fn symmetrize_examples() {
        let l = layout(&[2, 3]);
        assert!(symmetrize(&l, &Poly::one(5)).unwrap().is_zero());
        let delta = discriminant(&l);
        assert_eq!(symmetrize(&l, &delta).unwrap(), Poly::constant(5, q(12)));
        let trivial = layout(&[1, 1]);
        let f = &trivial.root(0, 1) + &trivial.root(1, 1).pow(2);
        assert_eq!(symmetrize(&trivial, &f).unwrap(), f);
    }

    #[test]
    fn exact_division() {
        let l = layout(&[2]);
        let diff = &l.root(0, 2) - &l.root(0, 1);
        let g = &(&l.root(0, 1).pow(3) + &l.root(0, 2)) + &Poly::constant(2, q(7));
        let p = &g * &diff;
        assert_eq!(divide_by_difference(&p, 1, 0).unwrap(), g);
        assert!(divide_by_difference(&g, 1, 0).is_err());
    }

    #[test]
    fn descending_basis_examples() {
        assert_eq!(descending_basis(&layout(&[1, 1])), vec![vec![0, 0]]);
        assert_eq!(descending_basis(&layout(&[2, 3])).len(), 12);
        assert_eq!(
            descending_basis(&layout(&[2, 1])),
            vec![vec![0, 0, 0], vec![1, 0, 0]]
        );
    }
}
