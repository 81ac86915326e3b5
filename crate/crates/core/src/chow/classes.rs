use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::polyring::{
    todd_coefficients, todd_factor_with, univariate, Poly, SchurRho, SchurTable, TruncatedClass,
};

/// An element of the Chow ring, as coordinates in the quotient basis of each
/// degree `0..=dim X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    parts: Vec<Vec<BigRational>>,
}

impl ChowClass {
    pub fn parts(&self) -> &[Vec<BigRational>] {
        &self.parts
    }

    pub fn part(&self, degree: usize) -> &[BigRational] {
        &self.parts[degree]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(Zero::is_zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.parts[0][0].clone()
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &ChowClass, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> ChowClass {
        ChowClass {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> ChowClass {
        ChowClass {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// The homogeneous component of degree `n`, all others zeroed.
    pub fn homogeneous(&self, n: usize) -> ChowClass {
        ChowClass {
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    if k == n {
                        p.clone()
                    } else {
                        vec![BigRational::zero(); p.len()]
                    }
                })
                .collect(),
        }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=n {
        let next = &out[k - 1] * BigInt::from(k);
        out.push(next);
    }
    out
}

/// Chern data of the universal bundles, as classes in the Chow ring.
#[derive(Debug, Clone)]
pub struct UnivChern {
    /// `c(U_i)` per vertex.
    pub chern: Vec<ChowClass>,
    /// `ch(U_i)` per vertex.
    pub character: Vec<ChowClass>,
}

impl Presentation {
    pub fn zero_class(&self) -> ChowClass {
        ChowClass {
            parts: self.quotient_dims().into_iter().map(|n| vec![BigRational::zero(); n]).collect(),
        }
    }

    pub fn one_class(&self) -> ChowClass {
        self.constant_class(BigRational::one())
    }

    pub fn constant_class(&self, c: BigRational) -> ChowClass {
        let mut out = self.zero_class();
        out.parts[0][0] = c;
        out
    }

    /// Reduce a polynomial in the generators `x_{i,k}` onto the quotient
    /// basis. Components above `dim X` vanish.
    pub fn normal_form(&self, p: &Poly) -> ChowClass {
        let reduced = self.eliminate(p);
        let mut out = self.zero_class();
        for (mono, c) in reduced.terms() {
            let deg = crate::polyring::weighted_degree(mono, &self.weights) as usize;
            if deg > self.dimension as usize {
                continue;
            }
            let piece = &self.pieces[deg];
            let reduction = &piece.reductions[piece.index[mono]];
            for (slot, r) in out.parts[deg].iter_mut().zip(reduction) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        out
    }

    /// Normal form of a truncated series in the generators.
    pub fn normal_form_series(&self, c: &TruncatedClass) -> ChowClass {
        self.normal_form(&c.to_poly())
    }

    /// A polynomial representative built from basis monomials.
    pub fn lift(&self, c: &ChowClass) -> Poly {
        let mut out = Poly::zero(self.layout.nvars());
        for (deg, coords) in c.parts.iter().enumerate() {
            for (x, mono) in coords.iter().zip(self.basis(deg)) {
                out.add_term(mono.clone(), x.clone());
            }
        }
        out
    }

    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        let top = self.dimension as usize;
        let mut out = self.zero_class();
        let mut mono = vec![0u16; self.layout.nvars()];
        for i in 0..=top {
            for (ka, xa) in a.parts[i].iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                let ma = &self.pieces[i].monomials[self.pieces[i].basis[ka]];
                for j in 0..=top - i {
                    for (kb, xb) in b.parts[j].iter().enumerate() {
                        if xb.is_zero() {
                            continue;
                        }
                        let mb = &self.pieces[j].monomials[self.pieces[j].basis[kb]];
                        for (slot, (x, y)) in mono.iter_mut().zip(ma.iter().zip(mb)) {
                            *slot = x + y;
                        }
                        let piece = &self.pieces[i + j];
                        let reduction = &piece.reductions[piece.index[&mono]];
                        let c = xa * xb;
                        for (slot, r) in out.parts[i + j].iter_mut().zip(reduction) {
                            if !r.is_zero() {
                                *slot += &c * r;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &ChowClass, exponent: u32) -> ChowClass {
        let mut acc = self.one_class();
        for _ in 0..exponent {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `sum_k coeffs[k] * a^k` for `a` with vanishing constant term.
    pub fn compose(&self, a: &ChowClass, coeffs: &[BigRational]) -> Result<ChowClass> {
        if !a.constant_term().is_zero() {
            return Err(Error::input("series composition needs a vanishing constant term"));
        }
        let mut out = self.zero_class();
        let mut power = self.one_class();
        for (k, c) in coeffs.iter().enumerate().take(self.dimension as usize + 1) {
            if k > 0 {
                power = self.mul(&power, a);
            }
            if !c.is_zero() {
                out = out.add(&power.scale(c));
            }
        }
        Ok(out)
    }

    pub fn exp(&self, a: &ChowClass) -> Result<ChowClass> {
        let f = factorials(self.dimension as usize);
        let coeffs: Vec<BigRational> = f.into_iter().map(|x| BigRational::new(BigInt::one(), x)).collect();
        self.compose(a, &coeffs)
    }

    pub fn inverse(&self, a: &ChowClass) -> Result<ChowClass> {
        let c = a.constant_term();
        if c.is_zero() {
            return Err(Error::input("inverse needs a nonzero constant term"));
        }
        let c_inv = c.recip();
        let v = a.scale(&c_inv).sub(&self.one_class());
        let geometric: Vec<BigRational> = (0..=self.dimension as usize)
            .map(|k| if k % 2 == 0 { q(1) } else { q(-1) })
            .collect();
        Ok(self.compose(&v, &geometric)?.scale(&c_inv))
    }

    /// `int_X c`: the top-degree coordinate relative to the point class.
    pub fn integrate(&self, c: &ChowClass) -> Result<BigRational> {
        let top = self.dimension as usize;
        if self.pieces[top].basis.len() != 1 {
            return Err(Error::structural("top-degree quotient is not one-dimensional"));
        }
        let point = self.point_class()?;
        Ok(&c.parts[top][0] / &point.parts[top][0])
    }

    /// Elementary generator `x_{vertex,k}` as a polynomial.
    fn generator(&self, vertex: usize, k: usize) -> Poly {
        Poly::var(self.layout.nvars(), self.layout.index(vertex, k))
    }

    /// `c(U_i)`, or `c(U_i^dual)` when `dual` is set.
    pub fn chern_total(&self, vertex: usize, dual: bool) -> ChowClass {
        let mut p = Poly::one(self.layout.nvars());
        for k in 1..=self.layout.dim(vertex) {
            let sign = if dual && k % 2 == 1 { q(-1) } else { q(1) };
            p.add_scaled(&self.generator(vertex, k), &sign);
        }
        self.normal_form(&p)
    }

    /// Power sums `p_k(xi_{i,*})` for `k = 1..=dim X` via Newton's identities.
    fn power_sums(&self, vertex: usize) -> Vec<Poly> {
        let n = self.layout.dim(vertex);
        let top = self.dimension as usize;
        let nvars = self.layout.nvars();
        let e = |j: usize| -> Poly {
            if j == 0 {
                Poly::one(nvars)
            } else if j <= n {
                self.generator(vertex, j)
            } else {
                Poly::zero(nvars)
            }
        };
        let mut p: Vec<Poly> = vec![Poly::zero(nvars)];
        for k in 1..=top {
            let mut acc = Poly::zero(nvars);
            for j in 1..k {
                if j > n {
                    break;
                }
                let sign = if j % 2 == 1 { q(1) } else { q(-1) };
                acc.add_scaled(&(&e(j) * &p[k - j]), &sign);
            }
            if k <= n {
                let sign = if k % 2 == 1 { q(k as i64) } else { q(-(k as i64)) };
                acc.add_scaled(&e(k), &sign);
            }
            p.push(acc);
        }
        p
    }

    /// `ch(U_i)`, or `ch(U_i^dual)` when `dual` is set.
    pub fn chern_character(&self, vertex: usize, dual: bool) -> ChowClass {
        let top = self.dimension as usize;
        let f = factorials(top);
        let sums = self.power_sums(vertex);
        let mut p = Poly::constant(self.layout.nvars(), q(self.layout.dim(vertex) as i64));
        for k in 1..=top {
            let mut c = BigRational::new(BigInt::one(), f[k].clone());
            if dual && k % 2 == 1 {
                c = -c;
            }
            p.add_scaled(&sums[k], &c);
        }
        self.normal_form(&p)
    }

    pub fn universal_chern(&self) -> UnivChern {
        let vertices = 0..self.layout.vertex_count();
        UnivChern {
            chern: vertices.clone().map(|i| self.chern_total(i, false)).collect(),
            character: vertices.map(|i| self.chern_character(i, false)).collect(),
        }
    }

    /// Degree-`dim X` part of `prod_a c(U_t)^{d_s} / prod_i c(U_i)^{d_i}`,
    /// or of the dual-bundle expression when `dual` is set.
    pub fn point_class_side(&self, dual: bool) -> Result<ChowClass> {
        let d = self.dims.entries();
        let totals: Vec<ChowClass> = (0..self.layout.vertex_count())
            .map(|i| self.chern_total(i, dual))
            .collect();
        let mut numerator = self.one_class();
        for &(s, t) in self.quiver.arrows() {
            let (base, exponent) = if dual { (s, d[t]) } else { (t, d[s]) };
            numerator = self.mul(&numerator, &self.pow(&totals[base], exponent));
        }
        let mut denominator = self.one_class();
        for (i, total) in totals.iter().enumerate() {
            denominator = self.mul(&denominator, &self.pow(total, d[i]));
        }
        let ratio = self.mul(&numerator, &self.inverse(&denominator)?);
        Ok(ratio.homogeneous(self.dimension as usize))
    }

    /// The point class, checked against the dual-bundle expression.
    pub fn point_class(&self) -> Result<ChowClass> {
        let point = self.point_class_side(false)?;
        if point.is_zero() {
            return Err(Error::structural(
                "point class reduces to zero: moduli space empty or assumptions violated",
            ));
        }
        Ok(point)
    }

    /// `ch(T_X)` from the four-term tangent sequence.
    pub fn tangent_character(&self) -> ChowClass {
        let n = self.layout.vertex_count();
        let (plain, dual): (Vec<ChowClass>, Vec<ChowClass>) = (0..n)
            .into_par_iter()
            .map(|i| (self.chern_character(i, false), self.chern_character(i, true)))
            .unzip();
        let mut ch = self.one_class();
        for &(s, t) in self.quiver.arrows() {
            ch = ch.add(&self.mul(&dual[s], &plain[t]));
        }
        for i in 0..n {
            ch = ch.sub(&self.mul(&dual[i], &plain[i]));
        }
        ch
    }

    /// Components `k! ch_k` of a Chern character, the power sums of its roots.
    fn root_power_sums(&self, ch: &ChowClass) -> Vec<ChowClass> {
        let f = factorials(self.dimension as usize);
        (0..=self.dimension as usize)
            .map(|k| ch.homogeneous(k).scale(&BigRational::from_integer(f[k].clone())))
            .collect()
    }

    /// Total Chern class of the bundle with the given Chern character.
    pub fn chern_from_character(&self, ch: &ChowClass) -> Result<ChowClass> {
        // log c = sum_k (-1)^{k-1} (k-1)! ch_k
        let sums = self.root_power_sums(ch);
        let mut log = self.zero_class();
        for (k, p) in sums.iter().enumerate().skip(1) {
            let sign = if k % 2 == 1 { q(1) } else { q(-1) };
            log = log.add(&p.scale(&(sign / q(k as i64))));
        }
        self.exp(&log)
    }

    /// Multiplicative class of the series `coeffs` (constant term 1) of the
    /// bundle with the given Chern character.
    pub fn multiplicative_class(&self, ch: &ChowClass, coeffs: &[BigRational]) -> Result<ChowClass> {
        let top = self.dimension as usize;
        let gamma = univariate::log(coeffs, top + 1)?;
        let sums = self.root_power_sums(ch);
        let mut log = self.zero_class();
        for (k, p) in sums.iter().enumerate().skip(1) {
            if !gamma[k].is_zero() {
                log = log.add(&p.scale(&gamma[k]));
            }
        }
        self.exp(&log)
    }

    /// `c(T_X)`.
    pub fn tangent_chern(&self) -> Result<ChowClass> {
        self.chern_from_character(&self.tangent_character())
    }

    /// `td_X`.
    pub fn todd_class(&self) -> Result<ChowClass> {
        self.todd_class_with(&todd_coefficients(self.dimension as usize))
    }

    /// `td_X` for caller-supplied coefficients of `t / (1 - e^{-t})`.
    pub fn todd_class_with(&self, coeffs: &[BigRational]) -> Result<ChowClass> {
        self.multiplicative_class(&self.tangent_character(), coeffs)
    }

    /// Rewrite a series in the Chern roots and reduce it.
    fn reduce_root_series(&self, c: &TruncatedClass) -> Result<ChowClass> {
        let table = SchurTable::new();
        let rho = SchurRho::new(&self.layout, &table);
        let invariant = rho.to_elementary(&c.to_poly(), Some(self.dimension))?;
        Ok(self.normal_form(&invariant))
    }

    /// Product over the root differences `xi_{t,l} - xi_{s,k}` of the four-term
    /// sequence: arrow factors divided by vertex factors.
    fn root_product(&self, factor: impl Fn(&Poly) -> Result<TruncatedClass>) -> Result<TruncatedClass> {
        let weights = self.layout.root_weights();
        let d = self.layout.dims();
        let mut numerator = TruncatedClass::one(&weights, self.dimension);
        let mut denominator = TruncatedClass::one(&weights, self.dimension);
        let pairs = |s: usize, t: usize| {
            let layout = &self.layout;
            (1..=d[s]).flat_map(move |r| {
                (1..=d[t]).map(move |l| &layout.root(t, l) - &layout.root(s, r))
            })
        };
        for &(s, t) in self.quiver.arrows() {
            for diff in pairs(s, t) {
                numerator = numerator.mul(&factor(&diff)?);
            }
        }
        for i in 0..self.layout.vertex_count() {
            for diff in pairs(i, i) {
                denominator = denominator.mul(&factor(&diff)?);
            }
        }
        Ok(numerator.mul(&denominator.inverse()?))
    }

    /// `td_X` evaluated directly as a product of Todd factors in the roots.
    pub fn todd_class_from_roots(&self) -> Result<ChowClass> {
        let weights = self.layout.root_weights();
        let coeffs = todd_coefficients(self.dimension as usize);
        let product =
            self.root_product(|t| todd_factor_with(t, &weights, self.dimension, &coeffs))?;
        self.reduce_root_series(&product)
    }

    /// `c(T_X)` evaluated directly as a product of `1 + t` in the roots.
    pub fn tangent_chern_from_roots(&self) -> Result<ChowClass> {
        let weights = self.layout.root_weights();
        let product = self.root_product(|t| {
            Ok(TruncatedClass::from_poly(
                &(&Poly::one(t.nvars()) + t),
                &weights,
                self.dimension,
            ))
        })?;
        self.reduce_root_series(&product)
    }

    /// Point class from the root expression `prod (1 + xi)`.
    pub fn point_class_from_roots(&self) -> Result<ChowClass> {
        let weights = self.layout.root_weights();
        let top = self.dimension;
        let nvars = self.layout.nvars();
        let d = self.layout.dims();
        let total = |i: usize| {
            let mut c = TruncatedClass::one(&weights, top);
            for k in 1..=d[i] {
                let root = &Poly::one(nvars) + &self.layout.root(i, k);
                c = c.mul(&TruncatedClass::from_poly(&root, &weights, top));
            }
            c
        };
        let mut numerator = TruncatedClass::one(&weights, top);
        for &(s, t) in self.quiver.arrows() {
            numerator = numerator.mul(&total(t).pow(d[s] as u32));
        }
        let mut denominator = TruncatedClass::one(&weights, top);
        for (i, &n) in d.iter().enumerate() {
            denominator = denominator.mul(&total(i).pow(n as u32));
        }
        let ratio = numerator.mul(&denominator.inverse()?);
        Ok(self.reduce_root_series(&ratio)?.homogeneous(top as usize))
    }
}
