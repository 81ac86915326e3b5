use std::collections::HashMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::Echelon;
use crate::error::{Error, Result};
use crate::polyring::{
    descending_basis, weighted_degree, IntPoly, Monomial, Poly, SchurRho, SchurTable, VarLayout,
};
use crate::quiver::{DimVector, Normalization, Quiver, Stability};

/// The linear factors `(target root, source root)` of the relation
/// polynomial of `dprime`, with multiplicity.
pub fn relation_factors(
    quiver: &Quiver,
    d: &DimVector,
    dprime: &DimVector,
) -> Result<Vec<(usize, usize)>> {
    if dprime.len() != d.len() || !dprime.le(d) || dprime.is_zero() || dprime == d {
        return Err(Error::input(format!(
            "{dprime} is not a proper nonzero subdimension vector of {d}"
        )));
    }
    let layout = VarLayout::new(d);
    let mut factors = Vec::new();
    for &(s, t) in quiver.arrows() {
        for k in 1..=dprime.entries()[s] as usize {
            for l in dprime.entries()[t] as usize + 1..=d.entries()[t] as usize {
                factors.push((layout.index(t, l), layout.index(s, k)));
            }
        }
    }
    Ok(factors)
}

/// `prod_a prod_{k<=d'_s} prod_{l>d'_t} (xi_{t,l} - xi_{s,k})`.
pub fn relation_polynomial(quiver: &Quiver, d: &DimVector, dprime: &DimVector) -> Result<Poly> {
    Ok(relation_int_polynomial(quiver, d, dprime)?.to_poly())
}

fn relation_int_polynomial(quiver: &Quiver, d: &DimVector, dprime: &DimVector) -> Result<IntPoly> {
    let nvars = VarLayout::new(d).nvars();
    let mut f = IntPoly::one(nvars);
    for (hi, lo) in relation_factors(quiver, d, dprime)? {
        f = f.mul(&IntPoly::difference(nvars, hi, lo))?;
    }
    Ok(f)
}

fn is_submultiset(small: &[(usize, usize)], large: &[(usize, usize)]) -> bool {
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    for f in large {
        *counts.entry(*f).or_default() += 1;
    }
    small.iter().all(|f| {
        let c = counts.entry(*f).or_default();
        *c -= 1;
        *c >= 0
    })
}

/// Knobs for [`Presentation::build`].
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Drop forbidden vectors whose relation polynomial is divisible by that
    /// of another forbidden vector. The ideal is unchanged.
    pub prune_forbidden: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            prune_forbidden: true,
        }
    }
}

/// Degree-`n` slice of the quotient: monomials of `A / I_lin`, the chosen
/// quotient basis and the reduction of every monomial onto it.
#[derive(Debug, Clone)]
pub(crate) struct DegreePiece {
    pub(crate) monomials: Vec<Monomial>,
    pub(crate) index: HashMap<Monomial, usize>,
    pub(crate) basis: Vec<usize>,
    pub(crate) reductions: Vec<Vec<BigRational>>,
}

/// Tautological presentation of the rational Chow ring of a quiver moduli
/// space, with per-degree quotient linear algebra up to the top degree.
///
/// The linear relation `sum a_i x_{i,1}` is applied by eliminating one
/// generator `x_{i0,1}`; the symmetrized tautological relations are reduced
/// degree by degree by exact row reduction.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub(crate) quiver: Quiver,
    pub(crate) dims: DimVector,
    pub(crate) theta: Stability,
    pub(crate) normalization: Normalization,
    pub(crate) dimension: u32,
    pub(crate) layout: VarLayout,
    pub(crate) weights: Vec<u32>,
    pub(crate) eliminated: usize,
    pub(crate) elimination: Poly,
    pub(crate) linear_relation: Poly,
    pub(crate) forbidden: Vec<DimVector>,
    pub(crate) relation_vectors: Vec<DimVector>,
    pub(crate) generators: Vec<Poly>,
    pub(crate) pieces: Vec<DegreePiece>,
}

/// Structured summary of a presentation.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationSummary {
    pub dims: Vec<u32>,
    pub theta: Vec<i64>,
    pub normalization: Vec<i64>,
    pub dimension: u32,
    pub forbidden: Vec<Vec<u32>>,
    pub relation_vectors: Vec<Vec<u32>>,
    pub generator_count: usize,
    pub quotient_dims: Vec<usize>,
}

impl Presentation {
    pub fn build(
        quiver: &Quiver,
        dims: &DimVector,
        theta: &Stability,
        normalization: Option<Normalization>,
        options: &BuildOptions,
    ) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::assumption("the quiver must be acyclic"));
        }
        if !quiver.is_coprime(dims, theta)? {
            return Err(Error::assumption(format!(
                "{dims} is not theta-coprime for theta = {theta}"
            )));
        }
        let normalization = match normalization {
            Some(a) => Normalization::new(a.0, dims)?,
            None => Normalization::for_dims(dims)?,
        };
        let dimension = quiver.expected_dimension(dims)?;
        if dimension < 0 {
            return Err(Error::structural(format!(
                "expected dimension {dimension} is negative: the moduli space is empty"
            )));
        }
        let dimension = dimension as u32;
        let layout = VarLayout::new(dims);
        let weights = layout.elementary_weights();
        let nvars = layout.nvars();

        let i0 = (0..layout.vertex_count())
            .find(|&i| normalization.0[i] != 0 && layout.dim(i) > 0)
            .ok_or_else(|| Error::input("normalization has no support on d"))?;
        let eliminated = layout.index(i0, 1);
        let linear_coeffs: Vec<(usize, BigRational)> = (0..layout.vertex_count())
            .filter(|&i| layout.dim(i) > 0 && normalization.0[i] != 0)
            .map(|i| {
                (
                    layout.index(i, 1),
                    BigRational::from_integer(BigInt::from(normalization.0[i])),
                )
            })
            .collect();
        let linear_relation = Poly::linear(nvars, &linear_coeffs);
        let lead = BigRational::from_integer(BigInt::from(normalization.0[i0]));
        let elimination = Poly::linear(
            nvars,
            &linear_coeffs
                .iter()
                .filter(|(index, _)| *index != eliminated)
                .map(|(index, c)| (*index, -c / &lead))
                .collect::<Vec<_>>(),
        );

        let forbidden = quiver.forbidden_vectors(dims, theta)?;
        let relation_vectors = if options.prune_forbidden {
            let factors: Vec<Vec<(usize, usize)>> = forbidden
                .iter()
                .map(|v| relation_factors(quiver, dims, v))
                .collect::<Result<_>>()?;
            forbidden
                .iter()
                .enumerate()
                .filter(|&(j, _)| {
                    !(0..forbidden.len()).any(|k| {
                        k != j
                            && is_submultiset(&factors[k], &factors[j])
                            // equal factor sets: keep the first
                            && (factors[k].len() < factors[j].len() || k < j)
                    })
                })
                .map(|(_, v)| v.clone())
                .collect()
        } else {
            forbidden.clone()
        };

        let generators = symmetrized_relations(quiver, dims, &layout, &relation_vectors, dimension)?;
        let reduced: Vec<Poly> = generators
            .par_iter()
            .map(|g| g.substitute(eliminated, &elimination))
            .filter(|g| !g.is_zero())
            .collect();
        let pieces = quotient_pieces(&weights, eliminated, dimension, &reduced);

        let presentation = Presentation {
            quiver: quiver.clone(),
            dims: dims.clone(),
            theta: theta.clone(),
            normalization,
            dimension,
            layout,
            weights,
            eliminated,
            elimination,
            linear_relation,
            forbidden,
            relation_vectors,
            generators,
            pieces,
        };
        let dims_by_degree = presentation.quotient_dims();
        if dims_by_degree[0] != 1 {
            return Err(Error::structural("degree-0 quotient is not one-dimensional"));
        }
        if dims_by_degree[dimension as usize] != 1 {
            return Err(Error::structural(format!(
                "top-degree quotient has dimension {}: moduli space empty or assumptions violated",
                dims_by_degree[dimension as usize]
            )));
        }
        Ok(presentation)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn theta(&self) -> &Stability {
        &self.theta
    }

    pub fn normalization(&self) -> &Normalization {
        &self.normalization
    }

    /// `dim X`, also the truncation bound.
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    /// Weights of the generators `x_{i,k}` (equal to `k`).
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn linear_relation(&self) -> &Poly {
        &self.linear_relation
    }

    pub fn forbidden(&self) -> &[DimVector] {
        &self.forbidden
    }

    /// Forbidden vectors whose relations were actually used.
    pub fn relation_vectors(&self) -> &[DimVector] {
        &self.relation_vectors
    }

    /// Symmetrized tautological relations, in the generators `x_{i,k}`.
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    /// Quotient basis monomials of degree `n`.
    pub fn basis(&self, n: usize) -> Vec<&Monomial> {
        let piece = &self.pieces[n];
        piece.basis.iter().map(|&j| &piece.monomials[j]).collect()
    }

    pub fn summary(&self) -> PresentationSummary {
        PresentationSummary {
            dims: self.dims.0.clone(),
            theta: self.theta.0.clone(),
            normalization: self.normalization.0.clone(),
            dimension: self.dimension,
            forbidden: self.forbidden.iter().map(|v| v.0.clone()).collect(),
            relation_vectors: self.relation_vectors.iter().map(|v| v.0.clone()).collect(),
            generator_count: self.generators.len(),
            quotient_dims: self.quotient_dims(),
        }
    }

    /// Plain-text dump: generators, relations and quotient dimensions.
    pub fn render(&self) -> String {
        let name = |i: usize| self.layout.elementary_name(i);
        let mut out = String::new();
        writeln!(out, "dimension vector {}  theta {}  a {}", self.dims, self.theta, self.normalization).unwrap();
        writeln!(out, "dim X = {}", self.dimension).unwrap();
        writeln!(out, "linear relation: {}", self.linear_relation.render(&self.weights, name)).unwrap();
        writeln!(
            out,
            "forbidden: {}",
            self.forbidden.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        writeln!(
            out,
            "used: {}",
            self.relation_vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        let mut rendered: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.render(&self.weights, name))
            .collect();
        rendered.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rendered.dedup();
        writeln!(out, "symmetrized relations ({} distinct):", rendered.len()).unwrap();
        for r in rendered {
            writeln!(out, "  {r}").unwrap();
        }
        writeln!(
            out,
            "quotient dimensions: {}",
            self.quotient_dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        out
    }

    /// Apply the linear relation to a polynomial in the generators.
    pub(crate) fn eliminate(&self, p: &Poly) -> Poly {
        p.substitute(self.eliminated, &self.elimination)
    }
}

/// `rho(f_{d'} * b)` for every relation vector `d'` and descending basis
/// monomial `b`, keeping nonzero results of degree `<= bound`.
fn symmetrized_relations(
    quiver: &Quiver,
    dims: &DimVector,
    layout: &VarLayout,
    relation_vectors: &[DimVector],
    bound: u32,
) -> Result<Vec<Poly>> {
    let table = SchurTable::new();
    let rho = SchurRho::new(layout, &table);
    let delta_degree: u32 = layout
        .dims()
        .iter()
        .map(|&n| (n * n.saturating_sub(1) / 2) as u32)
        .sum();
    let basis = descending_basis(layout);
    let unit = layout.root_weights();
    let mut jobs: Vec<(usize, &Monomial)> = Vec::new();
    let mut relations = Vec::with_capacity(relation_vectors.len());
    for (j, v) in relation_vectors.iter().enumerate() {
        let f = relation_int_polynomial(quiver, dims, v)?;
        let f_degree = f
            .terms()
            .next()
            .map(|(m, _)| weighted_degree(m, &unit))
            .unwrap_or(0);
        for b in &basis {
            let total = f_degree + weighted_degree(b, &unit);
            if total >= delta_degree && total - delta_degree <= bound {
                jobs.push((j, b));
            }
        }
        relations.push(f);
    }
    let images: Vec<Poly> = jobs
        .par_iter()
        .map(|&(j, b)| rho.apply_shifted(&relations[j], b, Some(bound)))
        .collect::<Result<Vec<_>>>()?;
    Ok(images.into_iter().filter(|g| !g.is_zero()).collect())
}

/// Monomials of weighted degree `n` avoiding `skip`, in descending
/// lexicographic order.
fn monomials_of_degree(weights: &[u32], skip: usize, n: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], skip: usize, var: usize, left: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if var == weights.len() {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        if var == skip {
            go(weights, skip, var + 1, left, current, out);
            return;
        }
        let w = weights[var];
        let mut e = 0;
        while e * w <= left {
            current[var] = e as u16;
            go(weights, skip, var + 1, left - e * w, current, out);
            e += 1;
        }
        current[var] = 0;
    }
    let mut out = Vec::new();
    go(weights, skip, 0, n, &mut vec![0; weights.len()], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn quotient_pieces(weights: &[u32], skip: usize, bound: u32, generators: &[Poly]) -> Vec<DegreePiece> {
    let mut by_degree: Vec<Vec<&Poly>> = vec![Vec::new(); bound as usize + 1];
    for g in generators {
        // generators are homogeneous
        if let Some(deg) = g.degree(weights) {
            if deg <= bound {
                by_degree[deg as usize].push(g);
            }
        }
    }
    let mut monomials: Vec<Vec<Monomial>> = Vec::new();
    let mut indices: Vec<HashMap<Monomial, usize>> = Vec::new();
    let mut echelons: Vec<Echelon> = Vec::new();
    for n in 0..=bound as usize {
        let monos = monomials_of_degree(weights, skip, n as u32);
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let width = monos.len();
        let mut echelon = Echelon::new(width);
        for g in &by_degree[n] {
            if echelon.is_full() {
                break;
            }
            let mut v = vec![BigRational::zero(); width];
            for (m, c) in g.terms() {
                v[index[m]] = c.clone();
            }
            echelon.insert(v);
        }
        // multiples x_v * I_{n - w_v}
        'outer: for (var, &w) in weights.iter().enumerate() {
            if var == skip || w as usize > n {
                continue;
            }
            let lower = &echelons[n - w as usize];
            for row in lower.rows() {
                if echelon.is_full() {
                    break 'outer;
                }
                let mut v = vec![BigRational::zero(); width];
                for (k, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut m = monomials[n - w as usize][k].clone();
                    m[var] += 1;
                    v[index[&m]] = c.clone();
                }
                echelon.insert(v);
            }
        }
        monomials.push(monos);
        indices.push(index);
        echelons.push(echelon);
    }
    monomials
        .into_iter()
        .zip(indices)
        .zip(&echelons)
        .map(|((monos, index), echelon)| {
            let basis: Vec<usize> = (0..monos.len()).filter(|&c| !echelon.is_pivot(c)).collect();
            let position: HashMap<usize, usize> =
                basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let mut pivot_rows: HashMap<usize, &Vec<BigRational>> = HashMap::new();
            for row in echelon.rows() {
                let p = row.iter().position(|x| !x.is_zero()).unwrap();
                pivot_rows.insert(p, row);
            }
            let reductions = (0..monos.len())
                .map(|c| {
                    let mut v = vec![BigRational::zero(); basis.len()];
                    match pivot_rows.get(&c) {
                        None => v[position[&c]] = BigRational::from_integer(1.into()),
                        Some(row) => {
                            for (k, &col) in basis.iter().enumerate() {
                                v[k] = -row[col].clone();
                            }
                        }
                    }
                    v
                })
                .collect();
            DegreePiece {
                monomials: monos,
                index,
                basis,
                reductions,
            }
        })
        .collect()
}
