//! Exact polynomial kernel in the Chern roots `xi_{i,k}`.
//!
//! Sparse rational polynomials, the Weyl group `W_d = prod_i Sym_{d_i}` and
//! its action, the discriminant and symmetrization map, the rewrite of
//! invariants into elementary symmetric generators, and truncated graded
//! series including the Todd series.

mod intpoly;
mod poly;
mod series;
mod symmetric;
mod weyl;

pub use intpoly::IntPoly;
pub use poly::{weighted_degree, Monomial, Poly};
pub use series::{
    bernoulli_numbers, todd_coefficients, todd_factor, todd_factor_with, univariate,
    TruncatedClass,
};
pub use symmetric::{elementary_in_roots, from_elementary, to_elementary, SchurRho, SchurTable};
pub use weyl::{
    act, descending_basis, discriminant, divide_by_difference, is_invariant, symmetrize,
    weyl_group, VarLayout, WeylElement,
};

/// Sparse polynomial in the Chern roots.
pub type ChernPoly = Poly;
