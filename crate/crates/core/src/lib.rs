//! Intersection theory of quiver moduli with exact rational arithmetic.
//!
//! The Chow ring of a fine quiver moduli space is built from its tautological
//! presentation; point class, Todd class and tangent classes are evaluated
//! from closed formulas in the Chern roots of the universal bundles, and the
//! resulting integration functional yields degrees, Hilbert series and Euler
//! characteristics.

pub mod check;
pub mod chow;
pub mod error;
pub mod invariants;
pub mod polyring;
pub mod quiver;

pub use error::{Error, Result};
