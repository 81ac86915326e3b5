//! Tautological presentation of the Chow ring and the classes living in it.

mod classes;
mod linalg;
mod presentation;

pub use classes::{ChowClass, UnivChern};
pub use linalg::Echelon;
pub use presentation::{
    relation_factors, relation_polynomial, BuildOptions, Presentation, PresentationSummary,
};
