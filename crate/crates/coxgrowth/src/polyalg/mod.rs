//! Exact integer polynomial and rational-function arithmetic, cyclotomic
//! factorization, and the `[n]`/`[n']` bracket calculus.

pub mod cyclo;
pub mod poly;
pub mod ratfun;

pub use cyclo::{
    bracket, bracket_indices, bracket_poly, cyclotomic, euler_phi, exact_bracket_factorization,
    factor_into_cyclotomics, primed_indices, primed_poly, to_bracket_form, BracketCover,
    BracketFactorization, CycloMultiset,
};
pub use poly::{IntPolynomial, Reciprocity};
pub use ratfun::RationalFunction;
