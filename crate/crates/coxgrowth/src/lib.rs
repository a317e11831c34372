//! Exact computation of the Poincare series (growth functions) of finitely
//! generated Coxeter groups.
//!
//! The crate takes a Coxeter diagram (equivalently, a Coxeter matrix), and
//! provides:
//!
//! - classification of the diagram and all its subdiagrams
//!   (spherical / Euclidean / Lanner / quasi-Lanner / other infinite);
//! - the Poincare series `W(t) = sum_g t^(l(g))` as an exact rational
//!   function, computed by the Solomon-Steinberg recursion, together with
//!   its virgin, `[n]`-complete, and reduced forms;
//! - structural verification checks (Euler characteristic via the Serre
//!   formula, the highest and second-highest denominator coefficients,
//!   degree differences, reciprocity);
//! - numeric pole analysis (real poles, the annulus bounds for the non-real
//!   poles, and the growth exponent);
//! - a bundled catalog of the Lanner and quasi-Lanner diagrams with their
//!   published series and pole data, used as a regression suite;
//! - an independent Cayley-graph counting oracle for series prefixes.
//!
//! All series arithmetic is exact (arbitrary-precision integers); floating
//! point appears only in root finding and the Cayley-graph hash.

pub mod catalog;
pub mod cayley;
pub mod classify;
pub mod diagram;
mod error;
pub mod growth;
pub mod poles;
pub mod polyalg;
pub mod verify;

pub use error::{Error, Result};
