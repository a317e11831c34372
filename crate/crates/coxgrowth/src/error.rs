//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rank {rank} exceeds the subset-enumeration guard ({max})")]
    RankGuard { rank: usize, max: usize },

    #[error("polynomial has a non-cyclotomic factor; unfactored remainder {remainder}")]
    NonCyclotomic { remainder: String },

    #[error("unknown catalog label {label:?}{}", near_matches_suffix(.near))]
    UnknownLabel { label: String, near: Vec<String> },

    #[error("root finding did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NonConvergence {
        iterations: usize,
        max_residual: f64,
        best: Vec<(f64, f64)>,
    },

    #[error("hash collision in Cayley enumeration: elements at lengths {len_a} and {len_b} within tolerance; tighten the tolerance")]
    HashCollision { len_a: usize, len_b: usize },

    #[error("catalog data error: {0}")]
    CatalogData(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

fn near_matches_suffix(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!(" (did you mean one of {}?)", near.join(", "))
    }
}
