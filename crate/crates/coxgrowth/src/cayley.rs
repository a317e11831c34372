//! Independent word-length counting oracle: breadth-first search of the
//! Cayley graph in the canonical geometric representation.
//!
//! Each generator s acts on R^n by the reflection
//! `sigma_s(e_t) = e_t - 2 B(e_s, e_t) e_s` with `B(e_s, e_t) = -cos(pi/m_st)`
//! (and -1 for an infinite bond). The representation is faithful, so group
//! elements correspond to distinct matrices; at desk scale (length <= 12)
//! distinct elements are separated by far more than the accumulated
//! double-precision error, and matrices are identified by rounding entries
//! to a fixed grid. Lengths of `s*w` and `w` always differ by exactly one;
//! a grid key reappearing at an incompatible length reports a collision
//! instead of silently merging elements.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::diagram::{BondOrder, CoxeterMatrix};
use crate::error::{Error, Result};

/// Largest prefix length served by the oracle.
pub const MAX_ORACLE_LENGTH: usize = 12;

/// Grid spacing for matrix identification: comfortably above the accumulated
/// rounding error of short products, far below the separation of distinct
/// elements at desk scale.
const GRID: f64 = 1e-6;

/// Number of elements of each word length `0..=max_len`, by BFS.
pub fn cayley_count(m: &CoxeterMatrix, max_len: usize) -> Result<Vec<u64>> {
    if max_len > MAX_ORACLE_LENGTH {
        return Err(Error::Domain(format!(
            "prefix length {max_len} exceeds the oracle guard {MAX_ORACLE_LENGTH}"
        )));
    }
    let n = m.rank();
    if n == 0 {
        return Ok(std::iter::once(1).chain(std::iter::repeat(0)).take(max_len + 1).collect());
    }

    // bilinear form and the generator matrices (row-major n x n)
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = match m.bond(i, j) {
                BondOrder::Finite(1) => 1.0,
                BondOrder::Finite(o) => -(PI / o as f64).cos(),
                BondOrder::Infinity => -1.0,
            };
        }
    }
    let mut generators = Vec::with_capacity(n);
    for s in 0..n {
        let mut g = identity(n);
        for j in 0..n {
            g[s * n + j] -= 2.0 * gram[s * n + j];
        }
        generators.push(g);
    }

    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let identity_m = identity(n);
    seen.insert(grid_key(&identity_m), 0);
    let mut frontier = vec![identity_m];
    let mut counts = vec![0u64; max_len + 1];
    counts[0] = 1;
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &generators {
                let sw = mat_mul(g, w, n);
                let key = grid_key(&sw);
                match seen.get(&key) {
                    None => {
                        seen.insert(key, len);
                        next.push(sw);
                    }
                    Some(&prev) if prev == len || prev + 2 == len => {}
                    Some(&prev) => {
                        return Err(Error::HashCollision { len_a: prev, len_b: len });
                    }
                }
            }
        }
        counts[len] = next.len() as u64;
        frontier = next;
    }
    Ok(counts)
}

/// Exhaustive enumeration of a finite group by BFS, returning the count of
/// elements of every length (the coefficients of the Poincare polynomial).
/// The element cap keeps runaway inputs desk-scale; infinite groups hit it.
pub fn cayley_count_full(m: &CoxeterMatrix, element_cap: usize) -> Result<Vec<u64>> {
    let n = m.rank();
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = match m.bond(i, j) {
                BondOrder::Finite(1) => 1.0,
                BondOrder::Finite(o) => -(PI / o as f64).cos(),
                BondOrder::Infinity => -1.0,
            };
        }
    }
    let mut generators = Vec::with_capacity(n);
    for s in 0..n {
        let mut g = identity(n);
        for j in 0..n {
            g[s * n + j] -= 2.0 * gram[s * n + j];
        }
        generators.push(g);
    }
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let identity_m = identity(n);
    seen.insert(grid_key(&identity_m), 0);
    let mut frontier = vec![identity_m];
    let mut counts = vec![1u64];
    let mut len = 0usize;
    while !frontier.is_empty() {
        len += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for g in &generators {
                let sw = mat_mul(g, w, n);
                let key = grid_key(&sw);
                match seen.get(&key) {
                    None => {
                        seen.insert(key, len);
                        next.push(sw);
                    }
                    Some(&prev) if prev == len || prev + 2 == len => {}
                    Some(&prev) => {
                        return Err(Error::HashCollision { len_a: prev, len_b: len });
                    }
                }
            }
        }
        if seen.len() > element_cap {
            return Err(Error::Domain(format!(
                "enumeration exceeded {element_cap} elements; the group is too large or infinite"
            )));
        }
        if !next.is_empty() {
            counts.push(next.len() as u64);
        }
        frontier = next;
    }
    Ok(counts)
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn mat_mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

fn grid_key(m: &[f64]) -> Vec<i64> {
    m.iter().map(|&x| (x / GRID).round() as i64).collect()
}
