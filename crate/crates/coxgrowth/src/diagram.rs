//! Coxeter matrices, vertex subsets, and the diagram text/JSON formats.
//!
//! A Coxeter system is described entirely by its symmetric matrix of bond
//! orders `m[s][t]` with `m[s][s] = 1` and `m[s][t] >= 2` off the diagonal.
//! The diagram view draws an edge wherever `m[s][t] >= 3`; pairs with bond
//! order 2 commute and are not joined.
//!
//! Text format (line oriented, UTF-8, `#` starts a comment):
//!
//! ```text
//! vertices 4
//! edge 1 2 6
//! edge 2 3        # omitted label means 3
//! edge 3 4 inf
//! ```
//!
//! Vertices are 1-based in the text and JSON formats and 0-based in the API.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which subset enumeration is allowed (2^24 subsets).
pub const RANK_GUARD: usize = 24;

/// A single entry of a Coxeter matrix: a finite order or infinity.
///
/// Infinity is a distinguished variant, never a sentinel integer, so no
/// arithmetic can be performed on it by accident.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondOrder {
    Finite(u32),
    Infinity,
}

impl BondOrder {
    pub fn is_infinite(self) -> bool {
        matches!(self, BondOrder::Infinity)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            BondOrder::Finite(m) => Some(m),
            BondOrder::Infinity => None,
        }
    }
}

impl fmt::Display for BondOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BondOrder::Finite(m) => write!(f, "{m}"),
            BondOrder::Infinity => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix of bond orders; the single source of truth for a
/// Coxeter system. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<BondOrder>,
}

impl CoxeterMatrix {
    /// Build a matrix of the given rank from the off-diagonal bonds listed as
    /// `(i, j, order)` with 0-based `i != j`. Unlisted pairs get order 2.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, BondOrder)]) -> Result<Self> {
        let mut m = CoxeterMatrix {
            rank,
            entries: vec![BondOrder::Finite(2); rank * rank],
        };
        for i in 0..rank {
            m.entries[i * rank + i] = BondOrder::Finite(1);
        }
        for &(i, j, order) in bonds {
            if i >= rank || j >= rank {
                return Err(Error::Validation(format!(
                    "bond ({i}, {j}) out of range for rank {rank}"
                )));
            }
            if i == j {
                return Err(Error::Validation(format!("bond ({i}, {i}) joins a vertex to itself")));
            }
            if let BondOrder::Finite(o) = order {
                if o < 2 {
                    return Err(Error::Validation(format!(
                        "off-diagonal bond order {o} < 2 between {i} and {j}"
                    )));
                }
            }
            let prev = m.entries[i * rank + j];
            if prev != BondOrder::Finite(2) && prev != order {
                return Err(Error::Validation(format!(
                    "contradictory bond orders between {i} and {j}: {prev} and {order}"
                )));
            }
            m.entries[i * rank + j] = order;
            m.entries[j * rank + i] = order;
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> BondOrder {
        self.entries[i * self.rank + j]
    }

    /// Off-diagonal pairs `(i, j, order)` with `i < j` and order != 2,
    /// in lexicographic order.
    pub fn bonds(&self) -> Vec<(usize, usize, BondOrder)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let b = self.bond(i, j);
                if b != BondOrder::Finite(2) {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    /// The full vertex set as a subset.
    pub fn full_set(&self) -> VertexSubset {
        VertexSubset::full(self.rank)
    }

    /// Principal submatrix on the vertices of `x`, preserving index order.
    pub fn induced_submatrix(&self, x: VertexSubset) -> Result<CoxeterMatrix> {
        if x.rank() != self.rank {
            return Err(Error::Validation(format!(
                "subset over rank {} applied to matrix of rank {}",
                x.rank(),
                self.rank
            )));
        }
        let verts: Vec<usize> = x.iter().collect();
        let k = verts.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in &verts {
            for &j in &verts {
                entries.push(self.bond(i, j));
            }
        }
        Ok(CoxeterMatrix { rank: k, entries })
    }

    /// Connected components of the bond graph (edges where the order is > 2),
    /// in ascending order of smallest member.
    pub fn connected_components(&self) -> Vec<VertexSubset> {
        let n = self.rank;
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut mask = 0u32;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                mask |= 1 << v;
                for w in 0..n {
                    if !seen[w] && w != v && self.bond(v, w) != BondOrder::Finite(2) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(VertexSubset::new(mask, n));
        }
        comps
    }

    /// True when the bond graph is connected; singletons and the empty
    /// diagram count as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Every proper subset of the vertex set exactly once, including the
    /// empty set, in increasing cardinality order.
    pub fn proper_subsets(&self) -> Result<impl Iterator<Item = VertexSubset> + '_> {
        if self.rank > RANK_GUARD {
            return Err(Error::RankGuard {
                rank: self.rank,
                max: RANK_GUARD,
            });
        }
        let n = self.rank;
        let full = VertexSubset::full(n).mask();
        let mut masks: Vec<u32> = (0..(1u32 << n)).filter(|&m| m != full).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Ok(masks.into_iter().map(move |m| VertexSubset::new(m, n)))
    }

    /// Canonical text rendering; `parse_diagram` of the output reproduces
    /// the same matrix.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.rank);
        for (i, j, b) in self.bonds() {
            s.push_str(&format!("edge {} {} {}\n", i + 1, j + 1, b));
        }
        s
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            rank: self.rank,
            bonds: self
                .bonds()
                .into_iter()
                .map(|(i, j, b)| [i as u32 + 1, j as u32 + 1, b.finite().unwrap_or(0)])
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let bonds: Vec<(usize, usize, BondOrder)> = json
            .bonds
            .iter()
            .map(|&[i, j, l]| {
                if i == 0 || j == 0 {
                    return Err(Error::Validation("JSON bond indices are 1-based".into()));
                }
                let order = if l == 0 { BondOrder::Infinity } else { BondOrder::Finite(l) };
                Ok((i as usize - 1, j as usize - 1, order))
            })
            .collect::<Result<_>>()?;
        CoxeterMatrix::from_bonds(json.rank, &bonds)
    }
}

/// JSON equivalent of the diagram text format: 1-based vertex indices and
/// bond label 0 encoding infinity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub rank: usize,
    pub bonds: Vec<[u32; 3]>,
}

/// Subset of the vertex set `{0, .., rank-1}` of a parent matrix, stored as
/// a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    mask: u32,
    rank: usize,
}

impl VertexSubset {
    pub fn new(mask: u32, rank: usize) -> Self {
        debug_assert!(rank <= RANK_GUARD);
        debug_assert_eq!(mask & !mask_full(rank), 0);
        VertexSubset { mask, rank }
    }

    pub fn empty(rank: usize) -> Self {
        VertexSubset { mask: 0, rank }
    }

    pub fn full(rank: usize) -> Self {
        VertexSubset { mask: mask_full(rank), rank }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.mask >> v & 1 == 1
    }

    pub fn is_subset_of(self, other: VertexSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn without(self, v: usize) -> VertexSubset {
        VertexSubset::new(self.mask & !(1 << v), self.rank)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mask = self.mask;
        (0..self.rank).filter(move |&v| mask >> v & 1 == 1)
    }
}

fn mask_full(rank: usize) -> u32 {
    if rank == 32 {
        u32::MAX
    } else {
        (1u32 << rank) - 1
    }
}

/// Parse the line-oriented diagram text format.
pub fn parse_diagram(text: &str) -> Result<CoxeterMatrix> {
    let mut rank: Option<usize> = None;
    let mut bonds: Vec<(usize, usize, BondOrder)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("vertices") => {
                if rank.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate `vertices` line".into(),
                    });
                }
                let n: usize = words
                    .next()
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "missing vertex count".into() })?
                    .parse()
                    .map_err(|_| Error::Parse { line: line_no, msg: "bad vertex count".into() })?;
                if words.next().is_some() {
                    return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
                }
                rank = Some(n);
            }
            Some("edge") => {
                let rank = rank.ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "`edge` before `vertices`".into(),
                })?;
                let mut idx_arg = |what: &str| -> Result<usize> {
                    let w = words.next().ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: format!("missing {what}"),
                    })?;
                    let v: usize = w.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad {what} {w:?}"),
                    })?;
                    if v == 0 || v > rank {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("vertex {v} out of range 1..={rank}"),
                        });
                    }
                    Ok(v - 1)
                };
                let i = idx_arg("first vertex")?;
                let j = idx_arg("second vertex")?;
                let label = match words.next() {
                    None => BondOrder::Finite(3),
                    Some("inf") => BondOrder::Infinity,
                    Some(w) => {
                        let l: u32 = w.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad edge label {w:?}"),
                        })?;
                        BondOrder::Finite(l)
                    }
                };
                if words.next().is_some() {
                    return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
                }
                bonds.push((i, j, label));
            }
            Some(tok) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown directive {tok:?}"),
                })
            }
            None => unreachable!(),
        }
    }
    let rank = rank.ok_or_else(|| Error::Parse { line: 0, msg: "missing `vertices` line".into() })?;
    CoxeterMatrix::from_bonds(rank, &bonds)
}
