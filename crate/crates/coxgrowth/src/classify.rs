//! Classification of Coxeter diagrams and their subdiagrams.
//!
//! Connected diagrams are recognized by labeled-graph isomorphism against
//! the finite catalogs of irreducible spherical and Euclidean diagrams
//! rather than through the cosine bilinear form, which would need exact
//! algebraic-number arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::diagram::{BondOrder, CoxeterMatrix, VertexSubset, RANK_GUARD};
use crate::error::{Error, Result};

/// An irreducible spherical (finite) Coxeter group.
///
/// The dihedral normalizations `I2(3) = A2`, `I2(4) = B2`, `I2(6) = G2`
/// are applied on construction, so `I2(m)` only occurs for `m = 5` or
/// `m >= 7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FiniteType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    pub fn dihedral(m: u32) -> FiniteType {
        match m {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            6 => FiniteType::G2,
            _ => FiniteType::I2(m),
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 => 4,
            FiniteType::G2 | FiniteType::I2(_) => 2,
            FiniteType::H3 => 3,
            FiniteType::H4 => 4,
        }
    }

    pub fn exponents(self) -> Vec<u32> {
        match self {
            FiniteType::A(n) => (1..=n).collect(),
            FiniteType::B(n) => (0..n).map(|i| 2 * i + 1).collect(),
            FiniteType::D(n) => {
                let mut e: Vec<u32> = (0..n - 1).map(|i| 2 * i + 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            FiniteType::E6 => vec![1, 4, 5, 7, 8, 11],
            FiniteType::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            FiniteType::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            FiniteType::F4 => vec![1, 5, 7, 11],
            FiniteType::G2 => vec![1, 5],
            FiniteType::H3 => vec![1, 5, 9],
            FiniteType::H4 => vec![1, 11, 19, 29],
            FiniteType::I2(m) => vec![1, m - 1],
        }
    }

    /// Coxeter number `h = 1 + max exponent`.
    pub fn coxeter_number(self) -> u32 {
        1 + self.exponents().into_iter().max().unwrap()
    }

    /// Length of the longest element, `sum of exponents`.
    pub fn max_length(self) -> u32 {
        self.exponents().into_iter().sum()
    }

    /// Group order `prod (m_i + 1)`.
    pub fn order(self) -> BigInt {
        self.exponents()
            .into_iter()
            .fold(BigInt::one(), |acc, m| acc * BigInt::from(m + 1))
    }

    /// Bracket indices of the Poincare polynomial: `m_i + 1`, ascending.
    pub fn series_brackets(self) -> Vec<u32> {
        self.exponents().into_iter().map(|m| m + 1).collect()
    }
}

impl std::fmt::Display for FiniteType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::G2 => write!(f, "G2"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// An irreducible Euclidean (affine) Coxeter diagram; `underlying` names
/// the finite Weyl group whose affinization it is, which carries the
/// exponents used in the Bott product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AffineType {
    /// `I2(inf)`, the infinite dihedral diagram.
    A1t,
    /// Cycle on `n + 1 >= 3` vertices, all bonds 3.
    At(u32),
    Bt(u32),
    Ct(u32),
    Dt(u32),
    E6t,
    E7t,
    E8t,
    F4t,
    G2t,
}

impl AffineType {
    pub fn underlying(self) -> FiniteType {
        match self {
            AffineType::A1t => FiniteType::A(1),
            AffineType::At(n) => FiniteType::A(n),
            AffineType::Bt(n) => FiniteType::B(n),
            // C_n has the same exponents as B_n
            AffineType::Ct(n) => FiniteType::B(n),
            AffineType::Dt(n) => FiniteType::D(n),
            AffineType::E6t => FiniteType::E6,
            AffineType::E7t => FiniteType::E7,
            AffineType::E8t => FiniteType::E8,
            AffineType::F4t => FiniteType::F4,
            AffineType::G2t => FiniteType::G2,
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            AffineType::A1t => 2,
            AffineType::At(n) | AffineType::Bt(n) | AffineType::Ct(n) | AffineType::Dt(n) => n + 1,
            AffineType::E6t => 7,
            AffineType::E7t => 8,
            AffineType::E8t => 9,
            AffineType::F4t => 5,
            AffineType::G2t => 3,
        }
    }
}

impl std::fmt::Display for AffineType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AffineType::A1t => write!(f, "A~1"),
            AffineType::At(n) => write!(f, "A~{n}"),
            AffineType::Bt(n) => write!(f, "B~{n}"),
            AffineType::Ct(n) => write!(f, "C~{n}"),
            AffineType::Dt(n) => write!(f, "D~{n}"),
            AffineType::E6t => write!(f, "E~6"),
            AffineType::E7t => write!(f, "E~7"),
            AffineType::E8t => write!(f, "E~8"),
            AffineType::F4t => write!(f, "F~4"),
            AffineType::G2t => write!(f, "G~2"),
        }
    }
}

/// Verdict for one connected diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConnectedType {
    Finite(FiniteType),
    Affine(AffineType),
    Indefinite,
}

/// Verdict for an arbitrary diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupType {
    /// Every component spherical.
    Finite(Vec<FiniteType>),
    /// Every component spherical or Euclidean, at least one Euclidean.
    Affine { finite: Vec<FiniteType>, affine: Vec<AffineType> },
    /// Connected, indefinite, every connected proper subdiagram spherical.
    Lanner,
    /// Connected, indefinite, every connected proper subdiagram spherical
    /// or Euclidean, at least one Euclidean.
    QuasiLanner,
    OtherInfinite,
}

impl GroupType {
    pub fn is_finite(&self) -> bool {
        matches!(self, GroupType::Finite(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupType::Finite(_) => "finite",
            GroupType::Affine { .. } => "affine",
            GroupType::Lanner => "lanner",
            GroupType::QuasiLanner => "quasi-lanner",
            GroupType::OtherInfinite => "other-infinite",
        }
    }
}

// ---------------------------------------------------------------------------
// labeled-graph isomorphism

fn vertex_signature(m: &CoxeterMatrix, v: usize) -> Vec<BondOrder> {
    let mut sig: Vec<BondOrder> = (0..m.rank())
        .filter(|&w| w != v)
        .map(|w| m.bond(v, w))
        .filter(|b| *b != BondOrder::Finite(2))
        .collect();
    sig.sort_unstable();
    sig
}

/// Labeled-graph isomorphism of Coxeter matrices (backtracking with
/// signature pruning; diagrams here are tiny).
pub fn are_isomorphic(a: &CoxeterMatrix, b: &CoxeterMatrix) -> bool {
    let n = a.rank();
    if n != b.rank() {
        return false;
    }
    let sig_a: Vec<_> = (0..n).map(|v| vertex_signature(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| vertex_signature(b, v)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn extend(
        a: &CoxeterMatrix,
        b: &CoxeterMatrix,
        sig_a: &[Vec<BondOrder>],
        sig_b: &[Vec<BondOrder>],
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = a.rank();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            let compatible = (0..v).all(|u| a.bond(u, v) == b.bond(assignment[u].unwrap(), w));
            if compatible {
                assignment[v] = Some(w);
                used[w] = true;
                if extend(a, b, sig_a, sig_b, assignment, used, v + 1) {
                    return true;
                }
                assignment[v] = None;
                used[w] = false;
            }
        }
        false
    }
    extend(a, b, &sig_a, &sig_b, &mut assignment, &mut used, 0)
}

// ---------------------------------------------------------------------------
// reference diagrams

fn simple(edges: &[(usize, usize)], rank: usize) -> CoxeterMatrix {
    let bonds: Vec<_> = edges.iter().map(|&(i, j)| (i, j, BondOrder::Finite(3))).collect();
    CoxeterMatrix::from_bonds(rank, &bonds).unwrap()
}

fn path_with_labels(labels: &[u32]) -> CoxeterMatrix {
    let bonds: Vec<_> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (i, i + 1, BondOrder::Finite(l)))
        .collect();
    CoxeterMatrix::from_bonds(labels.len() + 1, &bonds).unwrap()
}

fn cycle_all_three(n: usize) -> CoxeterMatrix {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    simple(&edges, n)
}

/// Star with legs of the given vertex counts hanging off vertex 0;
/// all bonds 3.
fn star(legs: &[usize]) -> CoxeterMatrix {
    let rank = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    simple(&edges, rank)
}

fn reference_finite(t: FiniteType) -> CoxeterMatrix {
    match t {
        FiniteType::A(n) => path_with_labels(&vec![3; n as usize - 1]),
        FiniteType::B(n) => {
            let mut labels = vec![3; n as usize - 1];
            labels[n as usize - 2] = 4;
            path_with_labels(&labels)
        }
        FiniteType::D(n) => star(&[1, 1, n as usize - 3]),
        FiniteType::E6 => star(&[1, 2, 2]),
        FiniteType::E7 => star(&[1, 2, 3]),
        FiniteType::E8 => star(&[1, 2, 4]),
        FiniteType::F4 => path_with_labels(&[3, 4, 3]),
        FiniteType::G2 => path_with_labels(&[6]),
        FiniteType::H3 => path_with_labels(&[5, 3]),
        FiniteType::H4 => path_with_labels(&[5, 3, 3]),
        FiniteType::I2(m) => path_with_labels(&[m]),
    }
}

fn reference_affine(t: AffineType) -> CoxeterMatrix {
    match t {
        AffineType::A1t => {
            CoxeterMatrix::from_bonds(2, &[(0, 1, BondOrder::Infinity)]).unwrap()
        }
        AffineType::At(n) => cycle_all_three(n as usize + 1),
        AffineType::Bt(n) => {
            // fork of two leaves, then a path ending in a 4-edge
            let n = n as usize;
            let mut bonds: Vec<(usize, usize, BondOrder)> =
                vec![(0, 2, BondOrder::Finite(3)), (1, 2, BondOrder::Finite(3))];
            for v in 2..n - 1 {
                bonds.push((v, v + 1, BondOrder::Finite(3)));
            }
            bonds.push((n - 1, n, BondOrder::Finite(4)));
            CoxeterMatrix::from_bonds(n + 1, &bonds).unwrap()
        }
        AffineType::Ct(n) => {
            let n = n as usize;
            let mut labels = vec![3; n];
            labels[0] = 4;
            labels[n - 1] = 4;
            path_with_labels(&labels)
        }
        AffineType::Dt(n) => {
            let n = n as usize;
            let mut bonds: Vec<(usize, usize, BondOrder)> =
                vec![(0, 2, BondOrder::Finite(3)), (1, 2, BondOrder::Finite(3))];
            for v in 2..n - 2 {
                bonds.push((v, v + 1, BondOrder::Finite(3)));
            }
            bonds.push((n - 2, n - 1, BondOrder::Finite(3)));
            bonds.push((n - 2, n, BondOrder::Finite(3)));
            CoxeterMatrix::from_bonds(n + 1, &bonds).unwrap()
        }
        AffineType::E6t => star(&[2, 2, 2]),
        AffineType::E7t => star(&[1, 3, 3]),
        AffineType::E8t => star(&[1, 2, 5]),
        AffineType::F4t => path_with_labels(&[3, 4, 3, 3]),
        AffineType::G2t => path_with_labels(&[6, 3]),
    }
}

fn finite_candidates(rank: usize) -> Vec<FiniteType> {
    let n = rank as u32;
    let mut c = Vec::new();
    match rank {
        0 | 1 | 2 => {}
        3 => c.extend([FiniteType::A(3), FiniteType::B(3), FiniteType::H3]),
        4 => c.extend([
            FiniteType::A(4),
            FiniteType::B(4),
            FiniteType::D(4),
            FiniteType::F4,
            FiniteType::H4,
        ]),
        _ => {
            c.extend([FiniteType::A(n), FiniteType::B(n), FiniteType::D(n)]);
            match rank {
                6 => c.push(FiniteType::E6),
                7 => c.push(FiniteType::E7),
                8 => c.push(FiniteType::E8),
                _ => {}
            }
        }
    }
    c
}

fn affine_candidates(rank: usize) -> Vec<AffineType> {
    let n = rank as u32;
    let mut c = Vec::new();
    match rank {
        0 | 1 | 2 => {}
        3 => c.extend([AffineType::At(2), AffineType::Ct(2), AffineType::G2t]),
        4 => c.extend([AffineType::At(3), AffineType::Bt(3), AffineType::Ct(3)]),
        5 => c.extend([
            AffineType::At(4),
            AffineType::Bt(4),
            AffineType::Ct(4),
            AffineType::Dt(4),
            AffineType::F4t,
        ]),
        _ => {
            c.extend([AffineType::At(n - 1), AffineType::Bt(n - 1), AffineType::Ct(n - 1)]);
            c.push(AffineType::Dt(n - 1));
            match rank {
                7 => c.push(AffineType::E6t),
                8 => c.push(AffineType::E7t),
                9 => c.push(AffineType::E8t),
                _ => {}
            }
        }
    }
    c
}

/// Classify one connected diagram. Errors on disconnected input; singletons
/// count as connected.
pub fn classify_connected(m: &CoxeterMatrix) -> Result<ConnectedType> {
    if !m.is_connected() || m.rank() == 0 {
        return Err(Error::Domain("classify_connected needs one connected diagram".into()));
    }
    match m.rank() {
        1 => return Ok(ConnectedType::Finite(FiniteType::A(1))),
        2 => {
            return Ok(match m.bond(0, 1) {
                BondOrder::Infinity => ConnectedType::Affine(AffineType::A1t),
                BondOrder::Finite(o) => ConnectedType::Finite(FiniteType::dihedral(o)),
            })
        }
        _ => {}
    }
    // Edge and label census cuts candidate checks to near nothing.
    let edge_count = m.bonds().len();
    if edge_count > m.rank() {
        return Ok(ConnectedType::Indefinite); // more than one cycle
    }
    for t in finite_candidates(m.rank()) {
        if are_isomorphic(m, &reference_finite(t)) {
            return Ok(ConnectedType::Finite(t));
        }
    }
    for t in affine_candidates(m.rank()) {
        if are_isomorphic(m, &reference_affine(t)) {
            return Ok(ConnectedType::Affine(t));
        }
    }
    Ok(ConnectedType::Indefinite)
}

/// Classify the components of an (arbitrary) diagram; `None` entries never
/// occur. Convenience over [`classify_connected`].
pub fn classify_components(m: &CoxeterMatrix) -> Vec<ConnectedType> {
    m.connected_components()
        .into_iter()
        .map(|c| classify_connected(&m.induced_submatrix(c).unwrap()).unwrap())
        .collect()
}

/// Component types when every component is spherical, else `None`.
pub fn finite_component_types(m: &CoxeterMatrix) -> Option<Vec<FiniteType>> {
    let mut out = Vec::new();
    for c in m.connected_components() {
        match classify_connected(&m.induced_submatrix(c).unwrap()).unwrap() {
            ConnectedType::Finite(t) => out.push(t),
            _ => return None,
        }
    }
    Some(out)
}

/// Full trichotomy for an arbitrary diagram.
///
/// For connected indefinite diagrams, the Lanner / quasi-Lanner condition on
/// every connected proper subdiagram only needs the one-vertex-deleted
/// subdiagrams: sphericity and the spherical-or-Euclidean property are
/// hereditary under taking connected subdiagrams.
pub fn group_type(m: &CoxeterMatrix) -> GroupType {
    let comps = classify_components(m);
    let mut finite = Vec::new();
    let mut affine = Vec::new();
    let mut indefinite = 0usize;
    for c in &comps {
        match c {
            ConnectedType::Finite(t) => finite.push(*t),
            ConnectedType::Affine(t) => affine.push(*t),
            ConnectedType::Indefinite => indefinite += 1,
        }
    }
    if indefinite == 0 {
        return if affine.is_empty() {
            GroupType::Finite(finite)
        } else {
            GroupType::Affine { finite, affine }
        };
    }
    if comps.len() > 1 {
        return GroupType::OtherInfinite;
    }
    let mut saw_euclidean = false;
    for v in 0..m.rank() {
        let sub = m
            .induced_submatrix(m.full_set().without(v))
            .expect("one-deleted subset is valid");
        for c in classify_components(&sub) {
            match c {
                ConnectedType::Finite(_) => {}
                ConnectedType::Affine(_) => saw_euclidean = true,
                ConnectedType::Indefinite => return GroupType::OtherInfinite,
            }
        }
    }
    if saw_euclidean {
        GroupType::QuasiLanner
    } else {
        GroupType::Lanner
    }
}

/// True iff the Coxeter group is finite.
pub fn is_finite(m: &CoxeterMatrix) -> bool {
    group_type(m).is_finite()
}

/// Memoizing per-subset classifier over one parent matrix.
pub struct SubsetClassifier<'a> {
    matrix: &'a CoxeterMatrix,
    cache: HashMap<u32, Option<Vec<FiniteType>>>,
}

impl<'a> SubsetClassifier<'a> {
    pub fn new(matrix: &'a CoxeterMatrix) -> Self {
        SubsetClassifier { matrix, cache: HashMap::new() }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.matrix
    }

    /// Component types of the induced subdiagram when finite, else `None`.
    pub fn finite_types(&mut self, x: VertexSubset) -> Option<&Vec<FiniteType>> {
        let mask = x.mask();
        if !self.cache.contains_key(&mask) {
            let sub = self.matrix.induced_submatrix(x).unwrap();
            self.cache.insert(mask, finite_component_types(&sub));
        }
        self.cache.get(&mask).unwrap().as_ref()
    }

    pub fn is_finite_subset(&mut self, x: VertexSubset) -> bool {
        self.finite_types(x).is_some()
    }
}

/// All subsets X (including the empty set and, for finite groups, the full
/// set) whose special subgroup is finite, in increasing cardinality order.
pub fn nerve(m: &CoxeterMatrix) -> Result<Vec<VertexSubset>> {
    if m.rank() > RANK_GUARD {
        return Err(Error::RankGuard { rank: m.rank(), max: RANK_GUARD });
    }
    let mut cls = SubsetClassifier::new(m);
    let full = m.full_set();
    let mut out: Vec<VertexSubset> = m
        .proper_subsets()?
        .filter(|&x| cls.is_finite_subset(x))
        .collect();
    if cls.is_finite_subset(full) {
        out.push(full);
    }
    Ok(out)
}

/// The poset of infinite special subgroups: all proper subsets with infinite
/// group, plus the full set at level 0. The level of an element is the
/// length of the longest chain of strict inclusions down from the full set.
#[derive(Clone, Debug)]
pub struct SubgroupPoset {
    rank: usize,
    /// (subset, level) sorted by descending cardinality, full set first.
    pub elements: Vec<(VertexSubset, u32)>,
    /// Number of infinite proper special subgroups.
    pub inf: usize,
    /// Element counts per level; level 0 is the full set alone.
    pub inf_per_level: Vec<usize>,
    /// Maximal level (the group is `k`-terminal).
    pub k: u32,
}

impl SubgroupPoset {
    pub fn level_of(&self, x: VertexSubset) -> Option<u32> {
        self.elements.iter().find(|(e, _)| *e == x).map(|&(_, l)| l)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Build the poset of infinite special subgroups. Errors for finite groups.
pub fn infinite_poset(m: &CoxeterMatrix) -> Result<SubgroupPoset> {
    if m.rank() > RANK_GUARD {
        return Err(Error::RankGuard { rank: m.rank(), max: RANK_GUARD });
    }
    if is_finite(m) {
        return Err(Error::Domain("the group is finite; the infinite poset is empty".into()));
    }
    let n = m.rank();
    let full = m.full_set().mask();
    let mut cls = SubsetClassifier::new(m);
    let mut in_poset = vec![false; 1 << n];
    for mask in 0..(1u32 << n) {
        if cls.is_finite_subset(VertexSubset::new(mask, n)) {
            continue;
        }
        in_poset[mask as usize] = true;
    }
    // longest chain from the top, by descending cardinality;
    // sup[mask] = max level among poset elements containing mask
    let mut order: Vec<u32> = (0..(1u32 << n)).collect();
    order.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut level = vec![0u32; 1 << n];
    let mut sup = vec![-1i64; 1 << n];
    for &mask in &order {
        let mut best = -1i64;
        for j in 0..n {
            if mask >> j & 1 == 0 {
                best = best.max(sup[(mask | 1 << j) as usize]);
            }
        }
        if in_poset[mask as usize] {
            level[mask as usize] = if mask == full { 0 } else { (best + 1) as u32 };
            best = best.max(level[mask as usize] as i64);
        }
        sup[mask as usize] = best;
    }
    let mut elements: Vec<(VertexSubset, u32)> = (0..(1u32 << n))
        .filter(|&mask| in_poset[mask as usize])
        .map(|mask| (VertexSubset::new(mask, n), level[mask as usize]))
        .collect();
    elements.sort_by_key(|&(s, _)| (std::cmp::Reverse(s.len()), s.mask()));
    let k = elements.iter().map(|&(_, l)| l).max().unwrap_or(0);
    let mut inf_per_level = vec![0usize; k as usize + 1];
    for &(_, l) in &elements {
        inf_per_level[l as usize] += 1;
    }
    Ok(SubgroupPoset {
        rank: n,
        inf: elements.len() - 1,
        elements,
        inf_per_level,
        k,
    })
}

/// The JSON verdict for a diagram: type, component names, and (for
/// infinite groups) the poset summary `inf`, `k`, `branch`.
pub fn classify_verdict_json(m: &CoxeterMatrix) -> Result<serde_json::Value> {
    let gt = group_type(m);
    let components: Vec<String> = classify_components(m)
        .iter()
        .map(|c| match c {
            ConnectedType::Finite(t) => t.to_string(),
            ConnectedType::Affine(t) => t.to_string(),
            ConnectedType::Indefinite => "indefinite".to_string(),
        })
        .collect();
    let (inf, k, branch) = if gt.is_finite() {
        (0, 0, None)
    } else {
        let poset = infinite_poset(m)?;
        let (k, branch) = terminal_class(m)?;
        (poset.inf, k, branch)
    };
    Ok(serde_json::json!({
        "type": gt.name(),
        "components": components,
        "inf": inf,
        "k": k,
        "branch": branch,
    }))
}

/// Position of an infinite Coxeter group in the recursive hierarchy of
/// subsets `I^n_1`, `I^n_2`: affine groups start branch 1, Lanner groups
/// branch 2, and each further level requires every proper special subgroup
/// to sit low enough in the hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HierarchyClass {
    Finite,
    Level(u32, u8),
    Unclassified,
}

fn hierarchy_class(
    m: &CoxeterMatrix,
    mask: u32,
    memo: &mut HashMap<u32, HierarchyClass>,
) -> HierarchyClass {
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    let n = m.rank();
    let sub = m.induced_submatrix(VertexSubset::new(mask, n)).unwrap();
    let class = match group_type(&sub) {
        GroupType::Finite(_) => HierarchyClass::Finite,
        GroupType::Affine { .. } => HierarchyClass::Level(0, 1),
        GroupType::Lanner => HierarchyClass::Level(0, 2),
        _ => {
            let mut classes = Vec::new();
            let mut unclassified = false;
            // proper submasks of mask
            let mut sub_mask = (mask.wrapping_sub(1)) & mask;
            loop {
                match hierarchy_class(m, sub_mask, memo) {
                    HierarchyClass::Finite => {}
                    HierarchyClass::Unclassified => unclassified = true,
                    HierarchyClass::Level(l, b) => classes.push((l, b)),
                }
                if sub_mask == 0 {
                    break;
                }
                sub_mask = (sub_mask.wrapping_sub(1)) & mask;
            }
            if unclassified || classes.is_empty() {
                HierarchyClass::Unclassified
            } else {
                let top = classes.iter().map(|&(l, _)| l).max().unwrap();
                let n0 = top + 1;
                let branch1 = classes.iter().any(|&(l, b)| l == n0 - 1 && b == 1)
                    && classes.iter().all(|&(l, b)| l <= n0.saturating_sub(2) || (l, b) == (n0 - 1, 1));
                let branch2 = classes.iter().any(|&(l, b)| l == n0 - 1 && b == 2);
                if branch1 {
                    HierarchyClass::Level(n0, 1)
                } else if branch2 {
                    HierarchyClass::Level(n0, 2)
                } else {
                    HierarchyClass::Unclassified
                }
            }
        }
    };
    memo.insert(mask, class);
    class
}

/// The k-terminality of an infinite group together with its branch in the
/// hierarchy (`1` when the deepest chains end in affine groups, `2` for
/// Lanner ones, `None` when neither recursive condition holds).
pub fn terminal_class(m: &CoxeterMatrix) -> Result<(u32, Option<u8>)> {
    let poset = infinite_poset(m)?;
    let mut memo = HashMap::new();
    let class = hierarchy_class(m, m.full_set().mask(), &mut memo);
    match class {
        HierarchyClass::Level(n, b) if n == poset.k => Ok((poset.k, Some(b))),
        _ => Ok((poset.k, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn m(text: &str) -> CoxeterMatrix {
        parse_diagram(text).unwrap()
    }

    #[test]
    fn paths_classify() {
        let a4 = m("vertices 4\nedge 1 2\nedge 2 3\nedge 3 4");
        assert_eq!(classify_connected(&a4).unwrap(), ConnectedType::Finite(FiniteType::A(4)));
        let h4 = m("vertices 4\nedge 1 2 5\nedge 2 3\nedge 3 4");
        assert_eq!(classify_connected(&h4).unwrap(), ConnectedType::Finite(FiniteType::H4));
        let f4 = m("vertices 4\nedge 1 2\nedge 2 3 4\nedge 3 4");
        assert_eq!(classify_connected(&f4).unwrap(), ConnectedType::Finite(FiniteType::F4));
    }

    #[test]
    fn infinite_bond_is_affine_a1() {
        let a1t = m("vertices 2\nedge 1 2 inf");
        assert_eq!(classify_connected(&a1t).unwrap(), ConnectedType::Affine(AffineType::A1t));
    }

    #[test]
    fn triangles() {
        let eq = m("vertices 3\nedge 1 2\nedge 2 3\nedge 1 3");
        assert_eq!(classify_connected(&eq).unwrap(), ConnectedType::Affine(AffineType::At(2)));
        let hyp = m("vertices 3\nedge 1 2 2\nedge 2 3\nedge 1 3 7");
        assert_eq!(classify_connected(&hyp).unwrap(), ConnectedType::Indefinite);
        assert_eq!(group_type(&hyp), GroupType::Lanner);
    }

    #[test]
    fn dihedral_normalization() {
        assert_eq!(FiniteType::dihedral(3), FiniteType::A(2));
        assert_eq!(FiniteType::dihedral(4), FiniteType::B(2));
        assert_eq!(FiniteType::dihedral(6), FiniteType::G2);
        assert_eq!(FiniteType::dihedral(7), FiniteType::I2(7));
    }

    #[test]
    fn exponent_table_consistency() {
        assert_eq!(FiniteType::A(2).order(), BigInt::from(6));
        assert_eq!(FiniteType::H4.max_length(), 60);
        assert_eq!(FiniteType::H4.coxeter_number(), 30);
        assert_eq!(FiniteType::E8.max_length(), 120);
        assert_eq!(FiniteType::D(4).exponents(), vec![1, 3, 3, 5]);
        assert_eq!(FiniteType::B(3).series_brackets(), vec![2, 4, 6]);
    }

    #[test]
    fn euclidean_recognizers() {
        assert_eq!(
            classify_connected(&path_with_labels(&[4, 3, 4])).unwrap(),
            ConnectedType::Affine(AffineType::Ct(3))
        );
        assert_eq!(
            classify_connected(&path_with_labels(&[3, 4, 3, 3])).unwrap(),
            ConnectedType::Affine(AffineType::F4t)
        );
        assert_eq!(
            classify_connected(&path_with_labels(&[6, 3])).unwrap(),
            ConnectedType::Affine(AffineType::G2t)
        );
        assert_eq!(
            classify_connected(&star(&[1, 1, 1, 1])).unwrap(),
            ConnectedType::Affine(AffineType::Dt(4))
        );
        assert_eq!(
            classify_connected(&star(&[2, 2, 2])).unwrap(),
            ConnectedType::Affine(AffineType::E6t)
        );
        assert_eq!(
            classify_connected(&cycle_all_three(5)).unwrap(),
            ConnectedType::Affine(AffineType::At(4))
        );
        // reversed F~4 path is the same diagram
        assert_eq!(
            classify_connected(&path_with_labels(&[3, 3, 4, 3])).unwrap(),
            ConnectedType::Affine(AffineType::F4t)
        );
    }

    #[test]
    fn group_type_trichotomy() {
        // [6,3,3] path: quasi-Lanner
        let ql = m("vertices 4\nedge 1 2 6\nedge 2 3\nedge 3 4");
        assert_eq!(group_type(&ql), GroupType::QuasiLanner);
        // [5,3,5] path: Lanner
        let l = m("vertices 4\nedge 1 2 5\nedge 2 3\nedge 3 4 5");
        assert_eq!(group_type(&l), GroupType::Lanner);
        // (2,3,inf) triangle: quasi-Lanner
        let t = m("vertices 3\nedge 1 2\nedge 2 3 inf");
        assert_eq!(group_type(&t), GroupType::QuasiLanner);
        // a 5-path with two infinite bonds is neither
        let o = m("vertices 4\nedge 1 2 inf\nedge 2 3 inf\nedge 3 4");
        assert_eq!(group_type(&o), GroupType::OtherInfinite);
        // empty diagram: trivial group, finite
        let e = CoxeterMatrix::from_bonds(0, &[]).unwrap();
        assert!(is_finite(&e));
    }

    #[test]
    fn nerve_of_finite_group_is_everything() {
        let h4 = m("vertices 4\nedge 1 2 5\nedge 2 3\nedge 3 4");
        assert!(is_finite(&h4));
        assert_eq!(nerve(&h4).unwrap().len(), 16);
    }

    #[test]
    fn nerve_of_ql_drops_euclidean_subsets() {
        // [6,3,3]: only the G~2 triple {1,2,3} and the full set are infinite
        let ql = m("vertices 4\nedge 1 2 6\nedge 2 3\nedge 3 4");
        let nerve = nerve(&ql).unwrap();
        assert_eq!(nerve.len(), 16 - 2);
        let poset = infinite_poset(&ql).unwrap();
        assert_eq!(poset.inf, 1);
        assert_eq!(poset.k, 1);
    }

    #[test]
    fn lanner_poset_is_top_only() {
        let l = m("vertices 4\nedge 1 2 5\nedge 2 3\nedge 3 4 5");
        let poset = infinite_poset(&l).unwrap();
        assert_eq!(poset.inf, 0);
        assert_eq!(poset.k, 0);
        assert_eq!(terminal_class(&l).unwrap(), (0, Some(2)));
    }

    #[test]
    fn affine_is_zero_terminal_branch_one() {
        let a2t = m("vertices 3\nedge 1 2\nedge 2 3\nedge 1 3");
        assert_eq!(terminal_class(&a2t).unwrap(), (0, Some(1)));
    }

    #[test]
    fn quasi_lanner_is_one_terminal_branch_one() {
        let ql = m("vertices 4\nedge 1 2 6\nedge 2 3\nedge 3 4");
        assert_eq!(terminal_class(&ql).unwrap(), (1, Some(1)));
    }

    #[test]
    fn classification_invariant_under_relabeling() {
        let diagrams = [
            reference_finite(FiniteType::E7),
            reference_affine(AffineType::Bt(4)),
            reference_finite(FiniteType::D(6)),
            reference_affine(AffineType::F4t),
        ];
        let mut perm_state = 12345u64;
        for d in &diagrams {
            let base = classify_connected(d).unwrap();
            let n = d.rank();
            for _ in 0..50 {
                // Fisher-Yates with a small LCG
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm_state =
                        perm_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let j = (perm_state >> 33) as usize % (i + 1);
                    perm.swap(i, j);
                }
                let bonds: Vec<_> = d
                    .bonds()
                    .into_iter()
                    .map(|(i, j, b)| (perm[i], perm[j], b))
                    .collect();
                let relabeled = CoxeterMatrix::from_bonds(n, &bonds).unwrap();
                assert_eq!(classify_connected(&relabeled).unwrap(), base);
            }
        }
    }
}
