//! Poincare series of Coxeter groups.
//!
//! The series `W(t) = sum_(g in W) t^(l(g))` is computed exactly:
//!
//! - finite groups through the exponents, `W(t) = prod [m_i + 1]`;
//! - affine groups through the Bott product,
//!   `W(t) = W_fin(t) prod 1/(1 - t^(m_i))`;
//! - arbitrary infinite groups through the Steinberg recursion
//!   `1/W(1/t) = sum over finite special subgroups of eps(X)/W_X(t)`,
//!   brought to the common denominator `Virg(D)`, the LCM of the finite
//!   subgroup polynomials.
//!
//! The result carries three equal representations: the virgin fraction
//! (numerator `Virg(D)`), the reduced fraction, and the `[n]`-complete
//! fraction whose numerator is a pure product of brackets.

use num_bigint::BigInt;

use crate::classify::{
    classify_components, group_type, AffineType, ConnectedType, FiniteType, GroupType,
    SubsetClassifier,
};
use crate::diagram::{BondOrder, CoxeterMatrix, VertexSubset, RANK_GUARD};
use crate::error::{Error, Result};
use crate::polyalg::{
    bracket, bracket_poly, exact_bracket_factorization, factor_into_cyclotomics, to_bracket_form,
    BracketFactorization, CycloMultiset, IntPolynomial, RationalFunction,
};

/// Poincare polynomial of a finite group given by its component types:
/// the product over all components of `prod_i [m_i + 1]`.
pub fn finite_growth(types: &[FiniteType]) -> IntPolynomial {
    let mut p = IntPolynomial::one();
    for t in types {
        for b in t.series_brackets() {
            p = &p * &bracket_poly(b);
        }
    }
    p
}

/// Finite-subgroup Poincare polynomial as a cyclotomic multiset.
fn finite_growth_multiset(types: &[FiniteType]) -> CycloMultiset {
    let mut c = CycloMultiset::one();
    for t in types {
        for b in t.series_brackets() {
            c = c.mul(&CycloMultiset::from_bracket(b));
        }
    }
    c
}

/// Bott's product for affine groups (finite components included as plain
/// polynomial factors): each Euclidean component of underlying finite type
/// with exponents `m_i` contributes `W_fin(t) prod 1/(1 - t^(m_i))`.
pub fn affine_growth(finite: &[FiniteType], affine: &[AffineType]) -> RationalFunction {
    let mut num = finite_growth(finite);
    let mut den = IntPolynomial::one();
    for a in affine {
        let underlying = a.underlying();
        num = &num * &finite_growth(&[underlying]);
        for m in underlying.exponents() {
            let factor = &IntPolynomial::one() - &IntPolynomial::monomial(m as usize);
            den = &den * &factor;
        }
    }
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// Growth of any diagram whose components are all spherical or Euclidean.
pub fn affine_growth_of(m: &CoxeterMatrix) -> Result<RationalFunction> {
    let mut finite = Vec::new();
    let mut affine = Vec::new();
    for c in classify_components(m) {
        match c {
            ConnectedType::Finite(t) => finite.push(t),
            ConnectedType::Affine(t) => affine.push(t),
            ConnectedType::Indefinite => {
                return Err(Error::Domain("diagram has an indefinite component".into()))
            }
        }
    }
    Ok(affine_growth(&finite, &affine))
}

/// The `[n]`-complete form: numerator a pure product of brackets `[n_i]`.
#[derive(Clone, Debug)]
pub struct CompleteForm {
    /// Bracket indices `n_i`, descending.
    pub brackets: Vec<u32>,
    /// Denominator, normalized to positive leading coefficient.
    pub denominator: IntPolynomial,
    /// `W = sign * (prod [n_i]) / denominator`.
    pub sign: i8,
    /// Number of bracket factors.
    pub m: usize,
    /// `(deg R, deg S)` of this form.
    pub degrees: (usize, usize),
}

impl CompleteForm {
    pub fn numerator(&self) -> IntPolynomial {
        self.brackets.iter().fold(IntPolynomial::one(), |p, &n| &p * &bracket_poly(n))
    }
}

/// Everything the Steinberg computation produces for one diagram.
#[derive(Clone, Debug)]
pub struct GrowthResult {
    pub group_type: GroupType,
    pub rank: usize,
    /// Reduced fraction, canonical (denominator leading coefficient > 0).
    pub reduced: RationalFunction,
    /// `Virg(D)` as a cyclotomic multiset (for finite groups, the multiset
    /// of the Poincare polynomial itself).
    pub virgin_numerator: CycloMultiset,
    /// Denominator paired with `Virg(D)`: `W = virgin / raw_denominator`
    /// exactly, in the orientation the recursion produces.
    pub raw_denominator: IntPolynomial,
    /// `Q(t)` of `1/W(1/t) = Q(t)/Virg(t)`; its low coefficients are the
    /// high denominator coefficients of `W`.
    pub raw_q: IntPolynomial,
    /// Factorization of the reduced numerator into brackets and primed
    /// factors (display form).
    pub reduced_factors: BracketFactorization,
    /// `reduced = reduced_sign * (expand(reduced_factors) / reduced.den())`.
    pub reduced_sign: i8,
    pub complete: CompleteForm,
}

impl GrowthResult {
    /// `(deg R, deg S)` of the reduced form.
    pub fn reduced_degrees(&self) -> (usize, usize) {
        (
            self.reduced.num().degree().unwrap_or(0),
            self.reduced.den().degree().unwrap_or(0),
        )
    }

    /// True when the virgin and reduced fractions coincide.
    pub fn virgin_equals_reduced(&self) -> bool {
        self.virgin_numerator.expand() == *self.reduced.num()
            || self.virgin_numerator.expand() == -self.reduced.num().clone()
    }

    /// First `len + 1` coefficients of the series.
    pub fn series_prefix(&self, len: usize) -> Result<Vec<BigInt>> {
        self.reduced.series_prefix(len)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.group_type.name(),
            "rank": self.rank,
            "reduced": {
                "num": self.reduced.num().coeff_strings(),
                "den": self.reduced.den().coeff_strings(),
                "num_factors": self.reduced_factors.render(),
                "sign": self.reduced_sign,
                "degrees": [self.reduced_degrees().0, self.reduced_degrees().1],
            },
            "virgin": {
                "cyclotomic": self.virgin_numerator.counts().iter()
                    .map(|(&d, &k)| serde_json::json!([d, k])).collect::<Vec<_>>(),
                "display": self.virgin_numerator.to_string(),
            },
            "complete": {
                "brackets": self.complete.brackets,
                "num_factors": self.complete.render_numerator(),
                "den": self.complete.denominator.coeff_strings(),
                "sign": self.complete.sign,
                "m": self.complete.m,
                "degrees": [self.complete.degrees.0, self.complete.degrees.1],
            },
            "virgin_equals_reduced": self.virgin_equals_reduced(),
        })
    }
}

impl CompleteForm {
    pub fn render_numerator(&self) -> String {
        BracketFactorization { brackets: self.brackets.clone(), ..Default::default() }.render()
    }
}

/// Compute the Poincare series of an arbitrary Coxeter system by the
/// Steinberg recursion (finite groups delegate to [`finite_growth`]).
pub fn steinberg_growth(m: &CoxeterMatrix) -> Result<GrowthResult> {
    if m.rank() > RANK_GUARD {
        return Err(Error::RankGuard { rank: m.rank(), max: RANK_GUARD });
    }
    let gt = group_type(m);
    if let GroupType::Finite(types) = &gt {
        return Ok(finite_result(m, types.clone(), gt.clone()));
    }

    // enumerate the nerve with per-subset memoization
    let mut cls = SubsetClassifier::new(m);
    let mut finite_subsets: Vec<(VertexSubset, CycloMultiset)> = Vec::new();
    for x in m.proper_subsets()? {
        if let Some(types) = cls.finite_types(x) {
            finite_subsets.push((x, finite_growth_multiset(types)));
        }
    }

    // Virg(D): per-cyclotomic max of multiplicities, an exact LCM
    let mut virgin = CycloMultiset::one();
    for (_, c) in &finite_subsets {
        virgin = virgin.lcm(c);
    }
    let virgin_poly = virgin.expand();

    // Q(t) = sum eps(X) Virg/W_X; the empty subset contributes +Virg
    let mut q = IntPolynomial::zero();
    for (x, c) in &finite_subsets {
        let ratio = virgin
            .checked_div(c)
            .expect("every finite subgroup polynomial divides the virgin numerator")
            .expand();
        if x.len() % 2 == 0 {
            q = &q + &ratio;
        } else {
            q = &q - &ratio;
        }
    }
    debug_assert_eq!(q.degree(), virgin_poly.degree(), "empty summand dominates the degree");

    // W(t) = Virg / S with S the reversal of Q inside deg Virg
    let deg_p = virgin_poly.degree().unwrap();
    let raw_denominator = q.reverse_within(deg_p);
    let reduced = RationalFunction::new(virgin_poly, raw_denominator.clone())?;

    let (reduced_factors, reduced_sign) = factor_reduced_numerator(reduced.num())?;
    let complete = build_complete_form(&reduced_factors, reduced.den(), reduced_sign)?;

    Ok(GrowthResult {
        group_type: gt,
        rank: m.rank(),
        reduced,
        virgin_numerator: virgin,
        raw_denominator,
        raw_q: q,
        reduced_factors,
        reduced_sign,
        complete,
    })
}

fn finite_result(m: &CoxeterMatrix, types: Vec<FiniteType>, gt: GroupType) -> GrowthResult {
    let poly = finite_growth(&types);
    let virgin = finite_growth_multiset(&types);
    let max_len = types.iter().map(|t| t.max_length() as usize).sum::<usize>();
    let mut brackets: Vec<u32> = types.iter().flat_map(|t| t.series_brackets()).collect();
    brackets.sort_unstable_by(|a, b| b.cmp(a));
    let m_count = brackets.len();
    let reduced = RationalFunction::from_poly(poly);
    let reduced_factors =
        BracketFactorization { brackets: brackets.clone(), ..Default::default() };
    GrowthResult {
        group_type: gt,
        rank: m.rank(),
        reduced,
        virgin_numerator: virgin,
        raw_denominator: IntPolynomial::one(),
        // 1/W(1/t) = t^max_len / W(t) for finite groups
        raw_q: IntPolynomial::monomial(max_len),
        reduced_factors,
        reduced_sign: 1,
        complete: CompleteForm {
            brackets,
            denominator: IntPolynomial::one(),
            sign: 1,
            m: m_count,
            degrees: (max_len, 0),
        },
    }
}

fn factor_reduced_numerator(num: &IntPolynomial) -> Result<(BracketFactorization, i8)> {
    let multiset = factor_into_cyclotomics(num)?;
    if multiset.tshift() != 0 || multiset.count(1) != 0 {
        return Err(Error::Domain(
            "reduced numerator of a growth series vanishes at 0 or 1, which cannot happen".into(),
        ));
    }
    let sign = multiset.unit();
    let positive = CycloMultiset::from_counts(multiset.counts().clone());
    Ok((exact_bracket_factorization(&positive)?, sign))
}

fn build_complete_form(
    factors: &BracketFactorization,
    reduced_den: &IntPolynomial,
    sign: i8,
) -> Result<CompleteForm> {
    let multiset = factor_into_cyclotomics(&factors.expand())?;
    let cover = to_bracket_form(&multiset)?;
    let denominator = reduced_den * &cover.deficit.expand();
    let deg_r = cover
        .brackets
        .iter()
        .map(|&n| n as usize - 1)
        .sum::<usize>();
    let deg_s = denominator.degree().unwrap_or(0);
    let m = cover.brackets.len();
    Ok(CompleteForm {
        brackets: cover.brackets,
        denominator,
        sign,
        m,
        degrees: (deg_r, deg_s),
    })
}

/// Poincare series of the 3-generator group with triangle labels
/// `(p, q, r)`, through the closed formula
/// `[2][p][q][r] / ([2][p][q][r] - 3[p][q][r] + [p][q] + [p][r] + [q][r])`,
/// times `(t^M + 1)` when the group is finite.
pub fn triangle_growth(p: BondOrder, q: BondOrder, r: BondOrder) -> Result<RationalFunction> {
    let labels = [p, q, r];
    for &l in &labels {
        if l.finite().is_some_and(|o| o < 2) {
            return Err(Error::Domain("triangle labels must be >= 2".into()));
        }
    }
    let twos = labels.iter().filter(|l| **l == BondOrder::Finite(2)).count();
    if twos > 1 {
        return Err(Error::Domain("at most one triangle label may equal 2".into()));
    }
    let two = bracket(BondOrder::Finite(2))?;
    let bp = bracket(p)?;
    let bq = bracket(q)?;
    let br = bracket(r)?;
    let pqr = &(&bp * &bq) * &br;
    let num = &two * &pqr;
    let three = RationalFunction::from_poly(IntPolynomial::constant(3));
    let den = &(&num - &(&three * &pqr)) + &(&(&(&bp * &bq) + &(&bp * &br)) + &(&bq * &br));
    let mut w = &num / &den;

    let matrix = triangle_matrix(p, q, r)?;
    if let GroupType::Finite(types) = group_type(&matrix) {
        let max_len: usize = types.iter().map(|t| t.max_length() as usize).sum();
        let factor = &IntPolynomial::monomial(max_len) + &IntPolynomial::one();
        w = &w * &RationalFunction::from_poly(factor);
    }
    Ok(w)
}

/// The triangle `(p, q, r)` as a Coxeter matrix.
pub fn triangle_matrix(p: BondOrder, q: BondOrder, r: BondOrder) -> Result<CoxeterMatrix> {
    CoxeterMatrix::from_bonds(3, &[(0, 1, p), (0, 2, q), (1, 2, r)])
}

/// Whether a cyclic label set is acceptable for Floyd's polygon formula.
pub fn polygon_labels_acceptable(labels: &[u32]) -> bool {
    match labels.len() {
        3 => {
            // sum 1/a_i < 1
            let lcm = labels.iter().fold(1u64, |acc, &a| num_integer::lcm(acc, a as u64));
            labels.iter().map(|&a| lcm / a as u64).sum::<u64>() < lcm
        }
        4 => labels != [2, 2, 2, 2],
        _ => true,
    }
}

/// Poincare series of the polygon reflection group with cyclic presentation
/// `(g_i g_(i+1))^(a_i)`, non-adjacent generator pairs free.
///
/// Acceptable label sets go through Floyd's formula
/// `[2] prod [a_i] / ([2] prod [a_i] - t sum_i [a_1]..[a_i - 1]..[a_n])`,
/// unacceptable ones through the Parry form
/// `[2] prod [a_i] / ((t + 1 - n) prod [a_i] + sum_i prod_(j != i) [a_j])`.
pub fn polygon_growth(labels: &[u32]) -> Result<RationalFunction> {
    let n = labels.len();
    if n < 3 {
        return Err(Error::Domain("a polygon needs at least 3 labels".into()));
    }
    if labels.iter().any(|&a| a < 2) {
        return Err(Error::Domain("polygon labels must be >= 2".into()));
    }
    let brackets: Vec<IntPolynomial> = labels.iter().map(|&a| bracket_poly(a)).collect();
    let prod_all = brackets.iter().fold(IntPolynomial::one(), |p, b| &p * b);
    let num = &bracket_poly(2) * &prod_all;
    let den = if polygon_labels_acceptable(labels) {
        let mut sum = IntPolynomial::zero();
        for i in 0..n {
            let mut term = bracket_poly(labels[i] - 1);
            for (j, b) in brackets.iter().enumerate() {
                if j != i {
                    term = &term * b;
                }
            }
            sum = &sum + &term;
        }
        &num - &(&IntPolynomial::monomial(1) * &sum)
    } else {
        let shifted = &IntPolynomial::monomial(1) + &IntPolynomial::constant(1 - n as i64);
        let mut sum = IntPolynomial::zero();
        for i in 0..n {
            let mut term = IntPolynomial::one();
            for (j, b) in brackets.iter().enumerate() {
                if j != i {
                    term = &term * b;
                }
            }
            sum = &sum + &term;
        }
        &(&shifted * &prod_all) + &sum
    };
    RationalFunction::new(num, den)
}

/// The polygon presentation as a Coxeter matrix: consecutive pairs bonded by
/// the labels, all other pairs infinite.
pub fn polygon_matrix(labels: &[u32]) -> Result<CoxeterMatrix> {
    let n = labels.len();
    if n < 3 {
        return Err(Error::Domain("a polygon needs at least 3 labels".into()));
    }
    let mut bonds = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        bonds.push((i.min(j), i.max(j), BondOrder::Finite(labels[i])));
    }
    if n > 3 {
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent {
                    bonds.push((i, j, BondOrder::Infinity));
                }
            }
        }
    }
    CoxeterMatrix::from_bonds(n, &bonds)
}

/// First `len + 1` Taylor coefficients of a rational function at 0.
pub fn series_prefix(f: &RationalFunction, len: usize) -> Result<Vec<BigInt>> {
    f.series_prefix(len)
}
