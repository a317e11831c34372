//! Cyclotomic polynomials and the bracket calculus.
//!
//! `[n] = 1 + t + .. + t^(n-1)` and `[n'] = 1 + t^n`; both factor into
//! cyclotomic polynomials: `[n]` is the product of `Phi_d` over divisors
//! `d > 1` of `n', and `[n'] = [2n]/[n]` is the product over divisors of
//! `2n` that do not divide `n`. Products of such factors are carried around
//! as multisets of cyclotomic indices, which makes LCMs and exact division
//! cheap.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::diagram::BondOrder;
use crate::error::{Error, Result};
use crate::polyalg::poly::IntPolynomial;
use crate::polyalg::ratfun::RationalFunction;

/// The d-th cyclotomic polynomial, by exact division
/// `Phi_d = (t^d - 1) / prod_(e|d, e<d) Phi_e`.
pub fn cyclotomic(d: u32) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be >= 1");
    static CACHE: OnceLock<Mutex<BTreeMap<u32, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut num = &IntPolynomial::monomial(d as usize) - &IntPolynomial::one();
    for e in 1..d {
        if d % e == 0 {
            num = num.div_exact(&cyclotomic(e)).expect("cyclotomic division is exact");
        }
    }
    cache.lock().unwrap().insert(d, num.clone());
    num
}

/// `[n]` as a polynomial, `n >= 1`; `[1] = 1` by the empty-sum convention.
pub fn bracket_poly(n: u32) -> IntPolynomial {
    IntPolynomial::from_coeffs(vec![num_bigint::BigInt::from(1); n as usize])
}

/// `[n'] = 1 + t^n`.
pub fn primed_poly(n: u32) -> IntPolynomial {
    &IntPolynomial::monomial(n as usize) + &IntPolynomial::one()
}

/// `[n]` as a rational function, with `[inf] = 1/(1 - t)`.
pub fn bracket(n: BondOrder) -> Result<RationalFunction> {
    match n {
        BondOrder::Finite(0) => Err(Error::Domain("[0] is not defined".into())),
        BondOrder::Finite(n) => Ok(RationalFunction::from_poly(bracket_poly(n))),
        BondOrder::Infinity => {
            RationalFunction::new(IntPolynomial::one(), "1 - t".parse().unwrap())
        }
    }
}

/// Cyclotomic indices of `[n]`: divisors of `n` greater than 1.
pub fn bracket_indices(n: u32) -> Vec<u32> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// Cyclotomic indices of `[n']`: divisors of `2n` that do not divide `n`.
pub fn primed_indices(n: u32) -> Vec<u32> {
    (2..=2 * n).filter(|d| (2 * n) % d == 0 && n % d != 0).collect()
}

/// A signed monomial times a product of cyclotomic polynomials:
/// `unit * t^tshift * prod Phi_d^counts[d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMultiset {
    counts: BTreeMap<u32, u32>,
    unit: i8,
    tshift: u32,
}

impl Default for CycloMultiset {
    fn default() -> Self {
        CycloMultiset::one()
    }
}

impl CycloMultiset {
    pub fn one() -> Self {
        CycloMultiset { counts: BTreeMap::new(), unit: 1, tshift: 0 }
    }

    pub fn from_counts(counts: BTreeMap<u32, u32>) -> Self {
        let mut c = CycloMultiset::one();
        c.counts = counts;
        c.counts.retain(|_, v| *v > 0);
        c
    }

    /// The multiset of `[n]`.
    pub fn from_bracket(n: u32) -> Self {
        let mut c = CycloMultiset::one();
        for d in bracket_indices(n) {
            c.push(d, 1);
        }
        c
    }

    /// The multiset of `[n']`.
    pub fn from_primed(n: u32) -> Self {
        let mut c = CycloMultiset::one();
        for d in primed_indices(n) {
            c.push(d, 1);
        }
        c
    }

    pub fn counts(&self) -> &BTreeMap<u32, u32> {
        &self.counts
    }

    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn tshift(&self) -> u32 {
        self.tshift
    }

    pub fn is_one(&self) -> bool {
        self.counts.is_empty() && self.unit == 1 && self.tshift == 0
    }

    pub fn count(&self, d: u32) -> u32 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn push(&mut self, d: u32, k: u32) {
        if k > 0 {
            *self.counts.entry(d).or_insert(0) += k;
        }
    }

    pub fn mul(&self, other: &CycloMultiset) -> CycloMultiset {
        let mut out = self.clone();
        out.unit *= other.unit;
        out.tshift += other.tshift;
        for (&d, &k) in &other.counts {
            out.push(d, k);
        }
        out
    }

    /// Per-index maximum of multiplicities: the exact polynomial LCM of two
    /// cyclotomic products (units and shifts ignored).
    pub fn lcm(&self, other: &CycloMultiset) -> CycloMultiset {
        let mut out = self.clone();
        out.unit = 1;
        out.tshift = 0;
        for (&d, &k) in &other.counts {
            let e = out.counts.entry(d).or_insert(0);
            *e = (*e).max(k);
        }
        out
    }

    /// Checked exact division (None when some multiplicity would go negative
    /// or the shift would go negative).
    pub fn checked_div(&self, other: &CycloMultiset) -> Option<CycloMultiset> {
        let mut out = self.clone();
        out.unit *= other.unit;
        out.tshift = self.tshift.checked_sub(other.tshift)?;
        for (&d, &k) in &other.counts {
            let have = out.count(d);
            if have < k {
                return None;
            }
            if have == k {
                out.counts.remove(&d);
            } else {
                out.counts.insert(d, have - k);
            }
        }
        Some(out)
    }

    /// Expand the product to an explicit polynomial.
    pub fn expand(&self) -> IntPolynomial {
        let mut p = IntPolynomial::one();
        for (&d, &k) in &self.counts {
            let phi = cyclotomic(d);
            for _ in 0..k {
                p = &p * &phi;
            }
        }
        if self.unit < 0 {
            p = -p;
        }
        p.shift(self.tshift as usize)
    }

    pub fn total_degree(&self) -> usize {
        self.tshift as usize
            + self
                .counts
                .iter()
                .map(|(&d, &k)| euler_phi(d) as usize * k as usize)
                .sum::<usize>()
    }
}

impl fmt::Display for CycloMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit < 0 {
            write!(f, "-")?;
        }
        if self.tshift > 0 {
            write!(f, "t^{}·", self.tshift)?;
        }
        if self.counts.is_empty() {
            return write!(f, "1");
        }
        for (&d, &k) in &self.counts {
            if k == 1 {
                write!(f, "Phi_{d}")?;
            } else {
                write!(f, "Phi_{d}^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Factor a polynomial that is (up to sign and a power of t) a product of
/// cyclotomics, by trial division with ascending index. Errors with the
/// unfactored remainder when a non-cyclotomic factor survives.
pub fn factor_into_cyclotomics(p: &IntPolynomial) -> Result<CycloMultiset> {
    if p.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    let mut out = CycloMultiset::one();
    let v = p.valuation().unwrap();
    out.tshift = v as u32;
    let mut rem = p.div_exact(&IntPolynomial::monomial(v)).unwrap();
    if rem.leading().unwrap() < &num_bigint::BigInt::from(0) {
        out.unit = -1;
        rem = -rem;
    }
    let mut d = 1u32;
    while rem.degree() != Some(0) {
        // phi(d) can stay small while d grows (e.g. [5'] contains Phi_10),
        // so scan indices until phi(d) overshoots the remaining degree.
        if euler_phi(d) as usize > rem.degree().unwrap() {
            d += 1;
            if (d as usize) > 4 * p.degree().unwrap() * p.degree().unwrap() + 16 {
                break;
            }
            continue;
        }
        let phi = cyclotomic(d);
        while rem.is_divisible_by(&phi) {
            rem = rem.div_exact(&phi).unwrap();
            out.push(d, 1);
        }
        d += 1;
    }
    if !rem.is_one() {
        return Err(Error::NonCyclotomic { remainder: rem.to_string() });
    }
    Ok(out)
}

/// A factorization into brackets, primed factors, and a leftover cyclotomic
/// residual; the product of all parts reproduces the represented polynomial
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BracketFactorization {
    /// Multiset of `[n]` factors, descending.
    pub brackets: Vec<u32>,
    /// Multiset of `[n']` factors, descending.
    pub primed: Vec<u32>,
    /// Cyclotomic leftovers not absorbed into any factor.
    pub residual: CycloMultiset,
}

impl BracketFactorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut p = self.residual.expand();
        for &n in &self.brackets {
            p = &p * &bracket_poly(n);
        }
        for &n in &self.primed {
            p = &p * &primed_poly(n);
        }
        p
    }

    /// Number of factors, residual excluded.
    pub fn factor_count(&self) -> usize {
        self.brackets.len() + self.primed.len()
    }

    /// Rendering in the table style, e.g. `[2][6][5']`.
    pub fn render(&self) -> String {
        // plain brackets ascending, then primed factors ascending
        let mut items: Vec<(bool, u32)> = self
            .brackets
            .iter()
            .map(|&n| (false, n))
            .chain(self.primed.iter().map(|&n| (true, n)))
            .collect();
        items.sort();
        let mut s = String::new();
        let mut i = 0;
        while i < items.len() {
            let mut j = i;
            while j < items.len() && items[j] == items[i] {
                j += 1;
            }
            let (primed, n) = items[i];
            let tick = if primed { "'" } else { "" };
            if j - i == 1 {
                s.push_str(&format!("[{n}{tick}]"));
            } else {
                s.push_str(&format!("[{n}{tick}]^{}", j - i));
            }
            i = j;
        }
        if !self.residual.is_one() {
            s.push_str(&format!("·{}", self.residual));
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Greedy factorization of a cyclotomic multiset into brackets and primed
/// factors, largest index first. At each step the largest remaining index d
/// is absorbed into `[d]` when every divisor of d is available, otherwise
/// into `[d/2 ']` when that fits, otherwise it is moved to the residual.
///
/// Requires a plain product: no `Phi_1`, no power of t, positive unit.
pub fn exact_bracket_factorization(c: &CycloMultiset) -> Result<BracketFactorization> {
    if c.count(1) > 0 || c.tshift() != 0 || c.unit() != 1 {
        return Err(Error::Domain(
            "bracket factorization needs a positive product free of Phi_1 and powers of t".into(),
        ));
    }
    let mut counts: BTreeMap<u32, i64> =
        c.counts().iter().map(|(&d, &k)| (d, k as i64)).collect();
    let mut out = BracketFactorization::default();
    loop {
        let Some((&d, _)) = counts.iter().rev().find(|(_, &k)| k > 0) else {
            break;
        };
        let fits = |counts: &BTreeMap<u32, i64>, idx: &[u32]| {
            idx.iter().all(|e| counts.get(e).copied().unwrap_or(0) > 0)
        };
        let bracket_idx = bracket_indices(d);
        if fits(&counts, &bracket_idx) {
            for e in bracket_idx {
                *counts.get_mut(&e).unwrap() -= 1;
            }
            out.brackets.push(d);
            continue;
        }
        if d % 2 == 0 {
            let primed_idx = primed_indices(d / 2);
            if fits(&counts, &primed_idx) {
                for e in primed_idx {
                    *counts.get_mut(&e).unwrap() -= 1;
                }
                out.primed.push(d / 2);
                continue;
            }
        }
        let k = counts.remove(&d).unwrap();
        out.residual.push(d, k as u32);
    }
    out.brackets.sort_unstable_by(|a, b| b.cmp(a));
    out.primed.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(out.expand(), c.expand());
    Ok(out)
}

/// The complete cover of a cyclotomic multiset: a pure multiset of brackets
/// `[n_i]` together with the deficit that must be multiplied into the
/// companion denominator to keep the fraction equal. Primed factors `[n']`
/// are completed to `[2n]` (deficit `[n]`), and residual cyclotomics
/// `Phi_d` to `[d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCover {
    /// Multiset of `[n]` factors, descending.
    pub brackets: Vec<u32>,
    /// Product to multiply into the denominator.
    pub deficit: CycloMultiset,
}

impl BracketCover {
    pub fn factor_count(&self) -> usize {
        self.brackets.len()
    }

    pub fn expand(&self) -> IntPolynomial {
        self.brackets.iter().fold(IntPolynomial::one(), |p, &n| &p * &bracket_poly(n))
    }

    pub fn render(&self) -> String {
        BracketFactorization { brackets: self.brackets.clone(), ..Default::default() }.render()
    }
}

/// The `[n]`-complete cover of a cyclotomic multiset; see [`BracketCover`].
pub fn to_bracket_form(c: &CycloMultiset) -> Result<BracketCover> {
    let exact = exact_bracket_factorization(c)?;
    let mut brackets = exact.brackets;
    let mut deficit = CycloMultiset::one();
    for &n in &exact.primed {
        brackets.push(2 * n);
        for e in bracket_indices(n) {
            deficit.push(e, 1);
        }
    }
    for (&d, &k) in exact.residual.counts() {
        for _ in 0..k {
            brackets.push(d);
        }
        for e in bracket_indices(d) {
            if e != d {
                deficit.push(e, k);
            }
        }
    }
    brackets.sort_unstable_by(|a, b| b.cmp(a));
    Ok(BracketCover { brackets, deficit })
}
