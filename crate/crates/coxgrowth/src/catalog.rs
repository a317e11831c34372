//! The bundled catalog of Lanner and quasi-Lanner diagrams with their
//! published Poincare series, Euler characteristics, infinite-subgroup
//! counts, and pole data. The catalog powers the regression suite: a wrong
//! diagram encoding cannot pass, because the series is a near-perfect
//! fingerprint of the diagram.
//!
//! Ships as two JSON files: the diagram encodings (in the standard diagram
//! JSON format) and the expected results, with polynomials stored as the
//! printed descending-power strings so the data stays auditable. The
//! environment variable `COXGROWTH_CATALOG` may point to a directory with
//! replacement `catalog_diagrams.json` / `catalog_expected.json`.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde::Deserialize;

use crate::classify::{group_type, GroupType};
use crate::diagram::{CoxeterMatrix, DiagramJson};
use crate::error::{Error, Result};
use crate::growth::GrowthResult;
use crate::polyalg::IntPolynomial;

const DIAGRAMS_JSON: &str = include_str!("../data/catalog_diagrams.json");
const EXPECTED_JSON: &str = include_str!("../data/catalog_expected.json");

/// Family sizes; the load-time validation enforces them.
pub const FAMILY_COUNTS: &[(&str, usize)] = &[
    ("L4", 9),
    ("L5", 5),
    ("QL4", 22),
    ("QL5", 9),
    ("QL6", 12),
    ("QL7", 3),
    ("QL8", 4),
    ("QL9", 4),
    ("QL10", 3),
];

/// One catalog diagram with everything the tables assert about it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub matrix: CoxeterMatrix,
    pub expected: ExpectedSeries,
}

#[derive(Clone, Debug)]
pub struct ExpectedSeries {
    /// Complete-form numerator, e.g. `[2]^2[6][8][12]`.
    pub complete_num: String,
    pub complete_den: IntPolynomial,
    /// The row is printed with an explicit leading minus.
    pub printed_minus: bool,
    pub reduced_num: Option<String>,
    pub reduced_den: Option<IntPolynomial>,
    /// Printed Euler characteristic (`0` comes from the table captions).
    pub chi: Option<BigRational>,
    /// Printed count of infinite special subgroups (quasi-Lanner tables).
    pub inf: Option<usize>,
    pub poles: Option<ExpectedPoles>,
    /// Coefficient fixes `(power, coefficient)` for known misprints in the
    /// denominator; the stored polynomial stays verbatim as printed.
    pub den_corrections: Vec<(usize, i64)>,
    /// Replacement for a misprinted Euler characteristic.
    pub chi_corrected: Option<BigRational>,
    /// Known quirks of the printed data; comparisons flag instead of fail.
    pub notes: Vec<String>,
}

impl ExpectedSeries {
    /// The printed complete denominator with the annotated coefficient
    /// corrections applied.
    pub fn corrected_complete_den(&self) -> IntPolynomial {
        apply_corrections(&self.complete_den, &self.den_corrections)
    }
}

fn apply_corrections(p: &IntPolynomial, corrections: &[(usize, i64)]) -> IntPolynomial {
    if corrections.is_empty() {
        return p.clone();
    }
    let deg = p.degree().unwrap_or(0).max(
        corrections.iter().map(|&(k, _)| k).max().unwrap_or(0),
    );
    let mut coeffs: Vec<num_bigint::BigInt> = (0..=deg).map(|k| p.coeff(k)).collect();
    for &(k, c) in corrections {
        coeffs[k] = num_bigint::BigInt::from(c);
    }
    IntPolynomial::from_coeffs(coeffs)
}

#[derive(Clone, Debug)]
pub struct ExpectedPoles {
    /// Real poles, the trivial pole at 1 excluded.
    pub real: Vec<f64>,
    /// Annulus bounds for the non-real poles.
    pub min_modulus: Option<f64>,
    pub max_modulus: Option<f64>,
}

impl CatalogEntry {
    pub fn family(&self) -> &str {
        self.label.split('_').next().unwrap()
    }

    pub fn is_lanner(&self) -> bool {
        !self.family().starts_with("QL")
    }

    /// Degrees `(deg R, deg S)` of the printed complete form.
    pub fn complete_degrees(&self) -> (usize, usize) {
        let (b, _) = parse_bracket_string(&self.expected.complete_num).unwrap();
        let deg_r: usize = b.iter().map(|&n| n as usize - 1).sum();
        (deg_r, self.expected.complete_den.degree().unwrap_or(0))
    }
}

// raw JSON shapes ------------------------------------------------------

#[derive(Deserialize)]
struct RawExpected {
    complete_num: String,
    complete_den: String,
    #[serde(default)]
    printed_minus: bool,
    reduced_num: Option<String>,
    reduced_den: Option<String>,
    chi: Option<String>,
    inf: Option<usize>,
    poles: Option<RawPoles>,
    #[serde(default)]
    den_corrections: Vec<(usize, i64)>,
    chi_corrected: Option<String>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Deserialize)]
struct RawPoles {
    real: Vec<f64>,
    m: Option<f64>,
    #[serde(rename = "M")]
    max: Option<f64>,
}

fn parse_chi(s: &str) -> Result<BigRational> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |w: &str| {
        w.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| Error::CatalogData(format!("bad rational {s:?}")))
    };
    match parts.as_slice() {
        [a] => Ok(BigRational::from(parse_int(a)?)),
        [a, b] => Ok(BigRational::new(parse_int(a)?, parse_int(b)?)),
        _ => Err(Error::CatalogData(format!("bad rational {s:?}"))),
    }
}

/// Parse `[2]^2[6][5']` into (brackets, primed) multisets.
pub fn parse_bracket_string(s: &str) -> Result<(Vec<u32>, Vec<u32>)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut brackets = Vec::new();
    let mut primed = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'[' {
            return Err(Error::CatalogData(format!("bad bracket string {s:?}")));
        }
        let close = compact[i..]
            .find(']')
            .ok_or_else(|| Error::CatalogData(format!("bad bracket string {s:?}")))?
            + i;
        let inner = &compact[i + 1..close];
        let (num_str, is_primed) = match inner.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (inner, false),
        };
        let n: u32 = num_str
            .parse()
            .map_err(|_| Error::CatalogData(format!("bad bracket index in {s:?}")))?;
        i = close + 1;
        let mut count = 1usize;
        if i < bytes.len() && bytes[i] == b'^' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            count = compact[i + 1..j]
                .parse()
                .map_err(|_| Error::CatalogData(format!("bad exponent in {s:?}")))?;
            i = j;
        }
        for _ in 0..count {
            if is_primed {
                primed.push(n);
            } else {
                brackets.push(n);
            }
        }
    }
    brackets.sort_unstable();
    primed.sort_unstable();
    Ok((brackets, primed))
}

/// Expand a printed numerator string into a polynomial.
pub fn expand_bracket_string(s: &str) -> Result<IntPolynomial> {
    let (brackets, primed) = parse_bracket_string(s)?;
    let mut p = IntPolynomial::one();
    for n in brackets {
        p = &p * &crate::polyalg::bracket_poly(n);
    }
    for n in primed {
        p = &p * &crate::polyalg::primed_poly(n);
    }
    Ok(p)
}

fn build_entries(
    diagrams: BTreeMap<String, DiagramJson>,
    expected: BTreeMap<String, RawExpected>,
) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (label, raw) in expected {
        let dj = diagrams
            .get(&label)
            .ok_or_else(|| Error::CatalogData(format!("no diagram stored for {label}")))?;
        let matrix = CoxeterMatrix::from_json(dj)
            .map_err(|e| Error::CatalogData(format!("{label}: {e}")))?;
        let complete_den: IntPolynomial = raw
            .complete_den
            .parse()
            .map_err(|e| Error::CatalogData(format!("{label} complete_den: {e}")))?;
        let reduced_den = match &raw.reduced_den {
            Some(s) => Some(
                s.parse::<IntPolynomial>()
                    .map_err(|e| Error::CatalogData(format!("{label} reduced_den: {e}")))?,
            ),
            None => None,
        };
        let chi = raw.chi.as_deref().map(parse_chi).transpose()?;
        let chi_corrected = raw.chi_corrected.as_deref().map(parse_chi).transpose()?;
        entries.push(CatalogEntry {
            label,
            matrix,
            expected: ExpectedSeries {
                complete_num: raw.complete_num,
                complete_den,
                printed_minus: raw.printed_minus,
                reduced_num: raw.reduced_num,
                reduced_den,
                chi,
                inf: raw.inf,
                poles: raw.poles.map(|p| ExpectedPoles {
                    real: p.real,
                    min_modulus: p.m,
                    max_modulus: p.max,
                }),
                den_corrections: raw.den_corrections,
                chi_corrected,
                notes: raw.notes,
            },
        });
    }
    validate(&entries)?;
    Ok(entries)
}

fn validate(entries: &[CatalogEntry]) -> Result<()> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for e in entries {
        *counts.entry(e.family()).or_insert(0) += 1;
        let gt = group_type(&e.matrix);
        let ok = if e.is_lanner() {
            gt == GroupType::Lanner
        } else {
            gt == GroupType::QuasiLanner
        };
        if !ok {
            return Err(Error::CatalogData(format!(
                "{} classifies as {} instead of its family",
                e.label,
                gt.name()
            )));
        }
        // printed numerator and denominator degrees must be consistent
        let (deg_r, deg_s) = e.complete_degrees();
        if deg_r != deg_s && deg_r != deg_s + 1 {
            return Err(Error::CatalogData(format!(
                "{}: complete form degrees ({deg_r}, {deg_s}) are malformed",
                e.label
            )));
        }
        if let (Some(num), Some(den)) = (&e.expected.reduced_num, &e.expected.reduced_den) {
            let dn = expand_bracket_string(num)?.degree().unwrap_or(0);
            let ds = den.degree().unwrap_or(0);
            if dn != ds && dn != ds + 1 {
                return Err(Error::CatalogData(format!(
                    "{}: reduced form degrees ({dn}, {ds}) are malformed",
                    e.label
                )));
            }
        }
    }
    for &(fam, expected) in FAMILY_COUNTS {
        let got = counts.get(fam).copied().unwrap_or(0);
        if got != expected {
            return Err(Error::CatalogData(format!(
                "family {fam} has {got} entries, expected {expected}"
            )));
        }
    }
    Ok(())
}

fn load_from_strs(diagrams: &str, expected: &str) -> Result<Vec<CatalogEntry>> {
    let diagrams: BTreeMap<String, DiagramJson> = serde_json::from_str(diagrams)?;
    let expected: BTreeMap<String, RawExpected> = serde_json::from_str(expected)?;
    build_entries(diagrams, expected)
}

/// Load the full catalog, honoring the `COXGROWTH_CATALOG` directory
/// override, validating the type invariants entry by entry.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    if let Ok(dir) = std::env::var("COXGROWTH_CATALOG") {
        let dir = Path::new(&dir);
        let diagrams = std::fs::read_to_string(dir.join("catalog_diagrams.json"))?;
        let expected = std::fs::read_to_string(dir.join("catalog_expected.json"))?;
        return load_from_strs(&diagrams, &expected);
    }
    load_from_strs(DIAGRAMS_JSON, EXPECTED_JSON)
}

/// The expected complete forms alone (label -> numerator string, printed
/// denominator), used by the catalog derivation tool before any diagram
/// encodings exist.
pub fn load_expected_complete_forms() -> Result<BTreeMap<String, (String, IntPolynomial)>> {
    let expected: BTreeMap<String, RawExpected> = serde_json::from_str(EXPECTED_JSON)?;
    expected
        .into_iter()
        .map(|(label, raw)| {
            let den: IntPolynomial = raw
                .complete_den
                .parse()
                .map_err(|e| Error::CatalogData(format!("{label}: {e}")))?;
            let den = apply_corrections(&den, &raw.den_corrections);
            Ok((label, (raw.complete_num, den)))
        })
        .collect()
}

/// Look up one entry by label; unknown labels report near matches.
pub fn lookup(label: &str) -> Result<CatalogEntry> {
    let entries = load_catalog()?;
    if let Some(e) = entries.iter().find(|e| e.label == label) {
        return Ok(e.clone());
    }
    let prefix = label.to_lowercase();
    let prefix = prefix.split('_').next().unwrap_or("").to_string();
    let mut near: Vec<String> = entries
        .iter()
        .map(|e| e.label.clone())
        .filter(|l| l.to_lowercase().starts_with(&prefix))
        .collect();
    near.truncate(6);
    Err(Error::UnknownLabel { label: label.to_string(), near })
}

/// Outcome of comparing a computed series against the printed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesMatch {
    /// Printed data reproduced exactly; `sign_flipped` records whether the
    /// global sign of the printed fraction is flipped relative to the true
    /// series, `used_corrections` whether annotated misprint fixes applied.
    Exact { sign_flipped: bool, used_corrections: bool },
    Mismatch(String),
}

/// Compare a computed growth result against the printed complete (and,
/// when given, reduced) forms. Equality is integer-exact; a single global
/// sign on numerator and denominator together is accepted and recorded.
pub fn compare_series(entry: &CatalogEntry, growth: &GrowthResult) -> SeriesMatch {
    let computed_num = growth.complete.render_numerator();
    if computed_num != normalize_bracket_string(&entry.expected.complete_num) {
        return SeriesMatch::Mismatch(format!(
            "complete numerator {} differs from printed {}",
            computed_num, entry.expected.complete_num
        ));
    }
    let expected_den = entry.expected.corrected_complete_den();
    let den = &growth.complete.denominator;
    let sign_flipped = if *den == expected_den {
        false
    } else if -den.clone() == expected_den {
        true
    } else {
        return SeriesMatch::Mismatch(format!(
            "complete denominator {} differs from printed {}",
            den, expected_den
        ));
    };
    if let (Some(rn), Some(rd)) = (&entry.expected.reduced_num, &entry.expected.reduced_den) {
        let num_expanded = match expand_bracket_string(rn) {
            Ok(p) => p,
            Err(e) => return SeriesMatch::Mismatch(format!("bad printed reduced numerator: {e}")),
        };
        let computed_red = growth.reduced.num();
        if *computed_red != num_expanded && -computed_red.clone() != num_expanded {
            return SeriesMatch::Mismatch(format!(
                "reduced numerator {} differs from printed {}",
                growth.reduced_factors.render(),
                rn
            ));
        }
        let red_den = growth.reduced.den();
        if *red_den != *rd && -red_den.clone() != *rd {
            return SeriesMatch::Mismatch(format!(
                "reduced denominator {} differs from printed {}",
                red_den, rd
            ));
        }
    }
    SeriesMatch::Exact { sign_flipped, used_corrections: !entry.expected.den_corrections.is_empty() }
}

/// Normalize a printed bracket string to the renderer's format.
pub fn normalize_bracket_string(s: &str) -> String {
    let (brackets, primed) = match parse_bracket_string(s) {
        Ok(x) => x,
        Err(_) => return s.to_string(),
    };
    crate::polyalg::BracketFactorization { brackets, primed, ..Default::default() }.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_string_parsing() {
        let (b, p) = parse_bracket_string("[2]^2[6][5']").unwrap();
        assert_eq!(b, vec![2, 2, 6]);
        assert_eq!(p, vec![5]);
        assert!(parse_bracket_string("nonsense").is_err());
    }

    #[test]
    fn expand_matches_product() {
        let p = expand_bracket_string("[2][4]").unwrap();
        assert_eq!(p.to_string(), "t^4 + 2t^3 + 2t^2 + 2t + 1");
    }

    #[test]
    fn catalog_loads_and_validates() {
        let entries = load_catalog().unwrap();
        assert_eq!(entries.len(), 71);
        assert!(lookup("L4_1").is_ok());
        assert!(matches!(lookup("L9_1"), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn lookup_degree_spot_checks() {
        let e = lookup("QL10_2").unwrap();
        assert_eq!(e.complete_degrees(), (129, 129));
        let l = lookup("L4_1").unwrap();
        // reduced denominator of L4_1 has degree 11
        assert_eq!(l.expected.reduced_den.as_ref().unwrap().degree(), Some(11));
        let q = lookup("QL4_13").unwrap();
        assert_eq!(q.expected.inf, Some(4));
        assert_eq!(q.expected.complete_den.to_string(), "3t^6 - 2t^5 - 2t + 1");
    }
}
