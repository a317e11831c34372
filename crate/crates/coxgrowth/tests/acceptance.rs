//! Acceptance suite: one criterion per test, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the assertions hold either way.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxgrowth::catalog::{compare_series, load_catalog, lookup, SeriesMatch};
use coxgrowth::cayley::{cayley_count, cayley_count_full};
use coxgrowth::classify::{
    classify_connected, group_type, infinite_poset, AffineType, ConnectedType, FiniteType,
    GroupType,
};
use coxgrowth::diagram::{BondOrder, CoxeterMatrix};
use coxgrowth::growth::{
    affine_growth_of, finite_growth, polygon_growth, polygon_labels_acceptable, polygon_matrix,
    series_prefix, steinberg_growth, triangle_growth, triangle_matrix,
};
use coxgrowth::poles::{compare_poles, pole_report};
use coxgrowth::polyalg::{
    bracket_poly, cyclotomic, factor_into_cyclotomics, primed_poly, CycloMultiset, IntPolynomial,
    RationalFunction,
};
use coxgrowth::verify::{
    check_epsilon_identities, check_euler, check_highest_coefficient, check_reciprocity,
    check_second_coefficient, FunctionReciprocity,
};

fn criterion_line(n: usize, pass: bool, detail: &str) {
    println!("criterion {n}: {} - {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

/// 1. Exact series reproduction for every catalog entry, under 60 s.
#[test]
fn criterion_1_exact_series_reproduction() {
    let start = Instant::now();
    let entries = load_catalog().expect("catalog loads");
    assert_eq!(entries.len(), 71);
    let mut corrected = Vec::new();
    let mut failures = Vec::new();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).expect("series computes");
        match compare_series(e, &g) {
            SeriesMatch::Exact { used_corrections, .. } => {
                if used_corrections {
                    corrected.push(e.label.clone());
                }
            }
            SeriesMatch::Mismatch(msg) => failures.push(format!("{}: {msg}", e.label)),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed.as_secs() < 60;
    criterion_line(
        1,
        pass,
        &format!(
            "71 of 71 printed series reproduced exactly in {:.2?} (annotated misprint corrections on {:?}); failures: {:?}",
            elapsed, corrected, failures
        ),
    );
}

/// 2. Coefficient theorems on all 71 entries, with the printed Inf columns
/// and the Lanner specializations.
#[test]
fn criterion_2_coefficient_theorems() {
    let entries = load_catalog().unwrap();
    let mut failures = Vec::new();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).unwrap();
        let poset = infinite_poset(&e.matrix).unwrap();
        let highest = check_highest_coefficient(&e.matrix, &g, &poset).unwrap();
        let second = check_second_coefficient(&e.matrix, &g, &poset).unwrap();
        if !highest.pass {
            failures.push(format!("{}: b_n", e.label));
        }
        if !second.pass {
            failures.push(format!("{}: b_(n-1)", e.label));
        }
        if let Some(inf) = e.expected.inf {
            if poset.inf != inf {
                failures.push(format!("{}: Inf {} vs printed {}", e.label, poset.inf, inf));
            }
            let rank_sign = if e.matrix.rank() % 2 == 0 { 1 } else { -1 };
            if BigInt::from(rank_sign) * &highest.observed + BigInt::one()
                != BigInt::from(inf as i64)
            {
                failures.push(format!("{}: Inf != b_n + 1", e.label));
            }
        }
        if e.is_lanner() {
            let d = e.matrix.rank();
            let expected_bn = BigInt::from(if (d + 1) % 2 == 0 { 1 } else { -1 });
            if highest.observed != expected_bn {
                failures.push(format!("{}: lanner b_n", e.label));
            }
            let expected_b_n1 = match (d, e.label.as_str()) {
                (4, _) => BigInt::one(),
                (5, "L5_2") | (5, "L5_5") => BigInt::zero(),
                (5, _) => -BigInt::one(),
                _ => unreachable!(),
            };
            if second.observed != expected_b_n1 {
                failures.push(format!(
                    "{}: lanner b_(n-1) {} vs expected {}",
                    e.label, second.observed, expected_b_n1
                ));
            }
        }
    }
    criterion_line(
        2,
        failures.is_empty(),
        &format!("b_n and b_(n-1) predictions hold on all 71 entries; failures: {failures:?}"),
    );
}

/// 3. The quasi-Lanner labels with deg R - deg S = 1 against the published
/// 28-label list. The list as published omits QL6_2, whose own table row
/// prints degrees (33, 32) and Inf = 1; with a single infinite special
/// subgroup the degree difference is forced to 1, so the omission is an
/// inconsistency of the published list, flagged here rather than imitated.
#[test]
fn criterion_3_degree_difference_list() {
    const PUBLISHED: &[&str] = &[
        "QL4_1", "QL4_2", "QL4_3", "QL4_6", "QL4_8", "QL4_14", "QL4_17", "QL4_18", "QL4_19",
        "QL5_1", "QL5_2", "QL5_3", "QL5_6", "QL5_7", "QL6_5", "QL6_7", "QL6_10", "QL7_1",
        "QL7_2", "QL7_3", "QL8_1", "QL8_2", "QL8_3", "QL8_4", "QL9_1", "QL9_2", "QL9_3",
        "QL10_1",
    ];
    let entries = load_catalog().unwrap();
    let mut computed = BTreeSet::new();
    for e in entries.iter().filter(|e| !e.is_lanner()) {
        let g = steinberg_growth(&e.matrix).unwrap();
        let (dr, ds) = g.complete.degrees;
        if dr == ds + 1 {
            computed.insert(e.label.clone());
        }
        // single infinite special subgroup forces the difference 1
        let poset = infinite_poset(&e.matrix).unwrap();
        if poset.inf == 1 {
            assert_eq!(dr, ds + 1, "{}: Inf = 1 but degree difference is not 1", e.label);
        }
    }
    let published: BTreeSet<String> = PUBLISHED.iter().map(|s| s.to_string()).collect();
    let extra: Vec<&String> = computed.difference(&published).collect();
    let missing: Vec<&String> = published.difference(&computed).collect();
    let pass = missing.is_empty() && extra == [&"QL6_2".to_string()];
    criterion_line(
        3,
        pass,
        &format!(
            "all 28 published labels have deg R - deg S = 1; the published list omits QL6_2 \
             (its table row prints degrees (33, 32) and Inf = 1, forcing difference 1); \
             extra beyond published: {extra:?}, missing: {missing:?}"
        ),
    );
}

/// 4. Euler characteristics: zero for even-vertex quasi-Lanner entries,
/// printed rationals reproduced exactly (table orientation).
#[test]
fn criterion_4_euler_characteristics() {
    let entries = load_catalog().unwrap();
    let mut failures = Vec::new();
    let mut flagged = Vec::new();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).unwrap();
        let euler = check_euler(&e.matrix, &g).unwrap();
        if e.matrix.rank() % 2 == 0 && !euler.chi.is_zero() {
            failures.push(format!("{}: chi != 0 on even rank", e.label));
        }
        if let Some(printed) = &e.expected.chi {
            match &e.expected.chi_corrected {
                Some(corrected) => {
                    if euler.chi_table != *corrected {
                        failures.push(format!("{}: chi vs corrected value", e.label));
                    } else {
                        flagged.push(format!("{} (printed {} -> corrected {})", e.label, printed, corrected));
                    }
                }
                None => {
                    if euler.chi_table != *printed {
                        failures.push(format!(
                            "{}: chi {} vs printed {}",
                            e.label, euler.chi_table, printed
                        ));
                    }
                }
            }
        }
    }
    // spot values straight from the published tables (L5_2's printed
    // 17/28880 is a digit typo covered by the annotation above; the exact
    // value carries only the primes of the subgroup orders)
    for (label, chi) in [
        ("L5_1", "1/14400"),
        ("L5_2", "17/28800"),
        ("L5_3", "13/7200"),
        ("L5_4", "17/14400"),
        ("L5_5", "11/5760"),
        ("QL5_1", "-1/1152"),
        ("QL5_3", "-1/1920"),
    ] {
        let e = lookup(label).unwrap();
        let g = steinberg_growth(&e.matrix).unwrap();
        let euler = check_euler(&e.matrix, &g).unwrap();
        let expected: BigRational = {
            let parts: Vec<&str> = chi.split('/').collect();
            BigRational::new(parts[0].parse().unwrap(), parts[1].parse().unwrap())
        };
        if euler.chi_table != expected {
            failures.push(format!("{label}: spot chi"));
        }
    }
    criterion_line(
        4,
        failures.is_empty(),
        &format!(
            "chi = 0 on every even-vertex entry and printed rationals match; annotated misprint: {flagged:?}; failures: {failures:?}"
        ),
    );
}

/// 5. Reciprocity: anti-reciprocal L4, reciprocal L5, neither for QL.
#[test]
fn criterion_5_reciprocity() {
    let entries = load_catalog().unwrap();
    let mut failures = Vec::new();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).unwrap();
        let r = check_reciprocity(&e.matrix, &g).unwrap();
        let expected = match e.family() {
            "L4" => FunctionReciprocity::AntiReciprocal,
            "L5" => FunctionReciprocity::Reciprocal,
            _ => FunctionReciprocity::Neither,
        };
        if r.classification != expected {
            failures.push(format!("{}: {:?}", e.label, r.classification));
        }
        if e.is_lanner() && r.pass != Some(true) {
            failures.push(format!("{}: parity rule", e.label));
        }
    }
    criterion_line(
        5,
        failures.is_empty(),
        &format!(
            "W(1/t) = -W(t) on L4, W(1/t) = W(t) on L5, neither on all 57 QL; failures: {failures:?}"
        ),
    );
}

/// 6. Pole tables reproduced to 5e-5 per value; discrepancies only on the
/// annotated entries, where they flag.
#[test]
fn criterion_6_pole_tables() {
    let entries = load_catalog().unwrap();
    let mut failures = Vec::new();
    let mut flagged = Vec::new();
    let mut compared = 0;
    for e in &entries {
        let Some(expected) = &e.expected.poles else { continue };
        compared += 1;
        let g = steinberg_growth(&e.matrix).unwrap();
        let report = pole_report(&g, 1e-8).unwrap();
        let cmp = compare_poles(expected, &e.expected.notes, &report, 5e-5);
        if !cmp.ok {
            failures.push(format!("{}: {:?}", e.label, cmp.flags));
        } else if !cmp.flags.is_empty() {
            flagged.push(format!("{}: {:?}", e.label, cmp.flags));
        }
    }
    let pass = failures.is_empty() && compared == 62;
    criterion_line(
        6,
        pass,
        &format!(
            "{compared} printed pole tables match to 5e-5; annotated flags: {}; failures: {failures:?}",
            flagged.len()
        ),
    );
    for f in &flagged {
        println!("  pole flag: {f}");
    }
}

/// 7. Oracle agreement: series prefixes against Cayley-graph BFS counts.
#[test]
fn criterion_7_oracle_agreement() {
    let entries = load_catalog().unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    // all L4 and QL4 entries at length 8
    for e in entries.iter().filter(|e| e.matrix.rank() == 4) {
        let g = steinberg_growth(&e.matrix).unwrap();
        let series = g.series_prefix(8).unwrap();
        let counts = cayley_count(&e.matrix, 8).unwrap();
        if series.iter().zip(&counts).any(|(s, &c)| *s != BigInt::from(c)) {
            failures.push(e.label.clone());
        }
        checked += 1;
    }
    // ten random indefinite diagrams of rank <= 4
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut random_checked = 0;
    while random_checked < 10 {
        let rank = rng.gen_range(3..=4usize);
        let mut bonds = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                let order = match rng.gen_range(0..8u32) {
                    0 => continue,
                    7 => BondOrder::Infinity,
                    k => BondOrder::Finite(k + 1), // 2..=7
                };
                bonds.push((i, j, order));
            }
        }
        let m = CoxeterMatrix::from_bonds(rank, &bonds).unwrap();
        match group_type(&m) {
            GroupType::Finite(_) | GroupType::Affine { .. } => continue,
            _ => {}
        }
        let g = steinberg_growth(&m).unwrap();
        let series = g.series_prefix(8).unwrap();
        let counts = cayley_count(&m, 8).unwrap();
        if series.iter().zip(&counts).any(|(s, &c)| *s != BigInt::from(c)) {
            failures.push(format!("random#{random_checked}"));
        }
        random_checked += 1;
        checked += 1;
    }
    // every spherical type of rank <= 4: full enumeration vs the exponents
    let spherical: Vec<(&str, Vec<FiniteType>)> = vec![
        ("A1", vec![FiniteType::A(1)]),
        ("A2", vec![FiniteType::A(2)]),
        ("A3", vec![FiniteType::A(3)]),
        ("A4", vec![FiniteType::A(4)]),
        ("B2", vec![FiniteType::B(2)]),
        ("B3", vec![FiniteType::B(3)]),
        ("B4", vec![FiniteType::B(4)]),
        ("D4", vec![FiniteType::D(4)]),
        ("F4", vec![FiniteType::F4]),
        ("G2", vec![FiniteType::G2]),
        ("H3", vec![FiniteType::H3]),
        ("H4", vec![FiniteType::H4]),
        ("I2(5)", vec![FiniteType::I2(5)]),
        ("I2(7)", vec![FiniteType::I2(7)]),
    ];
    for (name, types) in &spherical {
        let m = diagram_of_finite_type(&types[0]);
        let counts = cayley_count_full(&m, 100_000).unwrap();
        let poly = finite_growth(types);
        let ok = counts.len() == poly.degree().unwrap() + 1
            && counts
                .iter()
                .enumerate()
                .all(|(k, &c)| poly.coeff(k) == BigInt::from(c));
        if !ok {
            failures.push(format!("spherical {name}"));
        }
        checked += 1;
    }
    criterion_line(
        7,
        failures.is_empty(),
        &format!("BFS oracle agrees on {checked} diagrams (31 catalog + 10 random + 14 spherical); failures: {failures:?}"),
    );
}

fn diagram_of_finite_type(t: &FiniteType) -> CoxeterMatrix {
    let path = |labels: &[u32]| {
        let bonds: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (i, i + 1, BondOrder::Finite(l)))
            .collect();
        CoxeterMatrix::from_bonds(labels.len() + 1, &bonds).unwrap()
    };
    match t {
        FiniteType::A(1) => CoxeterMatrix::from_bonds(1, &[]).unwrap(),
        FiniteType::A(n) => path(&vec![3; *n as usize - 1]),
        FiniteType::B(n) => {
            let mut labels = vec![3; *n as usize - 1];
            labels[*n as usize - 2] = 4;
            path(&labels)
        }
        FiniteType::D(4) => CoxeterMatrix::from_bonds(
            4,
            &[
                (0, 1, BondOrder::Finite(3)),
                (0, 2, BondOrder::Finite(3)),
                (0, 3, BondOrder::Finite(3)),
            ],
        )
        .unwrap(),
        FiniteType::F4 => path(&[3, 4, 3]),
        FiniteType::G2 => path(&[6]),
        FiniteType::H3 => path(&[5, 3]),
        FiniteType::H4 => path(&[5, 3, 3]),
        FiniteType::I2(m) => path(&[*m]),
        other => panic!("no diagram builder for {other:?}"),
    }
}

/// 8. Closed formulas against the recursion: triangles, affine products,
/// polygons.
#[test]
fn criterion_8_formula_cross_checks() {
    let mut failures = Vec::new();
    // 50 random triangles with labels <= 12 or infinity
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 50 {
        let label = |rng: &mut ChaCha8Rng| match rng.gen_range(0..12u32) {
            11 => BondOrder::Infinity,
            k => BondOrder::Finite(k + 2), // 2..=12
        };
        let (p, q, r) = (label(&mut rng), label(&mut rng), label(&mut rng));
        let twos = [p, q, r].iter().filter(|l| **l == BondOrder::Finite(2)).count();
        if twos > 1 {
            continue;
        }
        let direct = triangle_growth(p, q, r).unwrap();
        let m = triangle_matrix(p, q, r).unwrap();
        let recursive = steinberg_growth(&m).unwrap().reduced;
        if direct != recursive {
            failures.push(format!("triangle {p:?},{q:?},{r:?}"));
        }
        done += 1;
    }
    // affine closed forms
    let affine_cases = [
        ("A~2", "vertices 3\nedge 1 2\nedge 2 3\nedge 1 3"),
        ("B~2", "vertices 3\nedge 1 2 4\nedge 2 3 4"),
        ("G~2", "vertices 3\nedge 1 2 6\nedge 2 3"),
        ("A~3", "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 1 4"),
    ];
    for (name, text) in affine_cases {
        let m = coxgrowth::diagram::parse_diagram(text).unwrap();
        if affine_growth_of(&m).unwrap() != steinberg_growth(&m).unwrap().reduced {
            failures.push(format!("affine {name}"));
        }
    }
    // acceptable polygons of length 3 and 4 with labels <= 7
    let mut polygon_checked = 0;
    for a in 2..=7u32 {
        for b in a..=7 {
            for c in b..=7 {
                let labels = [a, b, c];
                if !polygon_labels_acceptable(&labels) {
                    continue;
                }
                let w = polygon_growth(&labels).unwrap();
                let m = polygon_matrix(&labels).unwrap();
                if w != steinberg_growth(&m).unwrap().reduced {
                    failures.push(format!("polygon {labels:?}"));
                }
                polygon_checked += 1;
            }
        }
    }
    for a in 2..=7u32 {
        for b in 2..=7 {
            for c in b..=7 {
                for d in c..=7 {
                    let labels = [a, b, c, d];
                    if !polygon_labels_acceptable(&labels) {
                        continue;
                    }
                    let w = polygon_growth(&labels).unwrap();
                    let m = polygon_matrix(&labels).unwrap();
                    if w != steinberg_growth(&m).unwrap().reduced {
                        failures.push(format!("polygon {labels:?}"));
                    }
                    polygon_checked += 1;
                }
            }
        }
    }
    criterion_line(
        8,
        failures.is_empty(),
        &format!(
            "50 triangles, 4 affine forms, {polygon_checked} polygons agree with the recursion; failures: {failures:?}"
        ),
    );
}

/// 9. Exact algebra invariants.
#[test]
fn criterion_9_algebra_invariants() {
    let mut failures = Vec::new();
    // [n][n'] = [2n] for n <= 100
    for n in 1..=100u32 {
        if &bracket_poly(n) * &primed_poly(n) != bracket_poly(2 * n) {
            failures.push(format!("[{n}][{n}']"));
        }
    }
    // cyclotomic round trips on random multisets (indices <= 60, mult <= 3)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..40 {
        let mut multiset = CycloMultiset::one();
        for _ in 0..rng.gen_range(1..=6) {
            multiset.push(rng.gen_range(2..=60u32), rng.gen_range(1..=3u32));
        }
        let expanded = multiset.expand();
        match factor_into_cyclotomics(&expanded) {
            Ok(again) => {
                if again != multiset {
                    failures.push(format!("cyclotomic roundtrip #{case}"));
                }
            }
            Err(_) => failures.push(format!("cyclotomic factor #{case}")),
        }
    }
    // cyclotomic product identity for brackets up to 200
    for n in 1..=200u32 {
        let product: IntPolynomial = CycloMultiset::from_bracket(n).expand();
        if product != bracket_poly(n) {
            failures.push(format!("[{n}] as cyclotomic product"));
        }
    }
    let _ = cyclotomic(200);
    // invert_variable involution on random rational functions
    for case in 0..100 {
        let rand_poly = |rng: &mut ChaCha8Rng| {
            let deg = rng.gen_range(0..6usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4..=4i64)).collect();
            IntPolynomial::from_i64(&coeffs)
        };
        let mut num = rand_poly(&mut rng);
        while num.is_zero() {
            num = rand_poly(&mut rng);
        }
        let mut den = rand_poly(&mut rng);
        while den.is_zero() {
            den = rand_poly(&mut rng);
        }
        let f = RationalFunction::new(num, den).unwrap();
        let twice = f.invert_variable().unwrap().invert_variable().unwrap();
        if twice != f {
            failures.push(format!("involution #{case}"));
        }
    }
    // epsilon identities up to 15
    for n in 1..=15 {
        if !check_epsilon_identities(n).unwrap() {
            failures.push(format!("epsilon n={n}"));
        }
    }
    criterion_line(9, failures.is_empty(), &format!("all exact; failures: {failures:?}"));
}

/// Series prefix coefficients are nonnegative, start at 1, and count the
/// generators at degree 1, across the catalog.
#[test]
fn series_prefix_sanity_across_catalog() {
    let entries = load_catalog().unwrap();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).unwrap();
        let coeffs = g.series_prefix(8).unwrap();
        assert_eq!(coeffs[0], BigInt::one(), "{}", e.label);
        assert_eq!(coeffs[1], BigInt::from(e.matrix.rank() as i64), "{}", e.label);
        assert!(coeffs.iter().all(|c| c >= &BigInt::zero()), "{}", e.label);
    }
}

/// The finite recursion with the t^M term reproduces the Poincare
/// polynomial for every spherical type of rank <= 4: summing
/// eps(X)/W_X(t) over all subsets equals t^M / W_D(t).
#[test]
fn finite_recursion_reproduces_finite_growth() {
    let types = [
        FiniteType::A(2),
        FiniteType::A(3),
        FiniteType::A(4),
        FiniteType::B(2),
        FiniteType::B(3),
        FiniteType::B(4),
        FiniteType::D(4),
        FiniteType::F4,
        FiniteType::G2,
        FiniteType::H3,
        FiniteType::H4,
        FiniteType::I2(7),
    ];
    for t in &types {
        let m = diagram_of_finite_type(t);
        let w = RationalFunction::from_poly(finite_growth(std::slice::from_ref(t)));
        let mut sum = RationalFunction::zero();
        for mask in 0u32..(1 << m.rank()) {
            let x = coxgrowth::diagram::VertexSubset::new(mask, m.rank());
            let sub = m.induced_submatrix(x).unwrap();
            let types = coxgrowth::classify::finite_component_types(&sub).unwrap();
            let wx = RationalFunction::from_poly(finite_growth(&types));
            let term = &RationalFunction::one() / &wx;
            sum = if x.len() % 2 == 0 { &sum + &term } else { &sum - &term };
        }
        let max_len = t.max_length() as usize;
        let expected = &RationalFunction::from_poly(IntPolynomial::monomial(max_len)) / &w;
        assert_eq!(sum, expected, "{t:?}");
    }
}

/// Affine closed form equals the recursion for the four listed diagrams
/// (already in criterion 8, kept as a direct identity check).
#[test]
fn affine_equals_steinberg_invariant() {
    for text in [
        "vertices 3\nedge 1 2\nedge 2 3\nedge 1 3",
        "vertices 3\nedge 1 2 4\nedge 2 3 4",
        "vertices 3\nedge 1 2 6\nedge 2 3",
        "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 1 4",
    ] {
        let m = coxgrowth::diagram::parse_diagram(text).unwrap();
        assert_eq!(affine_growth_of(&m).unwrap(), steinberg_growth(&m).unwrap().reduced);
    }
}

/// Virgin-form divisibility and complete-form consistency across the
/// catalog, plus classification of every entry matching its family.
#[test]
fn structural_invariants_across_catalog() {
    let entries = load_catalog().unwrap();
    for e in &entries {
        let g = steinberg_growth(&e.matrix).unwrap();
        assert!(coxgrowth::verify::check_complete_form_consistency(&g), "{}", e.label);
        assert!(coxgrowth::verify::check_virgin_divisibility(&g), "{}", e.label);
        let expected = if e.is_lanner() { GroupType::Lanner } else { GroupType::QuasiLanner };
        assert_eq!(group_type(&e.matrix), expected, "{}", e.label);
        // every quasi-Lanner infinite proper subgroup is affine of corank 1
        if !e.is_lanner() {
            let poset = infinite_poset(&e.matrix).unwrap();
            for &(x, _) in &poset.elements {
                if x.len() < e.matrix.rank() {
                    assert_eq!(x.len(), e.matrix.rank() - 1, "{}", e.label);
                    let sub = e.matrix.induced_submatrix(x).unwrap();
                    let comps = coxgrowth::classify::classify_components(&sub);
                    assert!(
                        comps.iter().all(|c| !matches!(c, ConnectedType::Indefinite)),
                        "{}",
                        e.label
                    );
                    assert!(
                        comps.iter().any(|c| matches!(c, ConnectedType::Affine(_))),
                        "{}",
                        e.label
                    );
                }
            }
        }
    }
}

/// The affine component oracle: Bott's product for A~1 is the closed
/// geometric series and classify agrees.
#[test]
fn affine_a1_tilde_example() {
    let m = coxgrowth::diagram::parse_diagram("vertices 2\nedge 1 2 inf").unwrap();
    assert_eq!(
        classify_connected(&m).unwrap(),
        ConnectedType::Affine(AffineType::A1t)
    );
    let w = affine_growth_of(&m).unwrap();
    let coeffs = series_prefix(&w, 5).unwrap();
    let expected: Vec<BigInt> = [1i64, 2, 2, 2, 2, 2].iter().map(|&c| BigInt::from(c)).collect();
    assert_eq!(coeffs, expected);
}
