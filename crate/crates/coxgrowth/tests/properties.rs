//! Property tests for the exact-arithmetic core and the diagram layer.

use proptest::prelude::*;

use coxgrowth::diagram::{parse_diagram, BondOrder, CoxeterMatrix, VertexSubset};
use coxgrowth::polyalg::{IntPolynomial, RationalFunction, Reciprocity};

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=6, 1..7).prop_map(|c| IntPolynomial::from_i64(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), nonzero_poly())
        .prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

fn nonzero_rational() -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(), nonzero_poly())
        .prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

fn diagram() -> impl Strategy<Value = CoxeterMatrix> {
    (2usize..7)
        .prop_flat_map(|rank| {
            let pairs = rank * (rank - 1) / 2;
            prop::collection::vec(0u32..6, pairs).prop_map(move |labels| {
                let mut bonds = Vec::new();
                let mut it = labels.into_iter();
                for i in 0..rank {
                    for j in i + 1..rank {
                        let order = match it.next().unwrap() {
                            0 | 1 => continue,      // bond order 2: no edge
                            5 => BondOrder::Infinity,
                            k => BondOrder::Finite(k + 1), // 3, 4, 5
                        };
                        bonds.push((i, j, order));
                    }
                }
                CoxeterMatrix::from_bonds(rank, &bonds).unwrap()
            })
        })
}

proptest! {
    #[test]
    fn addition_has_exact_inverse(f in rational(), g in rational()) {
        let sum = &f + &g;
        prop_assert_eq!(&sum - &g, f);
    }

    #[test]
    fn multiplication_has_exact_inverse(f in rational(), g in nonzero_rational()) {
        let prod = &f * &g;
        prop_assert_eq!(&prod / &g, f);
    }

    #[test]
    fn invert_variable_is_an_involution(f in nonzero_rational()) {
        let twice = f.invert_variable().unwrap().invert_variable().unwrap();
        prop_assert_eq!(twice, f);
    }

    #[test]
    fn invert_variable_degree_bookkeeping(f in nonzero_rational()) {
        // the degree balance of f(1/t) mirrors the order of f at 0, and
        // the order of f(1/t) at 0 mirrors the degree balance of f
        let balance = |g: &RationalFunction| {
            g.num().degree().unwrap() as isize - g.den().degree().unwrap() as isize
        };
        let order_at_zero = |g: &RationalFunction| {
            g.num().valuation().unwrap() as isize - g.den().valuation().unwrap() as isize
        };
        let inv = f.invert_variable().unwrap();
        prop_assert_eq!(balance(&inv), -order_at_zero(&f));
        prop_assert_eq!(order_at_zero(&inv), -balance(&f));
    }

    #[test]
    fn reciprocity_multiplies_as_signs(
        p in nonzero_poly().prop_filter("nonzero at 0", |p| p.valuation() == Some(0)),
        q in nonzero_poly().prop_filter("nonzero at 0", |q| q.valuation() == Some(0)),
    ) {
        // p * t^(deg p) p(1/t) is palindromic whenever p(0) != 0
        let rec = |x: &IntPolynomial| {
            let d = x.degree().unwrap();
            &x.reverse_within(d) * x
        };
        let anti_factor: IntPolynomial = "t - 1".parse().unwrap();
        let r = rec(&p);
        let anti = &r * &anti_factor;
        prop_assert_eq!(r.reciprocity(), Reciprocity::Reciprocal);
        prop_assert_eq!(anti.reciprocity(), Reciprocity::AntiReciprocal);
        let rq = rec(&q);
        prop_assert_eq!((&anti * &rq).reciprocity(), Reciprocity::AntiReciprocal);
        prop_assert_eq!((&anti * &(&rq * &anti_factor)).reciprocity(), Reciprocity::Reciprocal);
    }

    #[test]
    fn parse_serialize_parse_is_a_fixpoint(m in diagram()) {
        let text = m.to_text();
        let reparsed = parse_diagram(&text).unwrap();
        prop_assert_eq!(&reparsed, &m);
        prop_assert_eq!(parse_diagram(&reparsed.to_text()).unwrap(), m);
    }

    #[test]
    fn diagram_json_round_trips(m in diagram()) {
        let json = serde_json::to_string(&m.to_json()).unwrap();
        let back = CoxeterMatrix::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn induced_submatrices_stay_symmetric(m in diagram(), mask in 0u32..64) {
        let mask = mask & ((1 << m.rank()) - 1);
        let sub = m.induced_submatrix(VertexSubset::new(mask, m.rank())).unwrap();
        for i in 0..sub.rank() {
            prop_assert_eq!(sub.bond(i, i), BondOrder::Finite(1));
            for j in 0..sub.rank() {
                prop_assert_eq!(sub.bond(i, j), sub.bond(j, i));
            }
        }
    }

    #[test]
    fn proper_subsets_cover_everything(m in diagram()) {
        let subsets: Vec<_> = m.proper_subsets().unwrap().collect();
        let distinct: std::collections::HashSet<u32> =
            subsets.iter().map(|s| s.mask()).collect();
        prop_assert_eq!(distinct.len(), (1usize << m.rank()) - 1);
    }

    #[test]
    fn components_partition_the_vertices(m in diagram()) {
        let comps = m.connected_components();
        let mut union = 0u32;
        for c in &comps {
            prop_assert_eq!(union & c.mask(), 0, "components overlap");
            union |= c.mask();
        }
        prop_assert_eq!(union, VertexSubset::full(m.rank()).mask());
    }
}
