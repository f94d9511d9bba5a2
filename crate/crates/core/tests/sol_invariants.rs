use std::sync::OnceLock;

use proptest::prelude::*;
use solgrowth::automata::Sym;
use solgrowth::oracle::{ball_bfs, class_minimum, min_size_over_class};
use solgrowth::sol_language::{acceptor_rni, divergence, psi_inverse, shrink_representative};
use solgrowth::solgroup::{geodesic_length, geodesic_word};
use solgrowth::{Automaton, GroupParams, GroupWord, LaurentPoly, SolConstants, XElement};

fn arb_trace() -> impl Strategy<Value = i64> {
    prop_oneof![Just(3i64), Just(-3), Just(4), Just(-5)]
}

fn arb_x(max_coeff: i64) -> impl Strategy<Value = XElement> {
    (
        prop::collection::btree_map(-4i64..=4, -max_coeff..=max_coeff, 0..5),
        -3i64..=3,
    )
        .prop_map(|(terms, h)| XElement::new(LaurentPoly::from_terms(terms), h))
}

fn arb_group_word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(prop::sample::select(vec!['a', 'A', 't', 'T']), 0..=max_len)
        .prop_map(|cs| cs.into_iter().collect::<String>().parse().unwrap())
}

fn rni() -> &'static Automaton {
    static M: OnceLock<Automaton> = OnceLock::new();
    M.get_or_init(|| acceptor_rni(2, 1, 3).unwrap())
}

fn syms(x: &XElement, n: u32) -> Vec<Sym> {
    psi_inverse(x, n).unwrap().to_syms(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psi_inverse_round_trips(x in arb_x(6)) {
        let w = psi_inverse(&x, 6).unwrap();
        prop_assert_eq!(w.psi(), x.clone());
        prop_assert_eq!(w.weight(), x.size());
        let back = solgrowth::SolWord::from_syms(&w.to_syms(6).unwrap(), 6).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn coefficients_above_the_bound_are_rejected(x in arb_x(6)) {
        prop_assert_eq!(psi_inverse(&x, 2).is_ok(), x.utype.max_abs_coeff() <= 2);
    }

    #[test]
    fn divergence_is_symmetric(x in arb_x(4), y in arb_x(4)) {
        let (u, v) = (psi_inverse(&x, 4).unwrap(), psi_inverse(&y, 4).unwrap());
        prop_assert_eq!(divergence(&u, &v), divergence(&v, &u));
        prop_assert_eq!(divergence(&u, &u), 0);
    }

    #[test]
    fn division_acceptor_is_symmetric(x in arb_x(2), y in arb_x(2)) {
        let (u, v) = (syms(&x, 2), syms(&y, 2));
        prop_assert_eq!(rni().accepts(&[&u, &v]).unwrap(), rni().accepts(&[&v, &u]).unwrap());
        prop_assert!(rni().accepts(&[&u, &u]).unwrap());
    }

    #[test]
    fn class_minimum_gives_a_geodesic(x in arb_x(5), t in arb_trace()) {
        let m = class_minimum(&x, t).unwrap();
        prop_assert!(m.representative.equivalent(&x, t).unwrap());
        prop_assert!(m.size <= x.size());
        prop_assert_eq!(geodesic_length(&m.representative), m.size - 1);
        let g = geodesic_word(&m.representative);
        prop_assert_eq!(g.len() as u64, m.size - 1);
        prop_assert!(g.eval().equivalent(&x, t).unwrap());
    }

    #[test]
    fn norm_is_inversion_invariant(w in arb_group_word(10), t in arb_trace()) {
        let a = min_size_over_class(&w.eval(), t).unwrap();
        let b = min_size_over_class(&w.inverse().eval(), t).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a - 1 <= w.len() as u64);
    }

    #[test]
    fn shrinking_keeps_the_element(x in arb_x(8), t in arb_trace()) {
        let consts = SolConstants::new(t, 0).unwrap();
        let w = psi_inverse(&x, consts.n as u32).unwrap();
        let out = shrink_representative(&w, &consts);
        prop_assert!(out.psi().equivalent(&w.psi(), t).unwrap());
        prop_assert!(out.weight() <= w.weight());
        prop_assert!(out.max_abs_coeff() <= consts.n);
        if out != w {
            prop_assert!(out.weight() < w.weight());
            prop_assert!(out.tail_len().abs_diff(w.tail_len()) as u64 <= consts.l);
            prop_assert!(out.head_len().abs_diff(w.head_len()) as u64 <= consts.l);
            prop_assert!(divergence(&w, &out) <= consts.k);
        }
        let minimal = min_size_over_class(&x, t).unwrap() == x.size();
        prop_assert!(!minimal || out == w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sphere_counts_ignore_generator_order(t in arb_trace(), swap in any::<bool>()) {
        let mut gens: Vec<GroupWord> = ["a", "t", "at"].iter().map(|s| s.parse().unwrap()).collect();
        let base = ball_bfs(t, &gens, 5).unwrap();
        if swap {
            gens.reverse();
        }
        gens.push("TA".parse().unwrap());
        let other = ball_bfs(t, &gens, 5).unwrap();
        prop_assert_eq!(base.counts, other.counts);
    }

    #[test]
    fn equal_words_agrees_with_geodesics(w in arb_group_word(12), t in arb_trace()) {
        let p = GroupParams::new(t).unwrap();
        let g = geodesic_word(&class_minimum(&w.eval(), t).unwrap().representative);
        prop_assert!(p.equal_words(&w, &g).unwrap());
        prop_assert_eq!(p.eval_element(&w).unwrap(), p.eval_element(&g).unwrap());
    }
}

#[test]
fn language_series_match_counts() {
    for n in [1, 2, 5, 15] {
        for strict in [true, false] {
            let m = solgrowth::sol_language::build_ln(n, strict).unwrap();
            let s = m.growth_series().unwrap();
            assert_eq!(
                s.coefficients(13).unwrap(),
                m.count_by_weight(12).unwrap(),
                "n = {n}"
            );
        }
    }
}
