mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use solgrowth::automata::Sym;
use solgrowth::{Alphabet, Automaton};

use common::{random_automaton, random_two_tape, simulate, words_up_to};

fn alphabet() -> Alphabet {
    Alphabet::new([("a", 1), ("b", 1), ("c", 2)]).unwrap()
}

fn same_language(m1: &Automaton, m2: &Automaton, words: &[Vec<Sym>]) -> bool {
    words
        .iter()
        .all(|w| simulate(m1, &[w]) == simulate(m2, &[w]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimization_is_canonical(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alphabet();
        let m = random_automaton(&mut rng, &a, 5);
        let det = m.determinize().unwrap();
        let min = det.minimize().unwrap();
        prop_assert!(det.is_deterministic() && min.is_deterministic());
        prop_assert!(min.num_states() <= det.num_states());
        prop_assert_eq!(min.minimize().unwrap().num_states(), min.num_states());
        // Determinizing the reversal twice lands on the same minimal size.
        let via_reverse = m.reverse().unwrap().determinize().unwrap().reverse().unwrap().determinize().unwrap();
        prop_assert_eq!(via_reverse.minimize().unwrap().num_states(), min.num_states());
        let words = words_up_to(&a, 6);
        prop_assert!(same_language(&m, &min, &words));
    }

    #[test]
    fn de_morgan(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alphabet();
        let (m1, m2) = (random_automaton(&mut rng, &a, 4), random_automaton(&mut rng, &a, 4));
        let lhs = m1.union(&m2).unwrap().complement().unwrap();
        let rhs = m1.complement().unwrap().intersect(&m2.complement().unwrap()).unwrap();
        prop_assert!(same_language(&lhs, &rhs, &words_up_to(&a, 6)));
        prop_assert!(m1.intersect(&m1.complement().unwrap()).unwrap().is_empty_language());
    }

    #[test]
    fn growth_series_counts_words(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alphabet();
        let m = random_automaton(&mut rng, &a, 4).determinize().unwrap().minimize().unwrap();
        let series = m.growth_series().unwrap();
        let mut brute = vec![0i128; 9];
        for w in words_up_to(&a, 8) {
            if simulate(&m, &[&w]) {
                brute[a.word_weight(&w) as usize] += 1;
            }
        }
        prop_assert_eq!(series.coefficients(9).unwrap(), brute.clone());
        prop_assert_eq!(m.count_by_weight(8).unwrap(), brute);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_two_tape(&mut rng, &alphabet(), 3, false);
        let back = Automaton::from_json_str(&m.to_json_string()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn two_tape_reverse_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Alphabet::unit(["x", "y"]).unwrap();
        let m = random_two_tape(&mut rng, &a, 3, true);
        let rr = m.reverse().unwrap().reverse().unwrap();
        let words = words_up_to(&a, 4);
        for u in &words {
            for v in &words {
                prop_assert_eq!(simulate(&m, &[u, v]), simulate(&rr, &[u, v]));
            }
        }
    }
}
