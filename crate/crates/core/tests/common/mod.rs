//! Brute-force helpers shared by the integration tests. Nothing here calls
//! the library's own acceptance or enumeration routines.
#![allow(dead_code)]

use rand::Rng;
use solgrowth::automata::{Sym, PAD};
use solgrowth::{Alphabet, Automaton, Label};

/// Direct NFA simulation over the raw transition table.
pub fn simulate(m: &Automaton, words: &[&[Sym]]) -> bool {
    let len = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut cur = vec![m.start()];
    for i in 0..len {
        let slots: Vec<Sym> = words
            .iter()
            .map(|w| w.get(i).copied().unwrap_or(PAD))
            .collect();
        let label = Label::new(&slots);
        let mut next: Vec<u32> = cur
            .iter()
            .flat_map(|&q| {
                m.edges(q)
                    .iter()
                    .filter(|(l, _)| *l == label)
                    .map(|&(_, t)| t)
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        cur = next;
    }
    cur.iter().any(|&q| m.is_final(q))
}

/// Every word over `alphabet` of weight at most `max_weight`.
pub fn words_up_to(alphabet: &Alphabet, max_weight: u64) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        let w: Vec<Sym> = out[i].clone();
        let weight = alphabet.word_weight(&w);
        for s in 0..alphabet.len() as Sym {
            if weight + alphabet.weight(s) as u64 <= max_weight {
                let mut v = w.clone();
                v.push(s);
                out.push(v);
            }
        }
        i += 1;
    }
    out
}

/// A random nondeterministic one-tape automaton.
pub fn random_automaton(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for q in 0..n {
        for s in 0..alphabet.len() as Sym {
            for t in 0..n {
                if rng.gen_bool(0.3) {
                    trans.push((q as u32, Label::single(s), t as u32));
                }
            }
        }
    }
    let finals: Vec<u32> = (0..n as u32).filter(|_| rng.gen_bool(0.4)).collect();
    Automaton::from_parts(1, alphabet.clone(), n, 0, finals, trans).unwrap()
}

/// A random two-tape automaton with persistent padding: states `0..n`
/// read letter pairs, states `n..2n` have finished tape 1, and states
/// `2n..3n` have finished tape 0. With `bounded_lag` the padded part has
/// no cycles, so the tapes end at most `n` letters apart.
pub fn random_two_tape(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_states: usize,
    bounded_lag: bool,
) -> Automaton {
    let n = rng.gen_range(1..=max_states) as u32;
    let k = alphabet.len() as Sym;
    let mut trans = Vec::new();
    for q in 0..n {
        for t in 0..n {
            for a in 0..k {
                for b in 0..k {
                    if rng.gen_bool(0.15) {
                        trans.push((q, Label::new(&[a, b]), t));
                    }
                }
                if rng.gen_bool(0.2) {
                    trans.push((q, Label::new(&[a, PAD]), n + t));
                }
                if rng.gen_bool(0.2) {
                    trans.push((q, Label::new(&[PAD, a]), 2 * n + t));
                }
                if bounded_lag && t <= q {
                    continue;
                }
                if rng.gen_bool(0.3) {
                    trans.push((n + q, Label::new(&[a, PAD]), n + t));
                }
                if rng.gen_bool(0.3) {
                    trans.push((2 * n + q, Label::new(&[PAD, a]), 2 * n + t));
                }
            }
        }
    }
    let finals: Vec<u32> = (0..3 * n).filter(|_| rng.gen_bool(0.35)).collect();
    Automaton::from_parts(2, alphabet.clone(), 3 * n as usize, 0, finals, trans).unwrap()
}
