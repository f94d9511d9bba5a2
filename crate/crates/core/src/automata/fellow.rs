use std::cmp::Ordering;
use std::sync::Arc;

use super::{explore, Alphabet, Automaton, Label, PAD};
use crate::error::Result;

/// Two-tape automaton accepting `(w1, w2)` when the weights of equal-length
/// prefixes never differ by more than `k` and `w1` is strictly heavier.
///
/// States record the running weight difference and which tapes have ended;
/// pairs that drift too far go to a failure sink.
pub fn fellow_traveler_automaton(k: u64, alphabet: &Alphabet) -> Result<Automaton> {
    let k = k as i64;
    let alphabet = Arc::new(alphabet.clone());
    let labels: Vec<Vec<Label>> = (0..4u8)
        .map(|m| Label::all_valid(2, alphabet.len(), m))
        .collect();
    let w = |s| alphabet.weight(s) as i64;
    explore(
        2,
        alphabet.clone(),
        (Some(0i64), 0u8),
        |&(diff, mask), out| {
            for &l in &labels[mask as usize] {
                let next = diff
                    .map(|d| d + w(l.slot(0)) - w(l.slot(1)))
                    .filter(|d| d.abs() <= k);
                out.push((l, (next, mask | l.pad_mask(2))));
            }
            Ok(diff.is_some_and(|d| d > 0))
        },
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slex {
    Equal,
    Less,
    Greater,
    Shorter,
}

/// Two-tape automaton accepting `(w1, w2)` when `w1` comes strictly before
/// `w2` in short-lex order: shorter words first, equal lengths compared at
/// the first differing letter by alphabet index.
pub fn shortlex_automaton(alphabet: &Alphabet) -> Result<Automaton> {
    let alphabet = Arc::new(alphabet.clone());
    let n = alphabet.len() as u16;
    explore(2, alphabet, Slex::Equal, |&st, out| {
        for b in 0..n {
            out.push((Label::new(&[PAD, b]), Slex::Shorter));
        }
        if st != Slex::Shorter {
            for a in 0..n {
                for b in 0..n {
                    let next = match (st, a.cmp(&b)) {
                        (Slex::Equal, Ordering::Less) => Slex::Less,
                        (Slex::Equal, Ordering::Greater) => Slex::Greater,
                        (s, _) => s,
                    };
                    out.push((Label::new(&[a, b]), next));
                }
            }
        }
        Ok(matches!(st, Slex::Less | Slex::Shorter))
    })
}

/// Builds the minimal cross section of a partition of `l` described by the
/// acceptor `r`, following the falsification-by-fellow-traveler argument:
///
/// 1. discard words of `l_prime` that have a lighter `k`-fellow-travelling
///    partner in `l` related by `r`;
/// 2. among the survivors, keep the short-lex least word of each class.
///
/// The output is a minimal cross section only when `(l, r, l_prime, k)`
/// actually has the falsification by fellow traveler property; this is not
/// checked. The result is deterministic and trimmed.
pub fn minimal_cross_section(
    l: &Automaton,
    l_prime: &Automaton,
    r: &Automaton,
    k: u64,
) -> Result<Automaton> {
    let ft = fellow_traveler_automaton(k, l.alphabet())?.trim();
    let pairs = Automaton::product_tapes(&[l, l])?;
    let lk = r.intersect(&ft)?.trim().intersect(&pairs)?.trim();
    let has_lighter = lk.project_exists(1)?;
    let l2 = l_prime
        .intersect(l)?
        .intersect(&has_lighter.complement()?)?
        .determinize()?
        .trim();
    let ordered = Automaton::product_tapes(&[&l2, &l2])?
        .intersect(&shortlex_automaton(l2.alphabet())?)?
        .trim()
        .intersect(r)?
        .trim();
    let beaten = ordered.project_exists(0)?;
    Ok(l2
        .intersect(&beaten.complement()?)?
        .determinize()?
        .minimize()?
        .renumber())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Sym;

    fn all_words(n: Sym, max_len: usize) -> Vec<Vec<Sym>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Sym>| {
                    (0..n).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn fellow_travel(a: &Alphabet, u: &[Sym], v: &[Sym], k: i64) -> bool {
        let m = u.len().max(v.len());
        (0..=m).all(|j| {
            let su = a.word_weight(&u[..j.min(u.len())]) as i64;
            let sv = a.word_weight(&v[..j.min(v.len())]) as i64;
            (su - sv).abs() <= k
        })
    }

    #[test]
    fn fellow_traveler_matches_definition() {
        let a = Alphabet::new([("x", 1), ("y", 2)]).unwrap();
        for k in 0..3 {
            let m = fellow_traveler_automaton(k, &a).unwrap();
            assert!(m.is_deterministic());
            assert!(m.padding_is_persistent());
            let words = all_words(2, 5);
            for u in &words {
                for v in &words {
                    let expect =
                        fellow_travel(&a, u, v, k as i64) && a.word_weight(u) > a.word_weight(v);
                    assert_eq!(m.accepts(&[u, v]).unwrap(), expect, "k={k} u={u:?} v={v:?}");
                }
            }
        }
    }

    #[test]
    fn shortlex_is_a_strict_total_order() {
        let a = Alphabet::unit(["x", "y", "z"]).unwrap();
        let m = shortlex_automaton(&a).unwrap();
        let words = all_words(3, 3);
        for u in &words {
            for v in &words {
                let expect = (u.len(), u) < (v.len(), v);
                assert_eq!(m.accepts(&[u, v]).unwrap(), expect);
            }
        }
    }

    fn equal_length_acceptor(a: &Alphabet) -> Automaton {
        let n = a.len() as Sym;
        let trans: Vec<_> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (0, Label::new(&[x, y]), 0)))
            .collect();
        Automaton::from_parts(2, a.clone(), 1, 0, [0], trans).unwrap()
    }

    #[test]
    fn toy_cross_section_is_x_star() {
        let a = Alphabet::unit(["x", "y"]).unwrap();
        let l = Automaton::universal(a.clone());
        let r = equal_length_acceptor(&a);
        let cs = minimal_cross_section(&l, &l, &r, 0).unwrap();
        let got = cs.enumerate(6);
        let expect: Vec<Vec<Vec<Sym>>> = (0..=6).map(|n| vec![vec![0; n]]).collect();
        assert_eq!(got, expect);
        let s = cs.growth_series().unwrap();
        assert_eq!(s.numerator, vec![1]);
        assert_eq!(s.denominator, vec![1, -1]);
    }

    #[test]
    fn cross_section_corner_cases() {
        let a = Alphabet::unit(["x", "y"]).unwrap();
        let r = equal_length_acceptor(&a);
        let empty = Automaton::empty(1, a.clone());
        let cs = minimal_cross_section(&empty, &empty, &r, 1).unwrap();
        assert!(cs.is_empty_language());

        let one_per_class =
            Automaton::from_words(a.clone(), &[vec![], vec![1], vec![0, 1], vec![1, 1, 0]]);
        let cs = minimal_cross_section(&one_per_class, &one_per_class, &r, 0).unwrap();
        assert_eq!(cs.enumerate(10), one_per_class.enumerate(10));
    }
}
