use std::collections::BTreeSet;

use super::{build_ln, remainder_bound, sol_alphabet, SolLetter};
use crate::automata::{explore, Automaton, Label, Sym};
use crate::error::{Error, Result};
use crate::solgroup::GroupParams;

/// Position within a word, read from the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Part {
    Head,
    Tail,
    /// Positive center.
    Pos,
    /// Negative center, one letter read so far.
    NegOne,
    /// Negative center, at least two letters read.
    Neg,
}

fn step(part: Part, kind: i8) -> Option<Part> {
    use Part::*;
    match (part, kind) {
        (Head, 2) => Some(Head),
        (Tail, 2) => Some(Tail),
        (Head, 1) => Some(Pos),
        (Head, -1) => Some(NegOne),
        (Pos, 1) => Some(Pos),
        (Pos, 2) | (Neg, 2) => Some(Tail),
        (NegOne, -1) | (Neg, -1) => Some(Neg),
        _ => None,
    }
}

/// Estimated state count of the right-to-left division automaton for `n`:
/// five position labels per remainder `c1 z + c0` with `|ci| <= C`, plus
/// the failure state.
pub(crate) fn rn_prime_state_estimate(n: u64, trace: i64) -> u64 {
    let c = remainder_bound(trace, n);
    5 * (2 * c + 1).pow(2) + 1
}

type LetterPair = (i64, i64, Label);

/// Right-to-left long division of `psi'(w1) - psi'(w2)` by `1 - Tz + z^2`.
/// The state keeps the running remainder `r1 z + r0`; reading the aligned
/// coefficients `c1, c2` of the next lower degree maps it to
/// `(z r + c1 - c2) mod phi`.
fn division_automaton(n: u32, trace: i64) -> Result<Automaton> {
    let t = GroupParams::new(trace)?.trace();
    let bound = remainder_bound(t, n as u64) as i64;
    let alphabet = std::sync::Arc::new(sol_alphabet(n));
    let n = n as i64;
    // (kind, [(c1, c2, label)])
    let mut letters: Vec<(i8, Vec<LetterPair>)> = Vec::new();
    for kind in [-1i8, 1, 2] {
        let mut pairs = Vec::new();
        for c1 in -n..=n {
            for c2 in -n..=n {
                let s1 = SolLetter { c: c1, k: kind }.sym(n as u32)?;
                let s2 = SolLetter { c: c2, k: kind }.sym(n as u32)?;
                pairs.push((c1, c2, Label::new(&[s1, s2])));
            }
        }
        letters.push((kind, pairs));
    }
    explore(
        2,
        alphabet,
        (0i64, 0i64, Part::Head),
        |&(r1, r0, part), out| {
            for (kind, pairs) in &letters {
                let Some(next) = step(part, *kind) else {
                    continue;
                };
                let n1 = r0 + t * r1;
                if n1.abs() > bound {
                    continue;
                }
                for &(c1, c2, label) in pairs {
                    let n0 = c1 - c2 - r1;
                    if n0.abs() <= bound {
                        out.push((label, (n1, n0, next)));
                    }
                }
            }
            Ok(r1 == 0 && r0 == 0 && matches!(part, Part::Tail | Part::Pos | Part::Neg))
        },
    )
}

/// Acceptor for `R_n'`: pairs of `L_n'` words with the same class, the
/// same tail length and the same head length.
pub fn acceptor_rn_prime(n: u32, trace: i64) -> Result<Automaton> {
    if n == 0 {
        return Err(Error::Unsupported("acceptor needs n >= 1".into()));
    }
    division_automaton(n, trace)?
        .reverse()?
        .determinize()?
        .minimize()
}

/// Acceptor for `R_{n,i}`: pairs of `L_n` words in the same class whose
/// tail lengths and head lengths differ by at most `i`. Each word may be
/// extended by up to `i` letters `(0, 2)` at either end to line up with the
/// other, which reduces membership to [`acceptor_rn_prime`].
pub fn acceptor_rni(n: u32, i: u32, trace: i64) -> Result<Automaton> {
    let rp = acceptor_rn_prime(n, trace)?;
    let zero = SolLetter { c: 0, k: 2 }.sym(n)?;
    let q = |r: u32| -> Vec<Sym> { vec![zero; r as usize] };
    // (prefix, suffix) added to tape 0 and to tape 1
    let mut cases: BTreeSet<(u32, u32, u32, u32)> = BTreeSet::new();
    for r in 0..=i {
        for s in 0..=i {
            cases.insert((r, s, 0, 0));
            cases.insert((r, 0, 0, s));
            cases.insert((0, s, r, 0));
            cases.insert((0, 0, r, s));
        }
    }
    let ln = build_ln(n, true)?;
    let pairs = Automaton::product_tapes(&[&ln, &ln])?;
    let mut acc: Option<Automaton> = None;
    for (p0, s0, p1, s1) in cases {
        let part = rp
            .pad_tape(0, &q(p0), &q(s0))?
            .pad_tape(1, &q(p1), &q(s1))?
            .intersect(&pairs)?
            .minimize()?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.union(&part)?.minimize()?,
        });
    }
    Ok(acc.expect("at least one case"))
}
