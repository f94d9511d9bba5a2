use super::{poly_divergence, psi_inverse, SolConstants, SolWord};
use crate::laurent::{LaurentPoly, XElement};
use crate::oracle::class_minimum_limited;

/// State cap for the class search behind the quotient moves.
const SEARCH_STATES: usize = 2_000_000;

/// Finds a strictly lighter word in the class of `w` that stays close to it:
/// head and tail lengths within `L`, divergence at most `K`, coefficients at
/// most `N` (all from `consts`). Returns `w` unchanged when no such word is
/// found.
///
/// Moves are tried in order, the first acceptable one winning:
///
/// 1. a coefficient `|c_i| >= 5|T|` is reduced by adding `+-5 z^(i-1) phi`;
/// 2. otherwise the word is compared with a least representative of its
///    class, and the quotient `q` of the two types is cut down: dropping its
///    lowest or highest `L` degrees, cutting it at `min deg + L` or
///    `max deg - L` of the type with a one-term correction, and finally
///    truncating it above or below each degree;
/// 3. the least representative itself.
pub fn shrink_representative(w: &SolWord, consts: &SolConstants) -> SolWord {
    let t = consts.trace;
    let x = w.psi();
    let accept = |cand: &LaurentPoly| -> Option<SolWord> {
        let c = XElement::new(cand.clone(), x.height);
        if c.size() >= w.weight() || c.utype.max_abs_coeff() as u64 > consts.n {
            return None;
        }
        if !c.equivalent(&x, t).ok()? {
            return None;
        }
        let out = psi_inverse(&c, consts.n as u32).ok()?;
        let ok = out.tail_len().abs_diff(w.tail_len()) as u64 <= consts.l
            && out.head_len().abs_diff(w.head_len()) as u64 <= consts.l
            && poly_divergence(&x.utype, &c.utype) <= consts.k;
        ok.then_some(out)
    };

    let big = 5 * t.abs();
    if let Some((i, c)) = x.utype.terms().find(|&(_, c)| c.abs() >= big) {
        let s = c.signum() * t.signum();
        let moved = &x.utype + &(&LaurentPoly::phi(t) * &LaurentPoly::monomial(5 * s, i - 1));
        if let Some(out) = accept(&moved) {
            return out;
        }
    }

    let Ok(best) = class_minimum_limited(&x, t, SEARCH_STATES) else {
        return w.clone();
    };
    if best.size >= w.weight() {
        return w.clone();
    }
    let diff = &best.representative.utype - &x.utype;
    let Ok((q, rem)) = diff.div_rem_phi(t) else {
        return w.clone();
    };
    debug_assert!(rem.is_zero());
    for cand in quotient_moves(&x.utype, &q, consts.l as i64) {
        if let Some(out) = accept(&(&x.utype + &(&LaurentPoly::phi(t) * &cand))) {
            return out;
        }
    }
    accept(&best.representative.utype).unwrap_or_else(|| w.clone())
}

/// Candidate quotients derived from `q`, in the order they are tried.
fn quotient_moves(t1: &LaurentPoly, q: &LaurentPoly, l: i64) -> Vec<LaurentPoly> {
    let (Some(qlo), Some(qhi)) = (q.min_degree(), q.max_degree()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let with_fix = |base: LaurentPoly, at: i64, out: &mut Vec<LaurentPoly>| {
        out.push(base.clone());
        for s in [1, -1] {
            let mut fixed = base.clone();
            fixed.add_term(at, s);
            out.push(fixed);
        }
    };
    // Drop the lowest or highest L degrees of q.
    out.push(q.restrict(qlo + l, i64::MAX));
    out.push(q.restrict(i64::MIN, qhi - l));
    // Cut q where t1 is L degrees inside its support.
    if let (Some(tlo), Some(thi)) = (t1.min_degree(), t1.max_degree()) {
        let m = tlo + l;
        with_fix(q.restrict(i64::MIN, m - 1), m, &mut out);
        let m = thi - l;
        with_fix(q.restrict(m + 1, i64::MAX), m, &mut out);
    }
    for k in qlo - 1..=qhi {
        out.push(q.restrict(k + 1, i64::MAX));
    }
    for k in qlo..=qhi {
        out.push(q.restrict(i64::MIN, k));
    }
    out.retain(|c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> SolConstants {
        SolConstants::new(3, 2).unwrap()
    }

    fn word(p: &str, h: i64) -> SolWord {
        psi_inverse(&XElement::new(p.parse().unwrap(), h), 200).unwrap()
    }

    #[test]
    fn minimal_words_are_unchanged() {
        let w: SolWord = "(1,1)".parse().unwrap();
        assert_eq!(shrink_representative(&w, &consts()), w);
        let seven = word("7", 0);
        assert_eq!(shrink_representative(&seven, &consts()), seven);
    }

    #[test]
    fn large_coefficient_is_reduced() {
        let w = word("15", 0);
        assert_eq!(w.weight(), 16);
        let out = shrink_representative(&w, &consts());
        assert_eq!(out.psi().utype, "5z^-1 + 5z".parse().unwrap());
        assert_eq!(out.weight(), 15);
    }

    #[test]
    fn non_minimal_small_words_shrink() {
        for (p, h) in [
            ("1 - 2z + z^2", 0),
            ("z^-1 - 2 + z", 1),
            ("-1 + 3z^-1 - z^-2", -2),
        ] {
            let w = word(p, h);
            let out = shrink_representative(&w, &consts());
            assert!(out.weight() < w.weight(), "{w} -> {out}");
            assert!(out.psi().equivalent(&w.psi(), 3).unwrap());
        }
    }
}
