//! Element calculus for `G = <a, t>`, viewed as the torus bundle group
//! `Z^2 x|_M Z` whose monodromy is the companion matrix
//!
//! ```text
//! M = | 0  -1 |
//!     | 1   T |
//! ```
//!
//! Fiber vectors are stored in the basis `{a, Ma}`, so the generator `a` is
//! `(1, 0)` and `M^k a` is the k-th power of `M` applied to `(1, 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, XElement};

/// The monodromy trace. Construction enforces `|T| >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    trace: i64,
}

impl GroupParams {
    pub fn new(trace: i64) -> Result<Self> {
        if trace.abs() < 3 {
            return Err(Error::InvalidTrace(trace));
        }
        Ok(GroupParams { trace })
    }

    pub fn trace(&self) -> i64 {
        self.trace
    }

    /// `M v`, checked.
    pub fn apply(&self, v: [i64; 2]) -> Result<[i64; 2]> {
        let y = self
            .trace
            .checked_mul(v[1])
            .and_then(|tv| tv.checked_add(v[0]))
            .ok_or(Error::Overflow("monodromy action"))?;
        Ok([
            v[1].checked_neg()
                .ok_or(Error::Overflow("monodromy action"))?,
            y,
        ])
    }

    /// `M^-1 v`, checked. `M^-1 = [[T, 1], [-1, 0]]`.
    pub fn apply_inverse(&self, v: [i64; 2]) -> Result<[i64; 2]> {
        let x = self
            .trace
            .checked_mul(v[0])
            .and_then(|tv| tv.checked_add(v[1]))
            .ok_or(Error::Overflow("monodromy action"))?;
        Ok([
            x,
            v[0].checked_neg()
                .ok_or(Error::Overflow("monodromy action"))?,
        ])
    }

    /// `M^k v` for any integer `k`.
    pub fn apply_power(&self, k: i64, mut v: [i64; 2]) -> Result<[i64; 2]> {
        if k >= 0 {
            for _ in 0..k {
                v = self.apply(v)?;
            }
        } else {
            for _ in 0..k.unsigned_abs() {
                v = self.apply_inverse(v)?;
            }
        }
        Ok(v)
    }

    /// Evaluates `t(M) a` directly with matrix powers. This deliberately
    /// avoids polynomial division so it can serve as an independent check on
    /// [`LaurentPoly::divides_phi`].
    pub fn to_group_element(&self, x: &XElement) -> Result<GroupElement> {
        let mut acc = [0i64; 2];
        let (lo, hi) = match (x.utype.min_degree(), x.utype.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(GroupElement::new([0, 0], x.height)),
        };
        // Walk the powers M^d a for d = lo..=hi incrementally.
        let mut power = self.apply_power(lo, [1, 0])?;
        for d in lo..=hi {
            let c = x.utype.coeff(d);
            if c != 0 {
                for i in 0..2 {
                    acc[i] = c
                        .checked_mul(power[i])
                        .and_then(|m| m.checked_add(acc[i]))
                        .ok_or(Error::Overflow("type evaluation"))?;
                }
            }
            if d < hi {
                power = self.apply(power)?;
            }
        }
        Ok(GroupElement::new(acc, x.height))
    }

    /// Semidirect-product law `(x1, h1)(x2, h2) = (x1 + M^h1 x2, h1 + h2)`.
    pub fn compose(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        let moved = self.apply_power(g1.height, g2.x)?;
        let x = [
            g1.x[0]
                .checked_add(moved[0])
                .ok_or(Error::Overflow("compose"))?,
            g1.x[1]
                .checked_add(moved[1])
                .ok_or(Error::Overflow("compose"))?,
        ];
        let h = g1
            .height
            .checked_add(g2.height)
            .ok_or(Error::Overflow("compose"))?;
        Ok(GroupElement::new(x, h))
    }

    /// `(x, h)^-1 = (-M^-h x, -h)`.
    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        let v = self.apply_power(-g.height, g.x)?;
        Ok(GroupElement::new([-v[0], -v[1]], -g.height))
    }

    pub fn eval_element(&self, w: &GroupWord) -> Result<GroupElement> {
        self.to_group_element(&w.eval())
    }

    /// Same element of `G` iff equal heights and `1 - Tz + z^2` divides the
    /// difference of unreduced types.
    pub fn equal_words(&self, w1: &GroupWord, w2: &GroupWord) -> Result<bool> {
        w1.eval().equivalent(&w2.eval(), self.trace)
    }
}

/// An element of `G`: fiber coordinates in the basis `{a, Ma}` and a height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub x: [i64; 2],
    pub height: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        x: [0, 0],
        height: 0,
    };

    pub fn new(x: [i64; 2], height: i64) -> Self {
        GroupElement { x, height }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::T => 't',
            Letter::TInv => 'T',
        }
    }
}

/// A word in the free group on `{a, t}`; uppercase letters are inverses in
/// the text form (`"TataaT"`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GroupWord(pub Vec<Letter>);

impl TryFrom<String> for GroupWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupWord> for String {
    fn from(w: GroupWord) -> String {
        w.to_string()
    }
}

impl GroupWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Left-to-right evaluation to `(unreduced type, height)`: `t^±1` moves
    /// the partial height `H`, `a^±1` adds `±z^H`.
    pub fn eval(&self) -> XElement {
        let mut height = 0i64;
        let mut utype = LaurentPoly::zero();
        for &l in &self.0 {
            match l {
                Letter::A => utype.add_term(height, 1),
                Letter::AInv => utype.add_term(height, -1),
                Letter::T => height += 1,
                Letter::TInv => height -= 1,
            }
        }
        XElement::new(utype, height)
    }

    fn push_power(&mut self, letter: Letter, exp: i64) {
        let l = if exp >= 0 { letter } else { letter.inverse() };
        self.0
            .extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::AInv),
                't' => Ok(Letter::T),
                'T' => Ok(Letter::TInv),
                other => Err(Error::parse(
                    "group word",
                    s,
                    format!("unexpected letter {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupWord)
    }
}

/// Length of the shortest free-group word with the given unreduced type and
/// height: `2 TailLen + 2 HeadLen + |h| + sum |c_i|`.
pub fn geodesic_length(x: &XElement) -> u64 {
    x.free_length()
}

/// An explicit word realising [`geodesic_length`].
///
/// For `h >= 0` this is `t^-TL (prod a^c_i t) a^c_0 (prod t a^c_i) t^-HL`;
/// for `h <= 0` the mirror image that climbs into the head first and
/// descends through the tail last.
pub fn geodesic_word(x: &XElement) -> GroupWord {
    let d = x.decompose();
    let (tl, hl) = (d.tail_len as i64, d.head_len as i64);
    let h = x.height;
    let c = |i: i64| x.utype.coeff(i);
    let mut w = GroupWord::default();
    if h >= 0 {
        w.push_power(Letter::T, -tl);
        for i in -tl..=-1 {
            w.push_power(Letter::A, c(i));
            w.push_power(Letter::T, 1);
        }
        w.push_power(Letter::A, c(0));
        for i in 1..=h + hl {
            w.push_power(Letter::T, 1);
            w.push_power(Letter::A, c(i));
        }
        w.push_power(Letter::T, -hl);
    } else {
        w.push_power(Letter::T, hl);
        for i in (1..=hl).rev() {
            w.push_power(Letter::A, c(i));
            w.push_power(Letter::T, -1);
        }
        w.push_power(Letter::A, c(0));
        for i in (h - tl..=-1).rev() {
            w.push_power(Letter::T, -1);
            w.push_power(Letter::A, c(i));
        }
        w.push_power(Letter::T, tl);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn x(p: &str, h: i64) -> XElement {
        XElement::new(p.parse().unwrap(), h)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(w("").eval(), x("0", 0));
        assert_eq!(w("taT").eval(), x("z", 0));
        assert_eq!(w("Tataat").eval(), x("z^-1+2", 1));
    }

    #[test]
    fn params_reject_small_trace() {
        assert!(GroupParams::new(2).is_err());
        assert!(GroupParams::new(-2).is_err());
        assert!(GroupParams::new(-3).is_ok());
    }

    #[test]
    fn to_group_element_examples() {
        let g = GroupParams::new(3).unwrap();
        assert_eq!(
            g.to_group_element(&x("1", 0)).unwrap(),
            GroupElement::new([1, 0], 0)
        );
        assert_eq!(
            g.to_group_element(&x("z", 0)).unwrap(),
            GroupElement::new([0, 1], 0)
        );
        assert_eq!(
            g.to_group_element(&x("z^2", 0)).unwrap(),
            GroupElement::new([-1, 3], 0)
        );
        // M^-1 a = (T, -1)
        assert_eq!(
            g.to_group_element(&x("z^-1", 4)).unwrap(),
            GroupElement::new([3, -1], 4)
        );
    }

    #[test]
    fn compose_examples() {
        let g = GroupParams::new(3).unwrap();
        let a = GroupElement::new([1, 0], 0);
        let t = GroupElement::new([0, 0], 1);
        assert_eq!(g.compose(&a, &a).unwrap(), GroupElement::new([2, 0], 0));
        assert_eq!(g.compose(&t, &a).unwrap(), GroupElement::new([0, 1], 1));
        let e = GroupElement::new([7, -2], 5);
        let inv = g.invert(&e).unwrap();
        assert_eq!(g.compose(&e, &inv).unwrap(), GroupElement::IDENTITY);
        assert_eq!(g.compose(&inv, &e).unwrap(), GroupElement::IDENTITY);
    }

    #[test]
    fn equal_words_examples() {
        let g = GroupParams::new(3).unwrap();
        assert!(g.equal_words(&w("taTaT"), &w("taTaT")).unwrap());
        assert!(g.equal_words(&w("ttaTT"), &w("AtaaaT")).unwrap());
        assert!(!g.equal_words(&w("a"), &w("t")).unwrap());
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(geodesic_length(&x("0", 0)), 0);
        assert_eq!(geodesic_length(&x("1", 0)), 1);
        assert_eq!(geodesic_length(&x("z^-1+2", 1)), 6);
        assert_eq!(geodesic_word(&x("1", 0)), w("a"));
        assert_eq!(geodesic_word(&x("z^-1+2", 1)), w("Tataat"));
        assert_eq!(geodesic_word(&x("z^-1", -1)), w("Ta"));
        assert_eq!(geodesic_word(&x("0", 0)), w(""));
    }

    #[test]
    fn word_parse_rejects_junk() {
        assert!("tab".parse::<GroupWord>().is_err());
        assert_eq!(w("t a T").to_string(), "taT");
    }

    fn arb_word(max: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max)
            .prop_map(GroupWord)
    }

    proptest! {
        #[test]
        fn cocycle_identity(u in arb_word(12), v in arb_word(12)) {
            let (xu, xv, xuv) = (u.eval(), v.eval(), u.concat(&v).eval());
            prop_assert_eq!(xuv.height, xu.height + xv.height);
            prop_assert_eq!(xuv.utype, &xu.utype + &xv.utype.shift(xu.height));
        }

        #[test]
        fn evaluation_is_a_homomorphism(u in arb_word(12), v in arb_word(12),
                                        t in prop::sample::select(vec![-5i64, -4, -3, 3, 4, 5])) {
            let g = GroupParams::new(t).unwrap();
            let lhs = g.eval_element(&u.concat(&v)).unwrap();
            let rhs = g.compose(&g.eval_element(&u).unwrap(), &g.eval_element(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(g.eval_element(&u.inverse()).unwrap(), g.invert(&g.eval_element(&u).unwrap()).unwrap());
        }

        #[test]
        fn geodesic_word_round_trips(u in arb_word(14)) {
            let xu = u.eval();
            let g = geodesic_word(&xu);
            prop_assert_eq!(g.eval(), xu.clone());
            prop_assert_eq!(g.len() as u64, geodesic_length(&xu));
            prop_assert!(g.len() <= u.len());
        }
    }
}
