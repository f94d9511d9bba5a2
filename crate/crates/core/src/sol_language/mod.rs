//! The regular languages `L_n` that encode `X = Z[z, 1/z] x Z`, the
//! size-preserving encoding `psi`, the long-division acceptors, and the
//! pipeline that feeds them into the minimal cross-section construction.
//!
//! A word of `L_n` is a tail of `(c, 2)` letters, a center of `(c, 1)` or
//! `(c, -1)` letters, and a head of `(c, 2)` letters, with `|c| <= n`. The
//! center sign and length determine the height; the coefficients, read by
//! degree, give the unreduced type.

mod acceptor;
mod pipeline;
mod shrink;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Automaton, Label, Sym};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, XElement};

pub use acceptor::{acceptor_rn_prime, acceptor_rni};
pub use pipeline::{
    sol_pipeline, PipelineOverrides, PipelineParams, PipelineReport, PipelineScale,
};
pub use shrink::shrink_representative;

/// Second entries of the letters, in alphabet order.
const KINDS: [i8; 3] = [-1, 1, 2];

/// A letter `(c, k)` of `A_n`, weighing `|c| + |k|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolLetter {
    pub c: i64,
    pub k: i8,
}

impl SolLetter {
    pub fn new(c: i64, k: i8) -> Result<Self> {
        if !KINDS.contains(&k) {
            return Err(Error::MalformedWord(format!(
                "letter kind {k} is not -1, 1 or 2"
            )));
        }
        Ok(SolLetter { c, k })
    }

    pub fn weight(&self) -> u64 {
        self.c.unsigned_abs() + self.k.unsigned_abs() as u64
    }

    pub fn is_end(&self) -> bool {
        self.k == 2
    }

    /// Index in the alphabet `A_n`: coefficient-major, kinds ordered -1, 1, 2.
    pub fn sym(&self, n: u32) -> Result<Sym> {
        let n = n as i64;
        if self.c.abs() > n {
            return Err(Error::CoefficientOutOfRange {
                coeff: self.c,
                bound: n,
            });
        }
        let kidx = KINDS.iter().position(|&k| k == self.k).expect("valid kind") as i64;
        Ok(((self.c + n) * 3 + kidx) as Sym)
    }

    pub fn from_sym(s: Sym, n: u32) -> SolLetter {
        let s = s as i64;
        SolLetter {
            c: s / 3 - n as i64,
            k: KINDS[(s % 3) as usize],
        }
    }

    /// Automaton letter name, e.g. `-2:1`.
    pub fn label(&self) -> String {
        format!("{}:{}", self.c, self.k)
    }
}

impl fmt::Display for SolLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.k)
    }
}

/// The weighted alphabet `A_n = {-n..n} x {-1, 1, 2}`.
pub fn sol_alphabet(n: u32) -> Alphabet {
    let n = n as i64;
    let letters = (-n..=n).flat_map(|c| KINDS.iter().map(move |&k| SolLetter { c, k }));
    Alphabet::new(letters.map(|l| (l.label(), l.weight() as u32))).expect("sol alphabet is valid")
}

/// A word of `L_n'`: shape `(.,2)* (.,e)+ (.,2)*` with a single center kind
/// `e = ±1`, and at least two center letters when `e = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SolWord {
    letters: Vec<SolLetter>,
}

impl SolWord {
    pub fn new(letters: Vec<SolLetter>) -> Result<Self> {
        let tail = letters.iter().take_while(|l| l.is_end()).count();
        let head = letters.iter().rev().take_while(|l| l.is_end()).count();
        if tail == letters.len() {
            return Err(Error::MalformedWord("no center letter (k = ±1)".into()));
        }
        let center = &letters[tail..letters.len() - head];
        let kind = center[0].k;
        if center.iter().any(|l| l.k != kind) {
            return Err(Error::MalformedWord("center letters mix kinds".into()));
        }
        if kind == -1 && center.len() < 2 {
            return Err(Error::MalformedWord(
                "a negative center needs two letters".into(),
            ));
        }
        Ok(SolWord { letters })
    }

    pub fn letters(&self) -> &[SolLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tail_len(&self) -> usize {
        self.letters.iter().take_while(|l| l.is_end()).count()
    }

    pub fn head_len(&self) -> usize {
        self.letters.iter().rev().take_while(|l| l.is_end()).count()
    }

    pub fn center(&self) -> &[SolLetter] {
        &self.letters[self.tail_len()..self.len() - self.head_len()]
    }

    /// Sign of the center letters.
    pub fn center_kind(&self) -> i8 {
        self.center()[0].k
    }

    pub fn weight(&self) -> u64 {
        self.letters.iter().map(SolLetter::weight).sum()
    }

    pub fn max_abs_coeff(&self) -> u64 {
        self.letters
            .iter()
            .map(|l| l.c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Membership in `L_n` proper: no `(0, 2)` at either end.
    pub fn is_strict(&self) -> bool {
        let zero_end = |l: Option<&SolLetter>| l.is_some_and(|l| l.is_end() && l.c == 0);
        !zero_end(self.letters.first()) && !zero_end(self.letters.last())
    }

    /// Degree of each letter's coefficient under `psi`.
    pub fn degrees(&self) -> Vec<i64> {
        let n1 = self.tail_len() as i64;
        let n2 = self.center().len() as i64 - 1;
        let (tail_off, center_off, head_off) = if self.center_kind() == 1 {
            (-n1 - 1, 0, n2)
        } else {
            (-n1 - n2 - 1, -n2, 0)
        };
        let mut out = Vec::with_capacity(self.len());
        out.extend((1..=n1).map(|i| i + tail_off));
        out.extend((0..=n2).map(|i| i + center_off));
        out.extend((1..=self.head_len() as i64).map(|i| i + head_off));
        out
    }

    /// The encoding `psi'` into `X`.
    pub fn psi(&self) -> XElement {
        let n2 = self.center().len() as i64 - 1;
        let h = if self.center_kind() == 1 { n2 } else { -n2 };
        let utype = LaurentPoly::from_terms(
            self.degrees()
                .into_iter()
                .zip(self.letters.iter().map(|l| l.c)),
        );
        XElement::new(utype, h)
    }

    /// The letters as automaton symbols over `A_n`.
    pub fn to_syms(&self, n: u32) -> Result<Vec<Sym>> {
        self.letters.iter().map(|l| l.sym(n)).collect()
    }

    pub fn from_syms(syms: &[Sym], n: u32) -> Result<Self> {
        SolWord::new(syms.iter().map(|&s| SolLetter::from_sym(s, n)).collect())
    }
}

/// The unique strict word `w` with `psi(w) = x` and coefficients in `[-n, n]`.
pub fn psi_inverse(x: &XElement, n: u32) -> Result<SolWord> {
    let bound = n as i64;
    if let Some((_, c)) = x.utype.terms().find(|(_, c)| c.abs() > bound) {
        return Err(Error::CoefficientOutOfRange { coeff: c, bound });
    }
    let h = x.height;
    let d = x.utype.decompose(h);
    let (center_lo, center_hi, kind) = if h >= 0 { (0, h, 1) } else { (h, 0, -1) };
    let lo = center_lo - d.tail_len as i64;
    let hi = center_hi + d.head_len as i64;
    let letters = (lo..=hi)
        .map(|deg| SolLetter {
            c: x.utype.coeff(deg),
            k: if deg < center_lo || deg > center_hi {
                2
            } else {
                kind
            },
        })
        .collect();
    SolWord::new(letters)
}

/// Largest absolute partial sum, over degrees in increasing order, of
/// `|c_1j| - |c_2j|` for the `psi` images of the two words.
pub fn divergence(w1: &SolWord, w2: &SolWord) -> u64 {
    poly_divergence(&w1.psi().utype, &w2.psi().utype)
}

/// [`divergence`] for Laurent polynomials.
pub fn poly_divergence(p1: &LaurentPoly, p2: &LaurentPoly) -> u64 {
    let mut degrees: Vec<i64> = p1.terms().chain(p2.terms()).map(|(d, _)| d).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut sum = 0i64;
    let mut best = 0u64;
    for d in degrees {
        sum += p1.coeff(d).abs() - p2.coeff(d).abs();
        best = best.max(sum.unsigned_abs());
    }
    best
}

impl fmt::Display for SolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for SolWord {
    type Err = Error;

    /// Parses `(c,k)` letters, e.g. `(2,2)(5,1)(0,1)(1,2)`. Whitespace is
    /// ignored and `−` is accepted as a minus sign.
    fn from_str(s: &str) -> Result<Self> {
        let clean: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        let bad = |reason: &str| Error::parse("sol word", s, reason);
        let mut letters = Vec::new();
        let mut rest = clean.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let (c, k) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad("expected 'c,k'"))?;
            let c: i64 = c.parse().map_err(|_| bad("bad coefficient"))?;
            let k: i8 = k.parse().map_err(|_| bad("bad kind"))?;
            letters.push(SolLetter::new(c, k)?);
            rest = &body[close + 1..];
        }
        SolWord::new(letters)
    }
}

impl TryFrom<String> for SolWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SolWord> for String {
    fn from(w: SolWord) -> String {
        w.to_string()
    }
}

/// Automaton for `L_n` (`strict`) or `L_n'` over `A_n`.
pub fn build_ln(n: u32, strict: bool) -> Result<Automaton> {
    if n == 0 {
        return Err(Error::Unsupported("L_n needs n >= 1".into()));
    }
    #[derive(Clone, Copy)]
    enum St {
        Start,
        Tail,
        Pos,
        Neg1,
        Neg,
        Head,
        HeadZero,
    }
    let alphabet = sol_alphabet(n);
    let mut trans = Vec::new();
    let id = |s: St| s as u32;
    for sym in 0..alphabet.len() as Sym {
        let l = SolLetter::from_sym(sym, n);
        let label = Label::single(sym);
        let mut add = |from: St, to: St| trans.push((id(from), label, id(to)));
        match l.k {
            2 => {
                if !(strict && l.c == 0) {
                    add(St::Start, St::Tail);
                }
                add(St::Tail, St::Tail);
                let head = if strict && l.c == 0 {
                    St::HeadZero
                } else {
                    St::Head
                };
                for from in [St::Pos, St::Neg, St::Head, St::HeadZero] {
                    add(from, head);
                }
            }
            1 => {
                for from in [St::Start, St::Tail, St::Pos] {
                    add(from, St::Pos);
                }
            }
            _ => {
                for from in [St::Start, St::Tail] {
                    add(from, St::Neg1);
                }
                add(St::Neg1, St::Neg);
                add(St::Neg, St::Neg);
            }
        }
    }
    let finals = [St::Pos, St::Neg, St::Head].map(id);
    Ok(Automaton::from_parts(1, alphabet, 7, 0, finals, trans)?.trim())
}

/// The constants of the fellow-traveler argument for trace `T`, with the
/// remainder bound `C` computed for language parameter `c_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolConstants {
    pub trace: i64,
    /// Quotient-coefficient bound `B = B_{5|T|} = 10|T|`.
    pub b: u64,
    /// Tail/head length slack `L = (|T|+2) B`.
    pub l: u64,
    /// Divergence bound `K = (|T|+2)(3B+4) + 8L + 1`.
    pub k: u64,
    /// Coefficient bound `N = 5|T| + (|T|+2) B`.
    pub n: u64,
    /// Fellow-traveler constant `K + (N+6) L`.
    pub fellow_constant: u64,
    /// Language parameter used for `c`.
    pub c_n: u64,
    /// Remainder bound `C = 2n + 2n(|T|+2)` for `n = c_n`.
    pub c: u64,
}

impl SolConstants {
    pub fn new(trace: i64, c_n: u64) -> Result<Self> {
        crate::solgroup::GroupParams::new(trace)?;
        let t = trace.unsigned_abs();
        let b = 10 * t;
        let l = (t + 2) * b;
        let k = (t + 2) * (3 * b + 4) + 8 * l + 1;
        let n = 5 * t + (t + 2) * b;
        Ok(SolConstants {
            trace,
            b,
            l,
            k,
            n,
            fellow_constant: k + (n + 6) * l,
            c_n,
            c: remainder_bound(trace, c_n),
        })
    }
}

/// `C_{n, B_n} = 2n + B_n (|T|+2)` with `B_n = 2n`.
pub fn remainder_bound(trace: i64, n: u64) -> u64 {
    2 * n + 2 * n * (trace.unsigned_abs() + 2)
}
