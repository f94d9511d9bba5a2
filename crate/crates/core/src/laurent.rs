//! Sparse Laurent polynomials over the integers.
//!
//! A [`LaurentPoly`] stores only its nonzero coefficients, keyed by degree.
//! Besides ring arithmetic the module provides division by the monic
//! quadratic `1 - Tz + z^2` (the minimal polynomial of the monodromy) with a
//! canonical remainder in `span{1, z}`, and the height-relative
//! tail/center/head split used to measure elements of `X = Z[z, 1/z] x Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer Laurent polynomial `sum c_i z^i` with finitely many nonzero terms.
///
/// Invariant: no stored coefficient is zero, so the zero polynomial is the
/// empty map and equality is structural.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c z^degree`.
    pub fn monomial(c: i64, degree: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated
    /// degrees are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// `1 - T z + z^2`.
    pub fn phi(trace: i64) -> Self {
        Self::from_terms([(0, 1), (1, -trace), (2, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Nonzero terms in increasing degree order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `sum |c_i|`.
    pub fn l1_norm(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).sum()
    }

    /// Largest `|c_i|`, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, degree: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&degree);
        }
    }

    /// [`add_term`](Self::add_term) that reports overflow instead of panicking.
    pub fn try_add_term(&mut self, degree: i64, c: i64) -> Option<()> {
        if c == 0 {
            return Some(());
        }
        let slot = self.coeffs.entry(degree).or_insert(0);
        *slot = slot.checked_add(c)?;
        if *slot == 0 {
            self.coeffs.remove(&degree);
        }
        Some(())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d + k, c)).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d, c * s)).collect(),
        }
    }

    /// Terms with degree in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        if lo > hi {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.range(lo..=hi).map(|(&d, &c)| (d, c)).collect(),
        }
    }

    /// Evaluates with a caller-supplied power function, e.g. matrix powers.
    pub fn fold_terms<A>(&self, init: A, mut f: impl FnMut(A, i64, i64) -> A) -> A {
        self.coeffs.iter().fold(init, |acc, (&d, &c)| f(acc, d, c))
    }

    /// Divides by `1 - Tz + z^2`, returning `(quotient, remainder)` with
    /// `self = quotient * phi + remainder` and the remainder supported on
    /// degrees `{0, 1}`.
    ///
    /// Negative degrees are cleared first using `z^d = T z^(d+1) - z^(d+2)`
    /// (mod phi), which only pushes mass up to degree 1; degrees above 1 are
    /// then cleared top-down with `z^2 = T z - 1`.
    pub fn div_rem_phi(&self, trace: i64) -> Result<(LaurentPoly, LaurentPoly)> {
        check_trace(trace)?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let overflow = || Error::Overflow("division by 1 - Tz + z^2");
        loop {
            let Some((d, c)) = rem.terms().next() else {
                break;
            };
            if d >= 0 {
                break;
            }
            let ct = c.checked_mul(trace).ok_or_else(overflow)?;
            quot.add_term(d, c);
            rem.add_term(d, -c);
            rem.try_add_term(d + 1, ct).ok_or_else(overflow)?;
            rem.try_add_term(d + 2, -c).ok_or_else(overflow)?;
        }
        loop {
            let Some((d, c)) = rem.terms().next_back() else {
                break;
            };
            if d <= 1 {
                break;
            }
            let ct = c.checked_mul(trace).ok_or_else(overflow)?;
            quot.add_term(d - 2, c);
            rem.add_term(d, -c);
            rem.try_add_term(d - 1, ct).ok_or_else(overflow)?;
            rem.try_add_term(d - 2, -c).ok_or_else(overflow)?;
        }
        Ok((quot, rem))
    }

    /// Whether `1 - Tz + z^2` divides `self` in `Z[z, 1/z]`.
    pub fn divides_phi(&self, trace: i64) -> Result<bool> {
        Ok(self.div_rem_phi(trace)?.1.is_zero())
    }

    /// Splits `self` relative to height `h` into tail, center and head.
    pub fn decompose(&self, h: i64) -> Decomposition {
        let (center_lo, center_hi) = if h >= 0 { (0, h) } else { (h, 0) };
        let tail = self.restrict(i64::MIN, center_lo - 1);
        let center = self.restrict(center_lo, center_hi);
        let head = self.restrict(center_hi + 1, i64::MAX);
        let tail_len = tail.min_degree().map_or(0, |d| (center_lo - d) as u64);
        let head_len = head.max_degree().map_or(0, |d| (d - center_hi) as u64);
        Decomposition {
            tail,
            center,
            head,
            tail_len,
            head_len,
        }
    }
}

fn check_trace(trace: i64) -> Result<()> {
    if trace.abs() < 3 {
        Err(Error::InvalidTrace(trace))
    } else {
        Ok(())
    }
}

/// Tail/center/head split of a polynomial at a given height.
///
/// For `h >= 0` the center window is `[0, h]`; for `h <= 0` it is `[h, 0]`.
/// `tail_len` / `head_len` measure how far the support sticks out below and
/// above the window (zero if it does not).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub tail: LaurentPoly,
    pub center: LaurentPoly,
    pub head: LaurentPoly,
    pub tail_len: u64,
    pub head_len: u64,
}

/// An element `(t, h)` of `X = Z[z, 1/z] x Z`: an unreduced type and a height.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XElement {
    pub utype: LaurentPoly,
    pub height: i64,
}

impl XElement {
    pub fn new(utype: LaurentPoly, height: i64) -> Self {
        XElement { utype, height }
    }

    pub fn decompose(&self) -> Decomposition {
        self.utype.decompose(self.height)
    }

    /// `2 TailLen + 2 HeadLen + |h| + 1 + sum |c_i|`.
    pub fn size(&self) -> u64 {
        self.free_length() + 1
    }

    /// Size without the `+1`: the length of the shortest free-group word with
    /// this unreduced type and height.
    pub fn free_length(&self) -> u64 {
        let d = self.decompose();
        2 * d.tail_len + 2 * d.head_len + self.height.unsigned_abs() + self.utype.l1_norm() as u64
    }

    /// Same class modulo `P`: equal heights and `phi | t1 - t2`.
    pub fn equivalent(&self, other: &XElement, trace: i64) -> Result<bool> {
        Ok(self.height == other.height && (&self.utype - &other.utype).divides_phi(trace)?)
    }
}

impl fmt::Display for XElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.utype, self.height)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("z")?;
                    if d != 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Parses the signed monomial syntax, e.g. `2z^-2+5+z^3` or `1 - 3z + z^2`.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("polynomial", input, "empty input"));
        }
        let bytes = s.as_bytes();
        let mut out = LaurentPoly::zero();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(Error::parse("polynomial", input, "expected '+' or '-'"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff_digits = &s[start..pos];
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let has_z = pos < bytes.len() && bytes[pos] == b'z';
            if !has_z && coeff_digits.is_empty() {
                return Err(Error::parse(
                    "polynomial",
                    input,
                    format!("expected a term at byte {pos}"),
                ));
            }
            let coeff: i64 = if coeff_digits.is_empty() {
                1
            } else {
                coeff_digits
                    .parse()
                    .map_err(|e| Error::parse("polynomial", input, format!("{e}")))?
            };
            let mut degree = 0;
            if has_z {
                pos += 1;
                degree = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let braced = pos < bytes.len() && bytes[pos] == b'{';
                    if braced {
                        pos += 1;
                    }
                    let dstart = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    degree = s[dstart..pos]
                        .parse()
                        .map_err(|_| Error::parse("polynomial", input, "bad exponent"))?;
                    if braced {
                        if pos >= bytes.len() || bytes[pos] != b'}' {
                            return Err(Error::parse("polynomial", input, "unclosed '{'"));
                        }
                        pos += 1;
                    }
                }
            }
            out.add_term(degree, sign * coeff);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&p("z") + &p("-z")).is_zero());
        assert_eq!(&p("1-3z+z^2") * &p("z"), p("z-3z^2+z^3"));
        let diff = &p("3z") - &p("1+z^2");
        assert_eq!(diff, p("-1+3z-z^2"));
        assert_eq!(&diff + &p("1+z^2"), p("3z"));
        assert_eq!(p("1+z").shift(-2), p("z^-2+z^-1"));
        assert_eq!(-&p("2z^-1-4"), p("-2z^-1+4"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "2z^-2+5+z^3", "-z^-1", "z", "-3z+7z^12", "1-3z+z^2"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("1 - 3*z + z^{2}"), p("1-3z+z^2"));
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("3x".parse::<LaurentPoly>().is_err());
        assert!("z^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn div_rem_examples() {
        assert_eq!(p("1-3z+z^2").div_rem_phi(3).unwrap(), (p("1"), p("0")));
        assert_eq!(p("z^3").div_rem_phi(3).unwrap(), (p("z+3"), p("8z-3")));
        assert_eq!(p("z^-1").div_rem_phi(3).unwrap(), (p("z^-1"), p("3-z")));
        assert!(matches!(p("z").div_rem_phi(2), Err(Error::InvalidTrace(2))));
        assert!(p("z").div_rem_phi(-1).is_err());
    }

    #[test]
    fn divides_examples() {
        assert!(p("1-3z+z^2").divides_phi(3).unwrap());
        assert!(!p("1").divides_phi(3).unwrap());
        assert!((&p("3z") - &p("1+z^2")).divides_phi(3).unwrap());
        assert!(LaurentPoly::zero().divides_phi(-4).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let d = LaurentPoly::zero().decompose(0);
        assert!(d.tail.is_zero() && d.center.is_zero() && d.head.is_zero());
        assert_eq!((d.tail_len, d.head_len), (0, 0));

        let d = p("2z^-2+5+z^3").decompose(1);
        assert_eq!((d.tail, d.center, d.head), (p("2z^-2"), p("5"), p("z^3")));
        assert_eq!((d.tail_len, d.head_len), (2, 2));

        let d = p("z^-3+z^-1+z^2").decompose(-1);
        assert_eq!((d.tail, d.center, d.head), (p("z^-3"), p("z^-1"), p("z^2")));
        assert_eq!((d.tail_len, d.head_len), (2, 2));
    }

    #[test]
    fn x_size_examples() {
        assert_eq!(XElement::new(p("0"), 0).size(), 1);
        assert_eq!(XElement::new(p("1"), 0).size(), 2);
        assert_eq!(XElement::new(p("2z^-2+5+z^3"), 1).size(), 18);
        assert_eq!(XElement::new(p("z^-1+2"), 1).free_length(), 6);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..=8, -20i64..=20), 0..10).prop_map(LaurentPoly::from_terms)
    }

    fn arb_trace() -> impl Strategy<Value = i64> {
        prop::sample::select(vec![-5i64, -4, -3, 3, 4, 5])
    }

    proptest! {
        #[test]
        fn div_rem_round_trip(q in arb_poly(), t in arb_trace()) {
            let (quot, rem) = q.div_rem_phi(t).unwrap();
            prop_assert_eq!(&(&quot * &LaurentPoly::phi(t)) + &rem, q);
            prop_assert!(rem.terms().all(|(d, _)| d == 0 || d == 1));
        }

        #[test]
        fn multiples_divide(q in arb_poly(), t in arb_trace(), r0 in -3i64..=3, r1 in -3i64..=3) {
            let m = &q * &LaurentPoly::phi(t);
            let (quot, rem) = m.div_rem_phi(t).unwrap();
            prop_assert_eq!(quot, q.clone());
            prop_assert!(rem.is_zero());
            let off = &m + &LaurentPoly::from_terms([(0, r0), (1, r1)]);
            prop_assert_eq!(off.divides_phi(t).unwrap(), r0 == 0 && r1 == 0);
        }

        #[test]
        fn decompose_reconstructs(q in arb_poly(), h in -6i64..=6) {
            let d = q.decompose(h);
            prop_assert_eq!(&(&d.tail + &d.center) + &d.head, q.clone());
            prop_assert_eq!(d.tail.num_terms() + d.center.num_terms() + d.head.num_terms(), q.num_terms());
        }

        #[test]
        fn size_is_positive_and_sign_invariant(q in arb_poly(), h in -6i64..=6) {
            let x = XElement::new(q.clone(), h);
            prop_assert!(x.size() >= 1);
            prop_assert_eq!(x.size(), XElement::new(-&q, h).size());
        }

        #[test]
        fn divisibility_is_transitive(a in arb_poly(), b in arb_poly(), c in arb_poly(), t in arb_trace()) {
            let phi = LaurentPoly::phi(t);
            let q = &a + &(&b * &phi);
            let r = &q + &(&c * &phi);
            prop_assert!((&a - &q).divides_phi(t).unwrap());
            prop_assert!((&q - &r).divides_phi(t).unwrap());
            prop_assert!((&a - &r).divides_phi(t).unwrap());
        }

        #[test]
        fn parse_display_round_trip(q in arb_poly()) {
            prop_assert_eq!(q.to_string().parse::<LaurentPoly>().unwrap(), q);
        }
    }
}
