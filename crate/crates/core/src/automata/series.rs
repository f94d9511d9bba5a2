use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Automaton, StateId};
use crate::error::{Error, Result};

/// A power series `N(z) / D(z)` with integer coefficients and `D(0) = 1`.
/// Coefficient vectors are in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<i128>,
    pub denominator: Vec<i128>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<i128>, denominator: Vec<i128>) -> Result<Self> {
        if denominator.first() != Some(&1) {
            return Err(Error::Unsupported(
                "series denominator must have constant term 1".into(),
            ));
        }
        Ok(RationalSeries {
            numerator: normalized(numerator),
            denominator: normalized(denominator),
        })
    }

    pub fn zero() -> Self {
        RationalSeries {
            numerator: vec![0],
            denominator: vec![1],
        }
    }

    /// The first `n` Taylor coefficients.
    pub fn coefficients(&self, n: usize) -> Result<Vec<i128>> {
        let d = &self.denominator;
        let mut c: Vec<i128> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = self.numerator.get(k).copied().unwrap_or(0);
            for j in 1..d.len().min(k + 1) {
                let t = d[j]
                    .checked_mul(c[k - j])
                    .ok_or(Error::Overflow("series coefficient"))?;
                v = v
                    .checked_sub(t)
                    .ok_or(Error::Overflow("series coefficient"))?;
            }
            c.push(v);
        }
        Ok(c)
    }

    /// Whether two series are equal as power series (cross-multiplication).
    pub fn same_series(&self, other: &RationalSeries) -> Result<bool> {
        let l = poly_mul(&self.numerator, &other.denominator)?;
        let r = poly_mul(&other.numerator, &self.denominator)?;
        Ok(normalized(l) == normalized(r))
    }
}

fn normalized(mut p: Vec<i128>) -> Vec<i128> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

pub(crate) fn poly_to_string(p: &[i128]) -> String {
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        match (i, mag) {
            (0, m) => s.push_str(&m.to_string()),
            (1, 1) => s.push('z'),
            (1, m) => s.push_str(&format!("{m}z")),
            (e, 1) => s.push_str(&format!("z^{e}")),
            (e, m) => s.push_str(&format!("{m}z^{e}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            poly_to_string(&self.numerator),
            poly_to_string(&self.denominator)
        )
    }
}

type Poly = Vec<i128>;

fn trim_poly(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(a: &[i128], b: &[i128]) -> Result<Poly> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = x
                .checked_mul(y)
                .ok_or(Error::Overflow("polynomial product"))?;
            out[i + j] = out[i + j]
                .checked_add(t)
                .ok_or(Error::Overflow("polynomial product"))?;
        }
    }
    Ok(trim_poly(out))
}

fn poly_sub(a: &[i128], b: &[i128]) -> Result<Poly> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = x
            .checked_sub(y)
            .ok_or(Error::Overflow("polynomial difference"))?;
    }
    Ok(trim_poly(out))
}

/// Exact division; the caller guarantees divisibility.
fn poly_div_exact(a: &[i128], b: &[i128]) -> Result<Poly> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let lead = *b.last().expect("nonzero divisor");
    let mut rem = a.to_vec();
    let mut q = vec![0i128; a.len() + 1 - b.len()];
    for i in (0..q.len()).rev() {
        let top = rem[i + b.len() - 1];
        if top == 0 {
            continue;
        }
        debug_assert_eq!(top % lead, 0, "inexact division");
        let c = top / lead;
        q[i] = c;
        for (j, &y) in b.iter().enumerate() {
            let t = c
                .checked_mul(y)
                .ok_or(Error::Overflow("polynomial division"))?;
            rem[i + j] = rem[i + j]
                .checked_sub(t)
                .ok_or(Error::Overflow("polynomial division"))?;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact division");
    Ok(trim_poly(q))
}

/// Fraction-free Gaussian elimination over `Z[z]`.
fn det(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut negate = false;
    let mut prev: Poly = vec![1];
    for k in 0..n {
        if m[k][k].is_empty() {
            match (k + 1..n).find(|&r| !m[r][k].is_empty()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Vec::new()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = poly_mul(&m[k][k], &m[i][j])?;
                let b = poly_mul(&m[i][k], &m[k][j])?;
                m[i][j] = poly_div_exact(&poly_sub(&a, &b)?, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let mut d = m[n - 1][n - 1].clone();
    if negate {
        for c in &mut d {
            *c = -*c;
        }
    }
    Ok(d)
}

/// Strongly connected components, numbered in topological order of the
/// condensation (edges go from lower to higher component index).
fn sccs(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (q, ref mut i)) = stack.last_mut() {
            if let Some(&t) = adj[q].get(*i) {
                *i += 1;
                if !seen[t] {
                    seen[t] = true;
                    stack.push((t, 0));
                }
            } else {
                order.push(q);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (q, ts) in adj.iter().enumerate() {
        for &t in ts {
            radj[t].push(q);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = c;
        let mut stack = vec![root];
        while let Some(q) = stack.pop() {
            for &p in &radj[q] {
                if comp[p] == usize::MAX {
                    comp[p] = c;
                    stack.push(p);
                }
            }
        }
        c += 1;
    }
    comp
}

impl Automaton {
    /// The generating function of accepted words by weight, as an exact
    /// rational function. Requires a deterministic one-tape automaton.
    ///
    /// The denominator is `det(I - A(z))` of the minimized automaton, where
    /// `A(z)` sums `z^weight` over the transitions between two states; it is
    /// computed per strongly connected component. The numerator follows
    /// from counting words up to a degree bound derived from the same block
    /// structure.
    pub fn growth_series(&self) -> Result<RationalSeries> {
        if self.tapes != 1 {
            return Err(Error::Unsupported(
                "growth series of a multi-tape automaton".into(),
            ));
        }
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let m = self.minimize()?;
        if m.is_empty_language() {
            return Ok(RationalSeries::zero());
        }
        let n = m.num_states();
        let weight = |l: super::Label| m.alphabet.weight(l.slot(0)) as usize;
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|q| {
                m.edges(q as StateId)
                    .iter()
                    .map(|&(_, t)| t as usize)
                    .collect()
            })
            .collect();
        let comp = sccs(&adj);
        let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (q, &c) in comp.iter().enumerate() {
            members[c].push(q);
        }

        let mut denominator: Poly = vec![1];
        // slack[c]: expanded dimension minus denominator degree of component c
        let mut slack = vec![0usize; ncomp];
        for (c, qs) in members.iter().enumerate() {
            let pos = |q: usize| qs.iter().position(|&p| p == q);
            let mut mat: Vec<Vec<Poly>> = vec![vec![Vec::new(); qs.len()]; qs.len()];
            let mut dim = qs.len();
            for (i, &q) in qs.iter().enumerate() {
                mat[i][i] = vec![1];
                for &(l, t) in m.edges(q as StateId) {
                    if let Some(j) = pos(t as usize) {
                        let w = weight(l);
                        dim += w - 1;
                        let e = &mut mat[i][j];
                        if e.len() <= w {
                            e.resize(w + 1, 0);
                        }
                        e[w] -= 1;
                    }
                }
            }
            for row in &mut mat {
                for e in row.iter_mut() {
                    *e = trim_poly(std::mem::take(e));
                }
            }
            let d = det(mat)?;
            slack[c] = dim.saturating_sub(d.len() - 1);
            denominator = poly_mul(&denominator, &d)?;
        }

        // Longest slack-weighted path through the condensation; cross edges
        // of weight w contribute w - 1 intermediate expanded states.
        let mut best = vec![0usize; ncomp];
        for c in (0..ncomp).rev() {
            let mut b = 0;
            for &q in &members[c] {
                for &(l, t) in m.edges(q as StateId) {
                    let ct = comp[t as usize];
                    if ct != c {
                        b = b.max(weight(l) - 1 + best[ct]);
                    }
                }
            }
            best[c] = slack[c] + b;
        }
        let deg_d = denominator.len() - 1;
        let bound = (deg_d + best[comp[m.start as usize]]).saturating_sub(1);

        let numerator = match m.count_by_weight(bound) {
            Ok(counts) => {
                let mut p = poly_mul(&counts, &denominator)?;
                p.truncate(bound + 1);
                p
            }
            // Word counts can outgrow i128 long before the numerator does.
            Err(Error::Overflow(_)) => m.cramer_numerator()?,
            Err(e) => return Err(e),
        };
        RationalSeries::new(numerator, denominator)
    }

    /// Numerator by Cramer's rule: with `M = I - A(z)` and `f` the final
    /// indicator, the series from the start state is `det(M_s) / det(M)`,
    /// where `M_s` has its start column replaced by `f`. `det(M)` equals the
    /// product of the component determinants.
    fn cramer_numerator(&self) -> Result<Poly> {
        let n = self.num_states();
        let s = self.start as usize;
        let mut mat: Vec<Vec<Poly>> = vec![vec![Vec::new(); n]; n];
        for (q, row) in mat.iter_mut().enumerate() {
            row[q] = vec![1];
            for &(l, t) in self.edges(q as StateId) {
                let w = self.alphabet.weight(l.slot(0)) as usize;
                let e = &mut row[t as usize];
                if e.len() <= w {
                    e.resize(w + 1, 0);
                }
                e[w] = e[w]
                    .checked_sub(1)
                    .ok_or(Error::Overflow("transition matrix"))?;
            }
        }
        for (q, row) in mat.iter_mut().enumerate() {
            row[s] = if self.finals[q] { vec![1] } else { Vec::new() };
            for e in row.iter_mut() {
                *e = trim_poly(std::mem::take(e));
            }
        }
        let d = det(mat)?;
        Ok(if d.is_empty() { vec![0] } else { d })
    }

    /// Number of accepted words of each weight `0..=max_weight`, counting
    /// paths; equals word counts for deterministic automata.
    pub fn count_by_weight(&self, max_weight: usize) -> Result<Vec<i128>> {
        let n = self.num_states();
        let mut at: Vec<Vec<i128>> = vec![vec![0; n]; max_weight + 1];
        at[0][self.start as usize] = 1;
        let mut counts = vec![0i128; max_weight + 1];
        for w in 0..=max_weight {
            for q in 0..n {
                let c = at[w][q];
                if c == 0 {
                    continue;
                }
                if self.finals[q] {
                    counts[w] = counts[w]
                        .checked_add(c)
                        .ok_or(Error::Overflow("word count"))?;
                }
                for &(l, t) in self.edges(q as StateId) {
                    let w2 = w + self.alphabet.weight(l.slot(0)) as usize;
                    if w2 <= max_weight {
                        let slot = &mut at[w2][t as usize];
                        *slot = slot.checked_add(c).ok_or(Error::Overflow("word count"))?;
                    }
                }
            }
        }
        Ok(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Alphabet, Label};
    use super::*;

    #[test]
    fn fibonacci_automaton() {
        let a = Alphabet::new([("a", 1), ("b", 2)]).unwrap();
        let m = Automaton::from_parts(
            1,
            a,
            1,
            0,
            [0],
            [(0, Label::single(0), 0), (0, Label::single(1), 0)],
        )
        .unwrap();
        let s = m.growth_series().unwrap();
        assert_eq!(s.denominator, vec![1, -1, -1]);
        assert_eq!(s.numerator, vec![1]);
        assert_eq!(s.coefficients(6).unwrap(), vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn unreachable_finals_give_zero() {
        let a = Alphabet::unit(["x"]).unwrap();
        let m = Automaton::from_parts(1, a, 2, 0, [1], [(1, Label::single(0), 1)]).unwrap();
        let s = m.growth_series().unwrap();
        assert_eq!(s, RationalSeries::zero());
        assert_eq!(s.coefficients(4).unwrap(), vec![0; 4]);
    }

    #[test]
    fn finite_language_is_polynomial() {
        let a = Alphabet::new([("x", 1), ("y", 3)]).unwrap();
        let words = vec![vec![0, 0], vec![1], vec![0, 1, 0]];
        let m = Automaton::from_words(a, &words);
        let s = m.growth_series().unwrap();
        assert_eq!(s.coefficients(7).unwrap(), vec![0, 0, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn det_of_small_matrix() {
        // [[1 - z, -z], [-z, 1]] has determinant 1 - z - z^2
        let m = vec![vec![vec![1, -1], vec![0, -1]], vec![vec![0, -1], vec![1]]];
        assert_eq!(det(m).unwrap(), vec![1, -1, -1]);
    }

    #[test]
    fn large_counts_fall_back_to_cramer() {
        // The heavy letter pushes the count bound near 200, past 2^127 words.
        let a = Alphabet::new([("x", 1), ("y", 1), ("w", 200)]).unwrap();
        let m = Automaton::from_parts(
            1,
            a,
            2,
            0,
            [0, 1],
            [
                (0, Label::single(0), 0),
                (0, Label::single(1), 0),
                (0, Label::single(2), 1),
            ],
        )
        .unwrap();
        assert!(m.count_by_weight(200).is_err());
        let s = m.growth_series().unwrap();
        // 1/(1-2z) + z^200/(1-2z)
        let mut num = vec![0i128; 201];
        num[0] = 1;
        num[200] = 1;
        assert!(s
            .same_series(&RationalSeries::new(num, vec![1, -2]).unwrap())
            .unwrap());
        assert_eq!(s.coefficients(5).unwrap(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn display() {
        let s = RationalSeries::new(vec![1, 0, 2], vec![1, -3, 1]).unwrap();
        assert_eq!(s.to_string(), "(1 + 2z^2) / (1 - 3z + z^2)");
    }
}
