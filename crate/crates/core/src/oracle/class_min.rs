use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, XElement};
use crate::solgroup::GroupParams;

/// Default cap on dynamic-programming states summed over all degrees.
pub const DEFAULT_MAX_DP_STATES: usize = 20_000_000;

/// A representative of least size in a class of `X / P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMinimum {
    pub size: u64,
    pub representative: XElement,
}

#[derive(Clone, Copy)]
enum Region {
    Tail,
    Center,
    Head,
}

/// Tail not yet started, support open, head already closed.
const BEFORE: u8 = 0;
const OPEN: u8 = 1;
const CLOSED: u8 = 2;

#[derive(Clone, Copy)]
struct Node {
    cost: u64,
    parent: u32,
    r: i64,
}

/// States `(q_j, q_(j-1), phase)` of one degree with their best nodes.
type Layer = Vec<((i64, i64, u8), Node)>;

/// Least [`XElement::size`] over the class of `x` modulo `1 - Tz + z^2`.
pub fn min_size_over_class(x: &XElement, trace: i64) -> Result<u64> {
    Ok(class_minimum(x, trace)?.size)
}

pub fn class_minimum(x: &XElement, trace: i64) -> Result<ClassMinimum> {
    class_minimum_limited(x, trace, DEFAULT_MAX_DP_STATES)
}

/// Searches the representatives `r = t + phi q` whose coefficients lie in
/// `(-5|T|, 5|T|)` and whose support fits the degree window of size
/// `S = size(x)` around the center. The scan runs degree by degree; a state
/// is the last two quotient coefficients plus the tail/head phase, and
/// costs above `S` are pruned.
pub fn class_minimum_limited(x: &XElement, trace: i64, max_states: usize) -> Result<ClassMinimum> {
    let t = GroupParams::new(trace)?.trace();
    let s = x.size();
    let h = x.height;
    let half = (s / 2) as i64;
    let (cl, ch) = if h >= 0 { (0, h) } else { (h, 0) };
    let mut lo = cl - half - 1;
    let mut hi = ch + half + 1;
    if let (Some(a), Some(b)) = (x.utype.min_degree(), x.utype.max_degree()) {
        lo = lo.min(a);
        hi = hi.max(b);
    }
    let base = h.unsigned_abs() + 1;
    let budget = s - base;
    let cb = 5 * t.abs() - 1;
    let qbound = 2 * cb.max(x.utype.max_abs_coeff());

    // layers[j - lo] holds (state, node) pairs; parents index the previous layer.
    let mut layers: Vec<Layer> = Vec::new();
    let mut current: Layer = vec![(
        (0, 0, BEFORE),
        Node {
            cost: 0,
            parent: 0,
            r: 0,
        },
    )];
    let mut total = 1usize;
    for j in lo..=hi {
        let region = if j < cl {
            Region::Tail
        } else if j <= ch {
            Region::Center
        } else {
            Region::Head
        };
        let tj = x.utype.coeff(j);
        let mut index: FxHashMap<(i64, i64, u8), u32> = FxHashMap::default();
        let mut next: Layer = Vec::new();
        for (pi, &((qa, qb, ph), node)) in current.iter().enumerate() {
            let left = budget - node.cost;
            let mut offer = |r: i64, phase: u8, extra: u64| {
                let cost = node.cost + extra;
                if cost > budget {
                    return;
                }
                let q = r - tj + t * qa - qb;
                if q.abs() > qbound {
                    return;
                }
                let st = (q, qa, phase);
                let cand = Node {
                    cost,
                    parent: pi as u32,
                    r,
                };
                match index.get(&st) {
                    Some(&i) => {
                        if next[i as usize].1.cost > cost {
                            next[i as usize].1 = cand;
                        }
                    }
                    None => {
                        index.insert(st, next.len() as u32);
                        next.push((st, cand));
                    }
                }
            };
            let span = |extra: u64| cb.min(left.saturating_sub(extra) as i64);
            match (region, ph) {
                (Region::Tail, BEFORE) => {
                    offer(0, BEFORE, 0);
                    if left >= 2 {
                        for r in -span(2)..=span(2) {
                            offer(r, OPEN, 2 + r.unsigned_abs());
                        }
                    }
                }
                (Region::Tail, _) | (Region::Head, OPEN) => {
                    if left >= 2 {
                        for r in -span(2)..=span(2) {
                            offer(r, OPEN, 2 + r.unsigned_abs());
                        }
                    }
                    if matches!(region, Region::Head) {
                        offer(0, CLOSED, 0);
                    }
                }
                (Region::Center, _) => {
                    for r in -span(0)..=span(0) {
                        offer(r, OPEN, r.unsigned_abs());
                    }
                }
                (Region::Head, _) => offer(0, CLOSED, 0),
            }
        }
        total += next.len();
        if total > max_states {
            return Err(Error::ResourceLimit {
                what: "class minimum search".into(),
                limit: max_states as u64,
                estimate: Some(total as u64),
            });
        }
        layers.push(std::mem::replace(&mut current, next));
    }
    layers.push(current);

    let last = layers.last().expect("at least one layer");
    let (mut at, best) = last
        .iter()
        .enumerate()
        .filter(|(_, ((qa, qb, _), _))| *qa == 0 && *qb == 0)
        .min_by_key(|(_, (_, n))| n.cost)
        .map(|(i, (_, n))| (i, *n))
        .ok_or_else(|| Error::Unsupported("class search found no representative".into()))?;
    let mut rep = LaurentPoly::zero();
    for (j, layer) in (lo..=hi).rev().zip(layers.iter().skip(1).rev()) {
        let node = layer[at].1;
        rep.add_term(j, node.r);
        at = node.parent as usize;
    }
    let representative = XElement::new(rep, h);
    debug_assert_eq!(representative.size(), best.cost + base);
    Ok(ClassMinimum {
        size: best.cost + base,
        representative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: &str, h: i64) -> XElement {
        XElement::new(p.parse().unwrap(), h)
    }

    #[test]
    fn small_classes() {
        assert_eq!(min_size_over_class(&x("0", 0), 3).unwrap(), 1);
        assert_eq!(min_size_over_class(&x("1", 0), 3).unwrap(), 2);
        assert_eq!(min_size_over_class(&x("z", 0), 3).unwrap(), 4);
        assert_eq!(min_size_over_class(&x("1 - 3z + z^2", 0), 3).unwrap(), 1);
        assert_eq!(min_size_over_class(&x("3z", 0), 3).unwrap(), 6);
    }

    #[test]
    fn representative_is_in_the_class() {
        for (p, h) in [("15", 0), ("7z^-2 + 4", 2), ("-9 + z^3", -1), ("3z", 0)] {
            let e = x(p, h);
            let m = class_minimum(&e, 3).unwrap();
            assert!(m.representative.equivalent(&e, 3).unwrap());
            assert_eq!(m.representative.size(), m.size);
            assert!(m.size <= e.size());
        }
        assert_eq!(
            class_minimum(&x("15", 0), 3).unwrap().representative,
            x("2z^-2 + 1 + 2z^2", 0)
        );
    }

    #[test]
    fn search_limit_is_reported() {
        let err = class_minimum_limited(&x("15", 0), 3, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
