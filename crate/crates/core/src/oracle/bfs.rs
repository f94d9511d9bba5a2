use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solgroup::{GroupElement, GroupParams, GroupWord};

/// Default cap on the number of elements held at once (three spheres).
pub const DEFAULT_MAX_ELEMENTS: u64 = 60_000_000;

/// Sphere sizes `c_0..c_radius` of the word metric for a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCounts {
    pub trace: i64,
    pub radius: u32,
    pub generators: Vec<GroupWord>,
    pub counts: Vec<u64>,
}

impl SphereCounts {
    /// `radius,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("radius,count\n");
        for (r, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{r},{c}\n"));
        }
        s
    }

    /// Cumulative ball sizes.
    pub fn ball_sizes(&self) -> Vec<u64> {
        self.counts
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }
}

type Key = (i64, i64, i64);

fn key(g: &GroupElement) -> Key {
    (g.height, g.x[0], g.x[1])
}

fn element(k: Key) -> GroupElement {
    GroupElement::new([k.1, k.2], k.0)
}

/// Right multiplication by one symmetrized generator, with `M^h x_s`
/// tabulated over the reachable heights.
struct Step {
    height: i64,
    moved: Vec<[i64; 2]>,
    offset: i64,
}

impl Step {
    fn apply(&self, k: Key) -> Option<Key> {
        let m = self.moved.get((k.0 + self.offset) as usize)?;
        Some((
            k.0 + self.height,
            k.1.checked_add(m[0])?,
            k.2.checked_add(m[1])?,
        ))
    }
}

fn steps(p: &GroupParams, generators: &[GroupWord], radius: u32) -> Result<Vec<Step>> {
    if generators.is_empty() {
        return Err(Error::Unsupported(
            "at least one generator is required".into(),
        ));
    }
    let mut elems = Vec::new();
    for w in generators {
        let g = p.eval_element(w)?;
        elems.push(g);
        elems.push(p.invert(&g)?);
    }
    elems.sort();
    elems.dedup();
    elems.retain(|g| *g != GroupElement::IDENTITY);
    let max_h = elems.iter().map(|g| g.height.abs()).max().unwrap_or(0);
    let span = max_h * radius as i64;
    elems
        .into_iter()
        .map(|g| {
            let moved = (-span..=span)
                .map(|h| p.apply_power(h, g.x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Step {
                height: g.height,
                moved,
                offset: span,
            })
        })
        .collect()
}

/// Breadth-first search keeping three spheres as sorted vectors. `visit` is
/// called with each sphere in order.
fn explore_spheres(
    trace: i64,
    generators: &[GroupWord],
    radius: u32,
    max_elements: u64,
    mut visit: impl FnMut(u32, &[Key]),
) -> Result<()> {
    let p = GroupParams::new(trace)?;
    let steps = steps(&p, generators, radius)?;
    let mut prev: Vec<Key> = Vec::new();
    let mut cur: Vec<Key> = vec![key(&GroupElement::IDENTITY)];
    visit(0, &cur);
    for r in 1..=radius {
        let chunks: Vec<Vec<Key>> = cur
            .par_chunks(4096)
            .map(|chunk| {
                let mut out = Vec::with_capacity(chunk.len() * steps.len());
                for &k in chunk {
                    for s in &steps {
                        let n = s.apply(k).ok_or(Error::Overflow("sphere exploration"))?;
                        if prev.binary_search(&n).is_err() && cur.binary_search(&n).is_err() {
                            out.push(n);
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut next: Vec<Key> = chunks.concat();
        next.par_sort_unstable();
        next.dedup();
        let held = (prev.len() + cur.len() + next.len()) as u64;
        if held > max_elements {
            return Err(Error::ResourceLimit {
                what: format!("ball of radius {radius}"),
                limit: max_elements,
                estimate: Some(held),
            });
        }
        visit(r, &next);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(())
}

/// Exact sphere sizes up to `radius` for the symmetrized generating set,
/// every generator weighing 1.
pub fn ball_bfs(trace: i64, generators: &[GroupWord], radius: u32) -> Result<SphereCounts> {
    ball_bfs_limited(trace, generators, radius, DEFAULT_MAX_ELEMENTS)
}

pub fn ball_bfs_limited(
    trace: i64,
    generators: &[GroupWord],
    radius: u32,
    max_elements: u64,
) -> Result<SphereCounts> {
    let mut counts = Vec::with_capacity(radius as usize + 1);
    explore_spheres(trace, generators, radius, max_elements, |_, s| {
        counts.push(s.len() as u64)
    })?;
    Ok(SphereCounts {
        trace,
        radius,
        generators: generators.to_vec(),
        counts,
    })
}

/// Every element of the ball with its word norm, sphere by sphere.
pub fn ball_elements(
    trace: i64,
    generators: &[GroupWord],
    radius: u32,
) -> Result<Vec<(GroupElement, u32)>> {
    let mut out = Vec::new();
    explore_spheres(trace, generators, radius, DEFAULT_MAX_ELEMENTS, |r, s| {
        out.extend(s.iter().map(|&k| (element(k), r)))
    })?;
    Ok(out)
}
