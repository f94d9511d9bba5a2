use std::cell::Cell;
use std::collections::VecDeque;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Alphabet, Automaton, Label, StateId};
use crate::error::{Error, Result};

/// State budget applied to every construction unless overridden.
pub const DEFAULT_STATE_LIMIT: usize = 4_000_000;

thread_local! {
    static STATE_LIMIT: Cell<usize> = const { Cell::new(DEFAULT_STATE_LIMIT) };
}

/// The state budget in effect on this thread.
pub fn state_limit() -> usize {
    STATE_LIMIT.with(Cell::get)
}

/// Runs `f` with a different state budget on this thread. Any construction
/// that would exceed it fails with [`Error::ResourceLimit`].
pub fn with_state_limit<R>(limit: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            STATE_LIMIT.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(STATE_LIMIT.with(|c| c.replace(limit)));
    f()
}

/// Builds the reachable part of an implicitly described automaton.
///
/// `expand` receives a state key, appends its outgoing `(label, key)` pairs
/// and reports whether the state is final. States are numbered in order of
/// discovery, with successors visited in label order, so the result depends
/// only on the keys and the order `expand` emits targets per label.
pub(crate) fn explore<K, F>(
    tapes: usize,
    alphabet: Arc<Alphabet>,
    start: K,
    expand: F,
) -> Result<Automaton>
where
    K: Hash + Eq + Clone,
    F: FnMut(&K, &mut Vec<(Label, K)>) -> Result<bool>,
{
    explore_limited(tapes, alphabet, start, state_limit(), expand)
}

fn explore_limited<K, F>(
    tapes: usize,
    alphabet: Arc<Alphabet>,
    start: K,
    limit: usize,
    mut expand: F,
) -> Result<Automaton>
where
    K: Hash + Eq + Clone,
    F: FnMut(&K, &mut Vec<(Label, K)>) -> Result<bool>,
{
    let mut ids: FxHashMap<K, StateId> = FxHashMap::default();
    ids.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut finals = Vec::new();
    let mut edges = Vec::new();
    let mut buf = Vec::new();
    while let Some(key) = queue.pop_front() {
        buf.clear();
        finals.push(expand(&key, &mut buf)?);
        buf.sort_by_key(|a| a.0);
        let mut out = Vec::with_capacity(buf.len());
        for (label, k) in buf.drain(..) {
            let next = ids.len();
            let id = *ids.entry(k).or_insert_with_key(|k| {
                queue.push_back(k.clone());
                next as StateId
            });
            if ids.len() > limit {
                return Err(Error::ResourceLimit {
                    what: "automaton states".into(),
                    limit: limit as u64,
                    estimate: None,
                });
            }
            out.push((label, id));
        }
        out.sort_unstable();
        out.dedup();
        edges.push(out);
    }
    Ok(Automaton::from_raw(tapes, alphabet, 0, finals, edges))
}

/// Rebuilds `m` from its own states with edges supplied by `edges_of`,
/// keeping finality. Used for trimming and renumbering.
pub(crate) fn explore_existing(
    m: &Automaton,
    mut edges_of: impl FnMut(StateId, &mut Vec<(Label, StateId)>),
) -> Automaton {
    let mut tmp = Vec::new();
    explore_limited(
        m.tapes(),
        m.alphabet_arc().clone(),
        m.start(),
        usize::MAX,
        |&q, out| {
            tmp.clear();
            edges_of(q, &mut tmp);
            out.extend_from_slice(&tmp);
            Ok(m.is_final(q))
        },
    )
    .expect("unlimited rebuild cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_is_enforced_and_restored() {
        let a = Arc::new(Alphabet::unit(["x"]).unwrap());
        let counter = |limit| {
            with_state_limit(limit, || {
                explore(1, a.clone(), 0u32, |&k, out| {
                    if k < 100 {
                        out.push((Label::single(0), k + 1));
                    }
                    Ok(k == 100)
                })
            })
        };
        assert!(matches!(counter(50), Err(Error::ResourceLimit { .. })));
        assert_eq!(counter(1000).unwrap().num_states(), 101);
        assert_eq!(state_limit(), DEFAULT_STATE_LIMIT);
    }
}
