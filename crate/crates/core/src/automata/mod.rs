//! Padded, weighted multi-tape finite state automata.
//!
//! A k-tape automaton reads a tuple of words synchronously, one letter per
//! tape per step. Shorter words are padded on the right with the symbol `$`
//! ([`PAD`]); once a tape has been padded it stays padded for the rest of
//! the path. Letters carry positive integer weights (padding weighs 0), which
//! turns every one-tape language into a sized set with a rational growth
//! series.
//!
//! States are numbered breadth-first from the start state by every
//! construction in this module, so serialisations are reproducible.

mod build;
mod fellow;
mod json;
mod ops;
pub(crate) mod series;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use build::{state_limit, with_state_limit, DEFAULT_STATE_LIMIT};
pub use fellow::{fellow_traveler_automaton, minimal_cross_section, shortlex_automaton};
pub use json::AutomatonJson;
pub use ops::CombineMode;
pub use series::RationalSeries;

pub(crate) use build::explore;

/// Index of a letter in an [`Alphabet`].
pub type Sym = u16;
/// The padding symbol `$`.
pub const PAD: Sym = Sym::MAX;
/// Upper bound on the number of tapes.
pub const MAX_TAPES: usize = 4;
pub type StateId = u32;

/// One transition label: a letter or padding per tape. Slots beyond the
/// automaton's tape count are always [`PAD`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label([Sym; MAX_TAPES]);

impl Label {
    pub fn new(slots: &[Sym]) -> Label {
        assert!(slots.len() <= MAX_TAPES, "at most {MAX_TAPES} tapes");
        let mut l = [PAD; MAX_TAPES];
        l[..slots.len()].copy_from_slice(slots);
        Label(l)
    }

    pub fn single(s: Sym) -> Label {
        Label::new(&[s])
    }

    pub fn slot(&self, i: usize) -> Sym {
        self.0[i]
    }

    pub fn with_slot(mut self, i: usize, s: Sym) -> Label {
        self.0[i] = s;
        self
    }

    /// Bit `i` set iff slot `i` is padding.
    pub fn pad_mask(&self, tapes: usize) -> u8 {
        (0..tapes)
            .filter(|&i| self.0[i] == PAD)
            .fold(0, |m, i| m | (1 << i))
    }

    pub fn is_all_pad(&self, tapes: usize) -> bool {
        self.0[..tapes].iter().all(|&s| s == PAD)
    }

    /// Removes slot `i`, shifting the later slots down.
    pub fn drop_slot(&self, i: usize) -> Label {
        let mut l = [PAD; MAX_TAPES];
        let mut k = 0;
        for (j, &s) in self.0.iter().enumerate() {
            if j != i {
                l[k] = s;
                k += 1;
            }
        }
        Label(l)
    }

    pub fn slots(&self, tapes: usize) -> &[Sym] {
        &self.0[..tapes]
    }

    /// Every label over `alphabet_len` letters (plus padding) that is valid
    /// after the tapes in `mask` have ended: masked slots padded, not all
    /// slots padded. Sorted.
    pub fn all_valid(tapes: usize, alphabet_len: usize, mask: u8) -> Vec<Label> {
        let mut out = vec![Label::new(&[])];
        for i in 0..tapes {
            let mut next = Vec::with_capacity(out.len() * (alphabet_len + 1));
            for l in &out {
                if mask & (1 << i) == 0 {
                    for s in 0..alphabet_len {
                        next.push(l.with_slot(i, s as Sym));
                    }
                }
                next.push(l.with_slot(i, PAD));
            }
            out = next;
        }
        out.retain(|l| !l.is_all_pad(tapes));
        out.sort();
        out
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&s| {
                if s == PAD {
                    "$".to_string()
                } else {
                    s.to_string()
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite, weighted letter set shared by all tapes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
    weights: Vec<u32>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut a = Alphabet {
            letters: Vec::new(),
            weights: Vec::new(),
        };
        for (name, w) in letters {
            let name = name.into();
            if name == "$" || name.is_empty() {
                return Err(Error::AlphabetMismatch(format!(
                    "reserved or empty letter {name:?}"
                )));
            }
            if w == 0 {
                return Err(Error::AlphabetMismatch(format!(
                    "letter {name:?} has weight 0"
                )));
            }
            if a.letters.contains(&name) {
                return Err(Error::AlphabetMismatch(format!(
                    "duplicate letter {name:?}"
                )));
            }
            a.letters.push(name);
            a.weights.push(w);
        }
        if a.letters.len() >= PAD as usize {
            return Err(Error::AlphabetMismatch("alphabet too large".into()));
        }
        Ok(a)
    }

    /// Unit-weight alphabet.
    pub fn unit<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(letters.into_iter().map(|l| (l, 1)))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn letter(&self, s: Sym) -> &str {
        if s == PAD {
            "$"
        } else {
            &self.letters[s as usize]
        }
    }

    pub fn weight(&self, s: Sym) -> u32 {
        if s == PAD {
            0
        } else {
            self.weights[s as usize]
        }
    }

    pub fn index(&self, name: &str) -> Option<Sym> {
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|i| i as Sym)
    }

    pub fn encode<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<Sym>> {
        word.iter()
            .map(|l| {
                self.index(l.as_ref())
                    .ok_or_else(|| Error::UnknownLetter(l.as_ref().to_string()))
            })
            .collect()
    }

    /// Encodes a string whose characters are single-character letters.
    pub fn encode_chars(&self, word: &str) -> Result<Vec<Sym>> {
        word.chars()
            .map(|c| {
                let s = c.to_string();
                self.index(&s).ok_or(Error::UnknownLetter(s))
            })
            .collect()
    }

    pub fn decode(&self, word: &[Sym]) -> Vec<&str> {
        word.iter().map(|&s| self.letter(s)).collect()
    }

    pub fn word_weight(&self, word: &[Sym]) -> u64 {
        word.iter().map(|&s| self.weight(s) as u64).sum()
    }

    /// Union of two alphabets; shared letters must agree on weight.
    pub fn merge(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut letters: Vec<(String, u32)> = self
            .letters
            .iter()
            .cloned()
            .zip(self.weights.iter().copied())
            .collect();
        for (l, &w) in other.letters.iter().zip(&other.weights) {
            match self.index(l) {
                Some(s) if self.weight(s) != w => {
                    return Err(Error::AlphabetMismatch(format!(
                        "letter {l:?} weighs {} and {w}",
                        self.weight(s)
                    )))
                }
                Some(_) => {}
                None => letters.push((l.clone(), w)),
            }
        }
        Alphabet::new(letters)
    }
}

/// A padded multi-tape automaton over a weighted alphabet. Immutable once
/// built; every operation returns a new automaton.
#[derive(Clone, PartialEq, Eq)]
pub struct Automaton {
    tapes: usize,
    alphabet: Arc<Alphabet>,
    start: StateId,
    finals: Vec<bool>,
    /// Outgoing edges per state, sorted by `(label, target)` without duplicates.
    edges: Vec<Vec<(Label, StateId)>>,
}

impl Automaton {
    /// Assembles an automaton from raw parts, validating indices, labels and
    /// the padding-persistence condition.
    pub fn from_parts(
        tapes: usize,
        alphabet: Alphabet,
        num_states: usize,
        start: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Label, StateId)>,
    ) -> Result<Self> {
        if tapes == 0 || tapes > MAX_TAPES {
            return Err(Error::Unsupported(format!(
                "{tapes} tapes (1..={MAX_TAPES} supported)"
            )));
        }
        if start as usize >= num_states {
            return Err(Error::Unsupported(format!(
                "start state {start} out of range"
            )));
        }
        let mut fin = vec![false; num_states];
        for f in finals {
            *fin.get_mut(f as usize)
                .ok_or_else(|| Error::Unsupported(format!("final state {f} out of range")))? = true;
        }
        let mut edges = vec![Vec::new(); num_states];
        for (from, label, to) in transitions {
            if from as usize >= num_states || to as usize >= num_states {
                return Err(Error::Unsupported(format!(
                    "transition {from}->{to} out of range"
                )));
            }
            if label.is_all_pad(tapes) || label.0[tapes..].iter().any(|&s| s != PAD) {
                return Err(Error::Unsupported(format!("invalid label {label:?}")));
            }
            if label.0[..tapes]
                .iter()
                .any(|&s| s != PAD && s as usize >= alphabet.len())
            {
                return Err(Error::Unsupported(format!(
                    "label {label:?} uses an unknown letter"
                )));
            }
            edges[from as usize].push((label, to));
        }
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        let m = Automaton {
            tapes,
            alphabet: Arc::new(alphabet),
            start,
            finals: fin,
            edges,
        };
        if !m.padding_is_persistent() {
            return Err(Error::Unsupported(
                "padding-persistence violated: a padded slot is followed by a letter".into(),
            ));
        }
        Ok(m)
    }

    pub(crate) fn from_raw(
        tapes: usize,
        alphabet: Arc<Alphabet>,
        start: StateId,
        finals: Vec<bool>,
        edges: Vec<Vec<(Label, StateId)>>,
    ) -> Self {
        Automaton {
            tapes,
            alphabet,
            start,
            finals,
            edges,
        }
    }

    /// The automaton with a single non-final state and no transitions.
    pub fn empty(tapes: usize, alphabet: Alphabet) -> Self {
        Automaton::from_raw(tapes, Arc::new(alphabet), 0, vec![false], vec![Vec::new()])
    }

    /// One-tape automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let edges = (0..alphabet.len())
            .map(|s| (Label::single(s as Sym), 0))
            .collect();
        Automaton::from_raw(1, Arc::new(alphabet), 0, vec![true], vec![edges])
    }

    /// One-tape automaton accepting exactly the given words (a trie).
    pub fn from_words(alphabet: Alphabet, words: &[Vec<Sym>]) -> Self {
        let mut finals = vec![false];
        let mut edges: Vec<Vec<(Label, StateId)>> = vec![Vec::new()];
        for w in words {
            let mut q = 0usize;
            for &s in w {
                let l = Label::single(s);
                q = match edges[q].iter().find(|(el, _)| *el == l) {
                    Some(&(_, t)) => t as usize,
                    None => {
                        edges.push(Vec::new());
                        finals.push(false);
                        let t = edges.len() - 1;
                        edges[q].push((l, t as StateId));
                        t
                    }
                };
            }
            finals[q] = true;
        }
        let m = Automaton::from_raw(1, Arc::new(alphabet), 0, finals, edges);
        m.renumber()
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub(crate) fn alphabet_arc(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i as StateId)
    }

    pub fn edges(&self, q: StateId) -> &[(Label, StateId)] {
        &self.edges[q as usize]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(q, es)| es.iter().map(move |&(l, t)| (q as StateId, l, t)))
    }

    /// Targets of `q` on `label`.
    pub fn successors(&self, q: StateId, label: Label) -> impl Iterator<Item = StateId> + '_ {
        let es = &self.edges[q as usize];
        let lo = es.partition_point(|(l, _)| *l < label);
        es[lo..]
            .iter()
            .take_while(move |(l, _)| *l == label)
            .map(|&(_, t)| t)
    }

    /// No state has two transitions with the same label.
    pub fn is_deterministic(&self) -> bool {
        self.edges
            .iter()
            .all(|es| es.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Whether the padded label sequence of `words` traces a start-to-final
    /// path. Works for nondeterministic automata.
    pub fn accepts<W: AsRef<[Sym]>>(&self, words: &[W]) -> Result<bool> {
        if words.len() != self.tapes {
            return Err(Error::TapeMismatch {
                left: self.tapes,
                right: words.len(),
            });
        }
        for w in words {
            if let Some(&s) = w
                .as_ref()
                .iter()
                .find(|&&s| s as usize >= self.alphabet.len())
            {
                return Err(Error::UnknownLetter(format!("#{s}")));
            }
        }
        let m = words.iter().map(|w| w.as_ref().len()).max().unwrap_or(0);
        let mut current: BTreeSet<StateId> = [self.start].into();
        for j in 0..m {
            let slots: Vec<Sym> = words
                .iter()
                .map(|w| w.as_ref().get(j).copied().unwrap_or(PAD))
                .collect();
            let label = Label::new(&slots);
            current = current
                .iter()
                .flat_map(|&q| self.successors(q, label))
                .collect();
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|&q| self.is_final(q)))
    }

    /// [`accepts`](Self::accepts) for words given as letter names.
    pub fn accepts_letters<S: AsRef<str>>(&self, words: &[&[S]]) -> Result<bool> {
        let enc = words
            .iter()
            .map(|w| self.alphabet.encode(w))
            .collect::<Result<Vec<_>>>()?;
        self.accepts(&enc)
    }

    /// [`accepts`](Self::accepts) for single-character letters, e.g.
    /// `accepts_chars(&["xy", "x"])`.
    pub fn accepts_chars(&self, words: &[&str]) -> Result<bool> {
        let enc = words
            .iter()
            .map(|w| self.alphabet.encode_chars(w))
            .collect::<Result<Vec<_>>>()?;
        self.accepts(&enc)
    }

    /// All accepted tuples whose total weight (over all tapes) is at most
    /// `max_weight`, sorted and without duplicates.
    pub fn enumerate(&self, max_weight: u64) -> Vec<Vec<Vec<Sym>>> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(self.start, vec![Vec::new(); self.tapes], 0u64)];
        while let Some((q, words, weight)) = stack.pop() {
            if self.is_final(q) {
                out.insert(words.clone());
            }
            for &(l, t) in self.edges(q) {
                let w: u64 = l
                    .slots(self.tapes)
                    .iter()
                    .map(|&s| self.alphabet.weight(s) as u64)
                    .sum();
                if weight + w > max_weight {
                    continue;
                }
                let mut next = words.clone();
                for (i, word) in next.iter_mut().enumerate() {
                    if l.slot(i) != PAD {
                        word.push(l.slot(i));
                    }
                }
                stack.push((t, next, weight + w));
            }
        }
        out.into_iter().collect()
    }

    /// Checks that every edge reachable after an edge padded in slot `k` is
    /// also padded in slot `k`.
    pub fn padding_is_persistent(&self) -> bool {
        let n = self.num_states();
        let full: u8 = ((1u16 << self.tapes) - 1) as u8;
        // must[q]: slots padded on every edge reachable from q.
        let mut must = vec![full; n];
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                let mut m = full;
                for &(l, t) in &self.edges[q] {
                    m &= l.pad_mask(self.tapes) & must[t as usize];
                }
                if m != must[q] {
                    must[q] = m;
                    changed = true;
                }
            }
        }
        self.transitions()
            .all(|(_, l, t)| l.pad_mask(self.tapes) & !must[t as usize] == 0)
    }

    /// States reachable from the start.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for &(_, t) in self.edges(q) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            rev[t as usize].push(q);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Removes states that are unreachable or cannot reach a final state,
    /// then renumbers breadth-first. The start state is always kept.
    pub fn trim(&self) -> Automaton {
        let (r, c) = (self.reachable(), self.coreachable());
        let keep = |q: StateId| r[q as usize] && c[q as usize];
        build::explore_existing(self, |q, out| {
            out.extend(self.edges(q).iter().filter(|(_, t)| keep(*t)).copied());
        })
    }

    /// Breadth-first renumbering of the reachable part.
    pub fn renumber(&self) -> Automaton {
        build::explore_existing(self, |q, out| out.extend_from_slice(self.edges(q)))
    }

    /// Whether the accepted language is empty.
    pub fn is_empty_language(&self) -> bool {
        !self.coreachable()[self.start as usize]
    }
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automaton")
            .field("tapes", &self.tapes)
            .field("alphabet", &self.alphabet.letters)
            .field("states", &self.num_states())
            .field("transitions", &self.num_transitions())
            .field("start", &self.start)
            .finish()
    }
}
