use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{build, explore, Alphabet, Automaton, Label, StateId, Sym, MAX_TAPES, PAD};
use crate::error::{Error, Result};

/// Boolean combination modes for [`Automaton::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineMode {
    Union,
    Intersection,
    Concatenation,
}

/// Brings two automata onto a common alphabet.
fn align<'a>(
    a: &'a Automaton,
    b: &'a Automaton,
) -> Result<(Cow<'a, Automaton>, Cow<'a, Automaton>)> {
    if a.tapes != b.tapes {
        return Err(Error::TapeMismatch {
            left: a.tapes,
            right: b.tapes,
        });
    }
    if Arc::ptr_eq(&a.alphabet, &b.alphabet) || a.alphabet == b.alphabet {
        return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
    }
    let merged = Arc::new(a.alphabet.merge(&b.alphabet)?);
    Ok((
        Cow::Owned(a.with_alphabet(&merged)),
        Cow::Owned(b.with_alphabet(&merged)),
    ))
}

impl Automaton {
    /// Re-encodes the labels over a superset alphabet.
    pub(crate) fn with_alphabet(&self, target: &Arc<Alphabet>) -> Automaton {
        let map: Vec<Sym> = self
            .alphabet
            .letters()
            .iter()
            .map(|l| target.index(l).expect("target alphabet is a superset"))
            .collect();
        let remap = |l: Label| {
            let mut out = l;
            for i in 0..self.tapes {
                if l.slot(i) != PAD {
                    out = out.with_slot(i, map[l.slot(i) as usize]);
                }
            }
            out
        };
        let edges = self
            .edges
            .iter()
            .map(|es| {
                let mut v: Vec<_> = es.iter().map(|&(l, t)| (remap(l), t)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Automaton::from_raw(
            self.tapes,
            target.clone(),
            self.start,
            self.finals.clone(),
            edges,
        )
    }

    fn has_padded_edges(&self) -> bool {
        self.transitions()
            .any(|(_, l, _)| l.pad_mask(self.tapes) != 0)
    }

    /// Union, intersection or concatenation of two automata with the same
    /// tape count. Concatenation of multi-tape automata is only supported
    /// when the left operand never pads, since otherwise the result is in
    /// general not a padded language.
    pub fn combine(&self, other: &Automaton, mode: CombineMode) -> Result<Automaton> {
        let (a, b) = align(self, other)?;
        match mode {
            CombineMode::Intersection => intersection(&a, &b),
            CombineMode::Union => union(&a, &b),
            CombineMode::Concatenation => {
                if a.tapes > 1 && a.has_padded_edges() {
                    return Err(Error::Unsupported(
                        "concatenation of multi-tape automata whose left operand pads".into(),
                    ));
                }
                concatenation(&a, &b)
            }
        }
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(other, CombineMode::Intersection)
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(other, CombineMode::Union)
    }

    pub fn concat(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(other, CombineMode::Concatenation)
    }

    /// Subset construction. The result is deterministic and accepts the
    /// same tuples.
    pub fn determinize(&self) -> Result<Automaton> {
        if self.is_deterministic() {
            return Ok(self.renumber());
        }
        let mut buf: Vec<(Label, StateId)> = Vec::new();
        explore(
            self.tapes,
            self.alphabet.clone(),
            vec![self.start],
            |set: &Vec<StateId>, out| {
                buf.clear();
                for &q in set {
                    buf.extend_from_slice(self.edges(q));
                }
                buf.sort_unstable();
                buf.dedup();
                let mut i = 0;
                while i < buf.len() {
                    let label = buf[i].0;
                    let j = i + buf[i..].partition_point(|e| e.0 == label);
                    out.push((label, buf[i..j].iter().map(|e| e.1).collect()));
                    i = j;
                }
                Ok(set.iter().any(|&q| self.is_final(q)))
            },
        )
    }

    /// Complement relative to all padded tuples over the alphabet. The input
    /// is determinized first if necessary; the result is deterministic.
    pub fn complement(&self) -> Result<Automaton> {
        let d = self.determinize()?;
        let k = self.tapes;
        let n = self.alphabet.len();
        let labels: Vec<Vec<Label>> = (0..1u16 << k)
            .map(|m| Label::all_valid(k, n, m as u8))
            .collect();
        explore(
            k,
            d.alphabet.clone(),
            (Some(d.start), 0u8),
            |&(q, mask), out| {
                for &l in &labels[mask as usize] {
                    let t = q.and_then(|q| d.successors(q, l).next());
                    out.push((l, (t, mask | l.pad_mask(k))));
                }
                Ok(q.is_none_or(|q| !d.is_final(q)))
            },
        )
    }

    /// Accepts the tuples of reversed words. Padding is moved back to the
    /// end of each reversed tape, which needs a buffer as long as the
    /// largest length difference between tapes; automata with a padded
    /// cycle (unbounded difference) are rejected.
    pub fn reverse(&self) -> Result<Automaton> {
        let m = self.trim();
        let k = m.tapes;
        let lag = m.max_padded_run()?;
        let mut rev: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); m.num_states()];
        for (q, l, t) in m.transitions() {
            rev[t as usize].push((l, q));
        }
        for r in &mut rev {
            r.sort_unstable();
        }
        let starts: Vec<StateId> = m.finals().collect();
        let alphabet_len = m.alphabet.len();

        let delays: Vec<[u8; MAX_TAPES]> = {
            let mut all = vec![[0u8; MAX_TAPES]];
            for i in 0..k {
                all = all
                    .into_iter()
                    .flat_map(|d| {
                        (0..=lag).map(move |x| {
                            let mut d = d;
                            d[i] = x;
                            d
                        })
                    })
                    .collect();
            }
            all.retain(|d| d[..k].contains(&0));
            all
        };
        let init = RevKey {
            q: StateId::MAX,
            delays: [0; MAX_TAPES],
            ended: 0,
            queues: Vec::new(),
        };
        let empty_queues = vec![Vec::new(); k];
        explore(k, m.alphabet.clone(), init, |key, out| {
            if key.q == StateId::MAX {
                for &q in &starts {
                    for d in &delays {
                        let run = RevKey {
                            q,
                            delays: *d,
                            ended: 0,
                            queues: empty_queues.clone(),
                        };
                        reverse_step(&run, &rev, k, alphabet_len, out);
                    }
                }
                return Ok(m.is_final(m.start));
            }
            reverse_step(key, &rev, k, alphabet_len, out);
            Ok(key.q == m.start && key.queues.iter().flatten().all(|&s| s == PAD))
        })
    }

    /// Longest run of consecutive padded edges; errors if a padded edge
    /// lies on a cycle.
    fn max_padded_run(&self) -> Result<u8> {
        let n = self.num_states();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        let mut depth = vec![0u32; n];
        for root in 0..n {
            if color[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                let es = &self.edges[q];
                if let Some(&(l, t)) = es.get(*i) {
                    *i += 1;
                    if l.pad_mask(self.tapes) == 0 {
                        continue;
                    }
                    match color[t as usize] {
                        0 => {
                            color[t as usize] = 1;
                            stack.push((t as usize, 0));
                        }
                        1 => {
                            return Err(Error::Unsupported(
                                "reversal of an automaton with a padded cycle".into(),
                            ))
                        }
                        _ => {}
                    }
                } else {
                    stack.pop();
                    color[q] = 2;
                    depth[q] = es
                        .iter()
                        .filter(|(l, _)| l.pad_mask(self.tapes) != 0)
                        .map(|&(_, t)| depth[t as usize] + 1)
                        .max()
                        .unwrap_or(0);
                }
            }
        }
        let max = depth.into_iter().max().unwrap_or(0);
        u8::try_from(max).map_err(|_| Error::ResourceLimit {
            what: "padding lag for reversal".into(),
            limit: u8::MAX as u64,
            estimate: Some(max as u64),
        })
    }

    /// Existential projection: drops tape `tape` (0-based) and accepts the
    /// remaining tuples for which some word on the dropped tape completes an
    /// accepted tuple. Deterministic and trimmed.
    pub fn project_exists(&self, tape: usize) -> Result<Automaton> {
        if self.tapes < 2 {
            return Err(Error::Unsupported(
                "projection needs at least two tapes".into(),
            ));
        }
        if tape >= self.tapes {
            return Err(Error::BadTapeIndex {
                index: tape,
                tapes: self.tapes,
            });
        }
        let n = self.num_states();
        let k = self.tapes - 1;
        let mut edges: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); n];
        let mut eps_rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, l, t) in self.transitions() {
            let l2 = l.drop_slot(tape);
            if l2.is_all_pad(k) {
                eps_rev[t as usize].push(q);
            } else {
                edges[q as usize].push((l2, t));
            }
        }
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        let mut finals = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &eps_rev[q as usize] {
                if !finals[p as usize] {
                    finals[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        let raw = Automaton::from_raw(k, self.alphabet.clone(), self.start, finals, edges);
        if k == 1 {
            // Determinizing the reversal and reversing back yields the
            // minimal automaton and usually visits far fewer subsets than a
            // direct subset construction of a projection.
            raw.reverse()?
                .determinize()?
                .minimize()?
                .reverse()?
                .determinize()
        } else {
            Ok(raw.determinize()?.trim())
        }
    }

    /// Synchronous product of one-tape automata: accepts `(w_1, ..., w_k)`
    /// iff each `w_i` is accepted by `parts[i]`.
    pub fn product_tapes(parts: &[&Automaton]) -> Result<Automaton> {
        if parts.is_empty() || parts.len() > MAX_TAPES {
            return Err(Error::Unsupported(format!(
                "product of {} automata (1..={MAX_TAPES} supported)",
                parts.len()
            )));
        }
        if let Some(p) = parts.iter().find(|p| p.tapes != 1) {
            return Err(Error::TapeMismatch {
                left: 1,
                right: p.tapes,
            });
        }
        let mut alphabet = parts[0].alphabet.as_ref().clone();
        for p in &parts[1..] {
            alphabet = alphabet.merge(&p.alphabet)?;
        }
        let alphabet = Arc::new(alphabet);
        let parts: Vec<Cow<Automaton>> = parts
            .iter()
            .map(|p| {
                if *p.alphabet == *alphabet {
                    Cow::Borrowed(*p)
                } else {
                    Cow::Owned(p.with_alphabet(&alphabet))
                }
            })
            .collect();
        let k = parts.len();
        let mut start = [0 as StateId; MAX_TAPES];
        for (i, p) in parts.iter().enumerate() {
            start[i] = p.start;
        }
        explore(k, alphabet.clone(), (start, 0u8), |&(qs, ended), out| {
            let mut combos: Vec<(Label, [StateId; MAX_TAPES], u8)> =
                vec![(Label::new(&[]), qs, ended)];
            for (i, p) in parts.iter().enumerate() {
                let mut next = Vec::new();
                for (l, q, e) in &combos {
                    if e & (1 << i) != 0 {
                        next.push((*l, *q, *e));
                        continue;
                    }
                    for &(el, t) in p.edges(qs[i]) {
                        let mut q2 = *q;
                        q2[i] = t;
                        next.push((l.with_slot(i, el.slot(0)), q2, *e));
                    }
                    if p.is_final(qs[i]) {
                        next.push((*l, *q, e | (1 << i)));
                    }
                }
                combos = next;
            }
            for (l, q, e) in combos {
                if !l.is_all_pad(k) {
                    out.push((l, (q, e)));
                }
            }
            Ok(parts.iter().enumerate().all(|(i, p)| p.is_final(qs[i])))
        })
    }

    /// Accepts tuples whose tape `tape` holds `w` such that replacing `w` by
    /// `prefix · w · suffix` gives a tuple accepted by `self`.
    pub fn pad_tape(&self, tape: usize, prefix: &[Sym], suffix: &[Sym]) -> Result<Automaton> {
        if tape >= self.tapes {
            return Err(Error::BadTapeIndex {
                index: tape,
                tapes: self.tapes,
            });
        }
        let n = self.alphabet.len();
        if let Some(&s) = prefix.iter().chain(suffix).find(|&&s| s as usize >= n) {
            return Err(Error::UnknownLetter(format!("#{s}")));
        }
        let k = self.tapes;
        let solo = |s: Sym| Label::new(&[]).with_slot(tape, s);
        // Accepts iff `rest` can be read from `q` with every other tape padded.
        let finishes = |q: StateId, rest: &[Sym]| {
            let mut cur = vec![q];
            for &s in rest {
                let mut next: Vec<StateId> = cur
                    .iter()
                    .flat_map(|&p| self.successors(p, solo(s)))
                    .collect();
                next.sort_unstable();
                next.dedup();
                cur = next;
            }
            cur.iter().any(|&p| self.is_final(p))
        };
        explore(
            k,
            self.alphabet.clone(),
            (self.start, prefix.to_vec(), false),
            |(q, queue, ended), out| {
                let rem: Vec<Sym> = if *ended {
                    queue.clone()
                } else {
                    queue.iter().chain(suffix).copied().collect()
                };
                for &(rho, t) in self.edges(*q) {
                    let r = rho.slot(tape);
                    if !ended {
                        if queue.is_empty() {
                            if r != PAD {
                                out.push((rho, (t, Vec::new(), false)));
                            }
                        } else if r == queue[0] {
                            for x in 0..n as Sym {
                                let mut nq = queue[1..].to_vec();
                                nq.push(x);
                                out.push((rho.with_slot(tape, x), (t, nq, false)));
                            }
                        }
                    }
                    let emitted = rem.first().copied().unwrap_or(PAD);
                    let sigma = rho.with_slot(tape, PAD);
                    if r == emitted && !sigma.is_all_pad(k) {
                        let nq = rem.get(1..).unwrap_or(&[]).to_vec();
                        out.push((sigma, (t, nq, true)));
                    }
                }
                Ok(finishes(*q, &rem))
            },
        )
    }

    /// Moore partition refinement on the trimmed automaton. Requires a
    /// deterministic input.
    pub fn minimize(&self) -> Result<Automaton> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let m = self.trim();
        let n = m.num_states();
        let mut class: Vec<u32> = m.finals.iter().map(|&f| f as u32).collect();
        let mut count = class
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        loop {
            let mut ids: FxHashMap<(u32, Vec<(Label, u32)>), u32> = FxHashMap::default();
            let mut next = Vec::with_capacity(n);
            for q in 0..n {
                let sig: Vec<(Label, u32)> = m.edges[q]
                    .iter()
                    .map(|&(l, t)| (l, class[t as usize]))
                    .collect();
                let len = ids.len() as u32;
                next.push(*ids.entry((class[q], sig)).or_insert(len));
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep: Vec<Option<StateId>> = vec![None; count];
        for q in 0..n {
            rep[class[q] as usize].get_or_insert(q as StateId);
        }
        let edges_of = |q: StateId| -> Vec<(Label, StateId)> {
            m.edges(q)
                .iter()
                .map(|&(l, t)| (l, rep[class[t as usize] as usize].unwrap()))
                .collect()
        };
        let quotient = build::explore_existing(&m, |q, out| out.extend(edges_of(q)));
        Ok(quotient)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct RevKey {
    q: StateId,
    delays: [u8; MAX_TAPES],
    ended: u8,
    queues: Vec<Vec<Sym>>,
}

/// One step of the delayed reversed simulation from `key`: for every
/// reversed edge whose expected emissions agree with the buffers, emits the
/// input labels that produce it.
fn reverse_step(
    key: &RevKey,
    rev: &[Vec<(Label, StateId)>],
    k: usize,
    alphabet_len: usize,
    out: &mut Vec<(Label, RevKey)>,
) {
    'edges: for &(rho, q2) in &rev[key.q as usize] {
        // choices[i]: possible input symbols on tape i
        let mut choices: Vec<Vec<Sym>> = Vec::with_capacity(k);
        for i in 0..k {
            let d = key.delays[i] as usize;
            let ended = key.ended & (1 << i) != 0;
            if d == 0 {
                let s = rho.slot(i);
                if ended && s != PAD {
                    continue 'edges;
                }
                choices.push(vec![s]);
                continue;
            }
            let q = &key.queues[i];
            let expect = if q.len() == d { q[0] } else { PAD };
            if rho.slot(i) != expect {
                continue 'edges;
            }
            if ended {
                choices.push(vec![PAD]);
            } else {
                choices.push((0..alphabet_len as Sym).chain([PAD]).collect());
            }
        }
        let mut sigmas = vec![Label::new(&[])];
        for (i, c) in choices.iter().enumerate() {
            sigmas = sigmas
                .iter()
                .flat_map(|l| c.iter().map(move |&s| l.with_slot(i, s)))
                .collect();
        }
        for sigma in sigmas {
            if sigma.is_all_pad(k) {
                continue;
            }
            let mut queues = key.queues.clone();
            for (i, q) in queues.iter_mut().enumerate() {
                let d = key.delays[i] as usize;
                if d > 0 {
                    q.push(sigma.slot(i));
                    if q.len() > d {
                        q.remove(0);
                    }
                }
            }
            let next = RevKey {
                q: q2,
                delays: key.delays,
                ended: key.ended | sigma.pad_mask(k),
                queues,
            };
            out.push((sigma, next));
        }
    }
}

fn intersection(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    explore(
        a.tapes,
        a.alphabet.clone(),
        (a.start, b.start),
        |&(p, q), out| {
            let (ea, eb) = (a.edges(p), b.edges(q));
            let (mut i, mut j) = (0, 0);
            while i < ea.len() && j < eb.len() {
                match ea[i].0.cmp(&eb[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let l = ea[i].0;
                        let i2 = i + ea[i..].partition_point(|e| e.0 == l);
                        let j2 = j + eb[j..].partition_point(|e| e.0 == l);
                        for x in &ea[i..i2] {
                            for y in &eb[j..j2] {
                                out.push((l, (x.1, y.1)));
                            }
                        }
                        i = i2;
                        j = j2;
                    }
                }
            }
            Ok(a.is_final(p) && b.is_final(q))
        },
    )
}

fn union(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    type Side = Option<StateId>;
    explore(
        a.tapes,
        a.alphabet.clone(),
        (Some(a.start), Some(b.start)),
        |&(p, q), out| {
            let mut by_label: BTreeMap<Label, (Vec<Side>, Vec<Side>)> = BTreeMap::new();
            if let Some(p) = p {
                for &(l, t) in a.edges(p) {
                    by_label.entry(l).or_default().0.push(Some(t));
                }
            }
            if let Some(q) = q {
                for &(l, t) in b.edges(q) {
                    by_label.entry(l).or_default().1.push(Some(t));
                }
            }
            for (l, (mut xs, mut ys)) in by_label {
                if xs.is_empty() {
                    xs.push(None);
                }
                if ys.is_empty() {
                    ys.push(None);
                }
                for &x in &xs {
                    for &y in &ys {
                        out.push((l, (x, y)));
                    }
                }
            }
            Ok(p.is_some_and(|p| a.is_final(p)) || q.is_some_and(|q| b.is_final(q)))
        },
    )
}

fn concatenation(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    let b_start_final = b.is_final(b.start);
    explore(
        a.tapes,
        a.alphabet.clone(),
        (false, a.start),
        |&(right, q), out| {
            if right {
                out.extend(b.edges(q).iter().map(|&(l, t)| (l, (true, t))));
                return Ok(b.is_final(q));
            }
            out.extend(a.edges(q).iter().map(|&(l, t)| (l, (false, t))));
            if a.is_final(q) {
                out.extend(b.edges(b.start).iter().map(|&(l, t)| (l, (true, t))));
            }
            Ok(a.is_final(q) && b_start_final)
        },
    )
}
