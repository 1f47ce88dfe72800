//! Deterministic one-letter transducers with monoid outputs.
//!
//! A machine has an initial output `ι`, per-transition outputs `λ` and
//! per-final-state outputs `Ψ`. It represents the partial function
//!
//! ```text
//! w ↦ ι ∘ λ*(start, w) ∘ Ψ(δ*(start, w))     when δ*(start, w) is final
//! ```
//!
//! Partial machines are allowed; [`SubseqTransducer::complete`] adds a sink.

pub(crate) mod format;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid, Value};
use crate::word::{Alphabet, Letter, Word};

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub output: Element,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubseqTransducer {
    monoid: Monoid,
    alphabet: Alphabet,
    start: StateId,
    init_out: Element,
    finals: Vec<Option<Element>>,
    // row-major: state * |Σ| + letter index
    trans: Vec<Option<Transition>>,
}

/// A run through the machine: the letters read and the output of each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub source: StateId,
    pub letters: Word,
    pub outputs: Vec<Element>,
    pub target: StateId,
}

impl Path {
    /// Product of the step outputs; the unit for the void path.
    pub fn label(&self, monoid: &Monoid) -> Element {
        let mut acc = Value::unit(monoid.descriptor());
        for o in &self.outputs {
            acc.combine_assign(o.value());
        }
        monoid.wrap(acc)
    }
}

impl SubseqTransducer {
    /// A machine with `num_states` states, no transitions, no finals and `ι = e`.
    pub fn new(
        monoid: Monoid,
        alphabet: Alphabet,
        num_states: usize,
        start: StateId,
    ) -> Result<Self> {
        if start >= num_states {
            return Err(Error::InvalidTransducer(format!(
                "start state {start} out of range 0..{num_states}"
            )));
        }
        let k = alphabet.len();
        Ok(SubseqTransducer {
            init_out: monoid.unit(),
            monoid,
            alphabet,
            start,
            finals: vec![None; num_states],
            trans: vec![None; num_states * k],
        })
    }

    /// The one-state machine with empty domain.
    pub fn empty_function(monoid: Monoid, alphabet: Alphabet) -> Self {
        // one state, start 0: cannot fail
        SubseqTransducer::new(monoid, alphabet, 1, 0).expect("one-state machine")
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn initial_output(&self) -> &Element {
        &self.init_out
    }

    pub fn final_output(&self, q: StateId) -> Option<&Element> {
        self.finals.get(q).and_then(Option::as_ref)
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.final_output(q).is_some()
    }

    pub fn finals(&self) -> impl Iterator<Item = (StateId, &Element)> {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, f)| f.as_ref().map(|e| (q, e)))
    }

    pub fn add_state(&mut self) -> StateId {
        self.finals.push(None);
        self.trans
            .extend(std::iter::repeat_n(None, self.alphabet.len()));
        self.finals.len() - 1
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.num_states() {
            Ok(())
        } else {
            Err(Error::InvalidTransducer(format!(
                "state {q} out of range 0..{}",
                self.num_states()
            )))
        }
    }

    pub fn set_start(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.start = q;
        Ok(())
    }

    pub fn set_initial_output(&mut self, out: Element) -> Result<()> {
        self.monoid.check(out.monoid())?;
        self.init_out = out;
        Ok(())
    }

    pub fn set_final(&mut self, q: StateId, out: Element) -> Result<()> {
        self.check_state(q)?;
        self.monoid.check(out.monoid())?;
        self.finals[q] = Some(out);
        Ok(())
    }

    pub fn clear_final(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.finals[q] = None;
        Ok(())
    }

    /// Sets `δ(q, letter) = target` and `λ(q, letter) = out`, replacing any previous entry.
    pub fn set_transition(
        &mut self,
        q: StateId,
        letter: Letter,
        out: Element,
        target: StateId,
    ) -> Result<()> {
        self.check_state(q)?;
        self.check_state(target)?;
        self.monoid.check(out.monoid())?;
        let a = self
            .alphabet
            .index_of(letter)
            .ok_or(Error::UnknownLetter(letter as char))?;
        let k = self.alphabet.len();
        self.trans[q * k + a] = Some(Transition {
            output: out,
            target,
        });
        Ok(())
    }

    pub fn remove_transition(&mut self, q: StateId, letter: Letter) -> Result<()> {
        self.check_state(q)?;
        let a = self
            .alphabet
            .index_of(letter)
            .ok_or(Error::UnknownLetter(letter as char))?;
        let k = self.alphabet.len();
        self.trans[q * k + a] = None;
        Ok(())
    }

    /// Transition by letter index into the alphabet.
    pub fn transition_at(&self, q: StateId, letter_index: usize) -> Option<&Transition> {
        let k = self.alphabet.len();
        self.trans.get(q * k + letter_index).and_then(Option::as_ref)
    }

    pub fn transition(&self, q: StateId, letter: Letter) -> Result<Option<&Transition>> {
        let a = self
            .alphabet
            .index_of(letter)
            .ok_or(Error::UnknownLetter(letter as char))?;
        Ok(self.transition_at(q, a))
    }

    /// All transitions as `(source, letter, transition)` in state-then-alphabet order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, &Transition)> {
        let k = self.alphabet.len();
        let letters = self.alphabet.letters();
        self.trans.iter().enumerate().filter_map(move |(i, t)| {
            t.as_ref().map(|t| (i / k, letters[i % k], t))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().filter(|t| t.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.trans.iter().all(Option::is_some)
    }

    pub fn delta_star(&self, q: StateId, word: &[Letter]) -> Result<Option<StateId>> {
        self.check_state(q)?;
        let idx = self.alphabet.indices(word)?;
        Ok(self.run_indices(q, &idx).map(|(p, _)| p))
    }

    pub fn lambda_star(&self, q: StateId, word: &[Letter]) -> Result<Option<Element>> {
        self.check_state(q)?;
        let idx = self.alphabet.indices(word)?;
        Ok(self
            .run_indices(q, &idx)
            .map(|(_, v)| self.monoid.wrap(v)))
    }

    pub fn path(&self, q: StateId, word: &[Letter]) -> Result<Option<Path>> {
        self.check_state(q)?;
        let idx = self.alphabet.indices(word)?;
        let mut cur = q;
        let mut outputs = Vec::with_capacity(idx.len());
        for &a in &idx {
            match self.transition_at(cur, a) {
                Some(t) => {
                    outputs.push(t.output.clone());
                    cur = t.target;
                }
                None => return Ok(None),
            }
        }
        Ok(Some(Path {
            source: q,
            letters: Word::from(word),
            outputs,
            target: cur,
        }))
    }

    /// `O_T(w)`, or `None` when `w` is outside the domain.
    pub fn eval(&self, word: &[Letter]) -> Result<Option<Element>> {
        let idx = self.alphabet.indices(word)?;
        Ok(self.eval_indices(&idx).map(|v| self.monoid.wrap(v)))
    }

    pub(crate) fn run_indices(&self, q: StateId, word: &[usize]) -> Option<(StateId, Value)> {
        let mut cur = q;
        let mut acc = Value::unit(self.monoid.descriptor());
        for &a in word {
            let t = self.transition_at(cur, a)?;
            acc.combine_assign(t.output.value());
            cur = t.target;
        }
        Some((cur, acc))
    }

    pub(crate) fn eval_indices(&self, word: &[usize]) -> Option<Value> {
        let mut cur = self.start;
        let mut acc = self.init_out.value().clone();
        for &a in word {
            let t = self.transition_at(cur, a)?;
            acc.combine_assign(t.output.value());
            cur = t.target;
        }
        let fin = self.finals[cur].as_ref()?;
        acc.combine_assign(fin.value());
        Some(acc)
    }

    /// States reachable from the start state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.transition_at(q, a) {
                    if !seen[t.target] {
                        seen[t.target] = true;
                        queue.push_back(t.target);
                    }
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            preds[t.target].push(q);
        }
        let mut seen: Vec<bool> = (0..n).map(|q| self.is_final(q)).collect();
        let mut queue: VecDeque<StateId> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub fn is_empty_domain(&self) -> bool {
        !self.coaccessible()[self.start]
    }

    pub fn is_trim(&self) -> bool {
        let acc = self.accessible();
        let co = self.coaccessible();
        acc.iter().zip(&co).all(|(a, c)| *a && *c)
    }

    /// Keeps only states that are both accessible and co-accessible.
    ///
    /// A machine with empty domain becomes [`SubseqTransducer::empty_function`].
    pub fn trim(&self) -> SubseqTransducer {
        let acc = self.accessible();
        let co = self.coaccessible();
        if !co[self.start] {
            return SubseqTransducer::empty_function(self.monoid.clone(), self.alphabet.clone());
        }
        let keep: Vec<bool> = acc.iter().zip(&co).map(|(a, c)| *a && *c).collect();
        self.restrict(&keep)
    }

    /// Sub-machine on the kept states, ids renumbered in increasing order.
    fn restrict(&self, keep: &[bool]) -> SubseqTransducer {
        let mut map = vec![usize::MAX; keep.len()];
        let mut n = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                map[q] = n;
                n += 1;
            }
        }
        self.renumbered(&map, n)
    }

    /// Applies a state renaming; `usize::MAX` drops a state.
    fn renumbered(&self, map: &[usize], n: usize) -> SubseqTransducer {
        let k = self.alphabet.len();
        let mut out = SubseqTransducer {
            monoid: self.monoid.clone(),
            alphabet: self.alphabet.clone(),
            start: map[self.start],
            init_out: self.init_out.clone(),
            finals: vec![None; n],
            trans: vec![None; n * k],
        };
        for q in 0..self.num_states() {
            let nq = map[q];
            if nq == usize::MAX {
                continue;
            }
            out.finals[nq] = self.finals[q].clone();
            for a in 0..k {
                if let Some(t) = self.transition_at(q, a) {
                    let nt = map[t.target];
                    if nt != usize::MAX {
                        out.trans[nq * k + a] = Some(Transition {
                            output: t.output.clone(),
                            target: nt,
                        });
                    }
                }
            }
        }
        out
    }

    /// Totalizes `δ` with a non-final sink; missing entries get output `e`.
    pub fn complete(&self) -> SubseqTransducer {
        if self.is_complete() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.add_state();
        let k = self.alphabet.len();
        for slot in out.trans.iter_mut() {
            if slot.is_none() {
                *slot = Some(Transition {
                    output: self.monoid.unit(),
                    target: sink,
                });
            }
        }
        debug_assert_eq!(out.trans.len(), out.num_states() * k);
        out
    }

    /// Renumbers states breadth-first from the start state, letters in alphabet order.
    ///
    /// Unreachable states follow in their original order. Two machines are
    /// isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> SubseqTransducer {
        let n = self.num_states();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::from([self.start]);
        map[self.start] = 0;
        next += 1;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.transition_at(q, a) {
                    if map[t.target] == usize::MAX {
                        map[t.target] = next;
                        next += 1;
                        queue.push_back(t.target);
                    }
                }
            }
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        self.renumbered(&map, n)
    }

    pub fn is_isomorphic(&self, other: &SubseqTransducer) -> bool {
        self.canonical() == other.canonical()
    }
}
