//! Onward normal form, minimization and bounded equivalence.

mod push;

use std::collections::HashMap;
use std::fmt;

pub use push::MAX_ROUNDS;
use push::{push_values, PushProblem};

use crate::error::{Error, Result};
use crate::learn::WitnessTriple;
use crate::monoid::{Element, Value};
use crate::transducer::{StateId, SubseqTransducer};
use crate::word::{Letter, Word};

/// Per-state push values of a trimmed machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePush {
    pub values: Vec<Element>,
    /// Fixpoint rounds until stabilization (0 when no fixpoint was needed).
    pub rounds: usize,
}

/// Computes `p(q)` for every state of `machine`, which must be trim.
pub fn state_push(machine: &SubseqTransducer) -> Result<StatePush> {
    if !machine.is_trim() {
        return Err(Error::InvalidTransducer("state push needs a trimmed machine".into()));
    }
    let k = machine.alphabet().len();
    let problem = PushProblem {
        finals: (0..machine.num_states())
            .map(|q| machine.final_output(q).map(|e| e.value().clone()))
            .collect(),
        edges: (0..machine.num_states())
            .map(|q| {
                (0..k)
                    .filter_map(|a| machine.transition_at(q, a))
                    .map(|t| (t.output.value().clone(), t.target))
                    .collect()
            })
            .collect(),
    };
    let (values, rounds) = push_values(machine.monoid().descriptor(), &problem)?;
    let monoid = machine.monoid();
    Ok(StatePush {
        values: values.into_iter().map(|v| monoid.wrap(v)).collect(),
        rounds,
    })
}

/// Pushes outputs as early as possible.
///
/// The result is the trimmed machine with the same states and transitions,
/// rewritten as `λ'(q,a) = p(q)⁻¹ λ(q,a) p(δ(q,a))`, `Ψ'(q) = p(q)⁻¹ Ψ(q)`
/// and `ι' = ι p(start)`.
pub fn onward(machine: &SubseqTransducer) -> Result<SubseqTransducer> {
    let trimmed = machine.trim();
    if trimmed.is_empty_domain() {
        return Ok(trimmed);
    }
    let push = state_push(&trimmed)?;
    let p = &push.values;
    let mut out = trimmed.clone();
    out.set_initial_output(trimmed.initial_output().op(&p[trimmed.start()])?)?;
    for (q, f) in trimmed.finals() {
        out.set_final(q, f.quotient(&p[q])?)?;
    }
    for (q, letter, t) in trimmed.transitions() {
        let label = t.output.op(&p[t.target])?.quotient(&p[q])?;
        out.set_transition(q, letter, label, t.target)?;
    }
    Ok(out)
}

/// Minimal equivalent machine: trim, push, merge states with equal behavior.
///
/// Blocks are refined Moore-style on `(block, [(λ(q,a), block(δ(q,a)))]_a)`
/// starting from the partition by final output. Block ids follow the
/// smallest member state, and the result is in canonical state order.
pub fn minimize(machine: &SubseqTransducer) -> Result<SubseqTransducer> {
    let o = onward(machine)?;
    if o.is_empty_domain() {
        return Ok(o);
    }
    let n = o.num_states();
    let k = o.alphabet().len();

    let mut block: Vec<usize> = {
        let mut ids: HashMap<Option<&Value>, usize> = HashMap::new();
        (0..n)
            .map(|q| {
                let key = o.final_output(q).map(Element::value);
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect()
    };
    let mut count = block.iter().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<(usize, Vec<Option<(&Value, usize)>>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig: Vec<Option<(&Value, usize)>> = (0..k)
                    .map(|a| o.transition_at(q, a).map(|t| (t.output.value(), block[t.target])))
                    .collect();
                let fresh = ids.len();
                *ids.entry((block[q], sig)).or_insert(fresh)
            })
            .collect();
        let next_count = ids.len();
        block = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }

    let mut representative = vec![usize::MAX; count];
    for q in (0..n).rev() {
        representative[block[q]] = q;
    }
    let mut out = SubseqTransducer::new(
        o.monoid().clone(),
        o.alphabet().clone(),
        count,
        block[o.start()],
    )?;
    out.set_initial_output(o.initial_output().clone())?;
    for (b, &q) in representative.iter().enumerate() {
        if let Some(f) = o.final_output(q) {
            out.set_final(b, f.clone())?;
        }
        for (a, &letter) in o.alphabet().letters().iter().enumerate() {
            if let Some(t) = o.transition_at(q, a) {
                out.set_transition(b, letter, t.output.clone(), block[t.target])?;
            }
        }
    }
    Ok(out.canonical())
}

/// Why two machines differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Both machines accept `word` with different outputs.
    Output {
        word: Word,
        left: Element,
        right: Element,
    },
    /// Exactly one machine accepts `word`.
    Domain { word: Word },
    /// The minimal forms differ but no separating word exists up to the search depth.
    Labels { depth: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Output { word, left, right } => write!(f, "DIFF {word} {left} {right}"),
            Certificate::Domain { word } => write!(f, "DIFF-DOMAIN {word}"),
            Certificate::Labels { depth } => write!(f, "DIFF-LABELS {depth}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Distinct(Certificate),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Equivalent => f.write_str("EQUIVALENT"),
            Equivalence::Distinct(c) => c.fmt(f),
        }
    }
}

/// Decides equivalence by comparing minimal forms; on mismatch searches for
/// a shortlex-least separating word of length at most `depth`.
pub fn equivalent(a: &SubseqTransducer, b: &SubseqTransducer, depth: usize) -> Result<Equivalence> {
    a.monoid().check(b.monoid())?;
    if a.alphabet() != b.alphabet() {
        return Err(Error::InvalidParameter(format!(
            "alphabets differ: {} vs {}",
            a.alphabet(),
            b.alphabet()
        )));
    }
    let ma = minimize(a)?;
    let mb = minimize(b)?;
    if ma == mb {
        return Ok(Equivalence::Equivalent);
    }
    Ok(Equivalence::Distinct(
        separating_word(&ma, &mb, depth).unwrap_or(Certificate::Labels { depth }),
    ))
}

type Run = Option<(StateId, Value)>;

fn step(m: &SubseqTransducer, run: &Run, a: usize) -> Run {
    let (q, acc) = run.as_ref()?;
    let t = m.transition_at(*q, a)?;
    Some((t.target, acc.combine(t.output.value())))
}

fn finish(m: &SubseqTransducer, run: &Run) -> Option<Value> {
    let (q, acc) = run.as_ref()?;
    m.final_output(*q).map(|f| acc.combine(f.value()))
}

fn separating_word(a: &SubseqTransducer, b: &SubseqTransducer, depth: usize) -> Option<Certificate> {
    let letters = a.alphabet().letters();
    let start = |m: &SubseqTransducer| Some((m.start(), m.initial_output().value().clone()));
    let mut level: Vec<(Word, Run, Run)> = vec![(Word::empty(), start(a), start(b))];
    for len in 0..=depth {
        for (word, ra, rb) in &level {
            match (finish(a, ra), finish(b, rb)) {
                (Some(x), Some(y)) if x != y => {
                    return Some(Certificate::Output {
                        word: word.clone(),
                        left: a.monoid().wrap(x),
                        right: b.monoid().wrap(y),
                    })
                }
                (Some(_), None) | (None, Some(_)) => {
                    return Some(Certificate::Domain { word: word.clone() })
                }
                _ => {}
            }
        }
        if len == depth {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for (word, ra, rb) in &level {
            for (i, &l) in letters.iter().enumerate() {
                let na = step(a, ra, i);
                let nb = step(b, rb, i);
                if na.is_some() || nb.is_some() {
                    next.push((word.appended(l), na, nb));
                }
            }
        }
        level = next;
    }
    None
}

/// Witness for `α ≡_f β` read off a complete machine, per the state-sharing argument.
///
/// If both words lead to the same state `p`, returns `⟨ι λ*(α), ι λ*(β), s⟩`
/// with `s(γ) = λ*(p, γ) Ψ(δ*(p, γ))` sampled on all `γ` of length at most
/// `2|Q|`. Returns `None` when the words reach different states.
pub fn witness_from_transducer(
    machine: &SubseqTransducer,
    alpha: &[Letter],
    beta: &[Letter],
) -> Result<Option<WitnessTriple>> {
    witness_from_transducer_at_depth(machine, alpha, beta, 2 * machine.num_states())
}

pub fn witness_from_transducer_at_depth(
    machine: &SubseqTransducer,
    alpha: &[Letter],
    beta: &[Letter],
    depth: usize,
) -> Result<Option<WitnessTriple>> {
    if !machine.is_complete() {
        return Err(Error::InvalidParameter(
            "witness extraction needs a complete machine".into(),
        ));
    }
    let start = machine.start();
    let (Some(p), Some(q)) = (machine.delta_star(start, alpha)?, machine.delta_star(start, beta)?)
    else {
        unreachable!("complete machines are total");
    };
    if p != q {
        return Ok(None);
    }
    let iota = machine.initial_output();
    let u = iota.op(&machine.lambda_star(start, alpha)?.expect("total"))?;
    let v = iota.op(&machine.lambda_star(start, beta)?.expect("total"))?;

    let monoid = machine.monoid();
    let letters = machine.alphabet().letters();
    let mut sample = Vec::new();
    let mut level = vec![(Word::empty(), p, Value::unit(monoid.descriptor()))];
    for len in 0..=depth {
        for (gamma, r, acc) in &level {
            if let Some(f) = machine.final_output(*r) {
                sample.push((gamma.clone(), monoid.wrap(acc.combine(f.value()))));
            }
        }
        if len == depth {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for (gamma, r, acc) in &level {
            for (i, &l) in letters.iter().enumerate() {
                let t = machine.transition_at(*r, i).expect("total");
                next.push((gamma.appended(l), t.target, acc.combine(t.output.value())));
            }
        }
        level = next;
    }
    Ok(Some(WitnessTriple {
        u,
        v,
        depth,
        sample,
    }))
}
