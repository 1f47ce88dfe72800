//! Per-state push values for the onward form.
//!
//! For free and tropical components `p(q)` is the infimum of everything `q`
//! can still output, computed as the greatest fixpoint of
//!
//! ```text
//! p(q) = Ψ(q) ⊓ ⨅_a λ(q, a) ∘ p(δ(q, a))
//! ```
//!
//! iterated Jacobi-style from "undefined" (top). Integer-group components
//! have a single `~`-class, so any value is an infimum; there `p(q)` is the
//! output of the shortlex-least accepted suffix, which makes the result
//! canonical without a fixpoint that could run off to -∞ on negative cycles.
//! Products are handled one component at a time.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::monoid::{Descriptor, Value};

/// Hard ceiling on fixpoint rounds.
pub const MAX_ROUNDS: usize = 10_000;

/// The push problem of a trimmed machine: final outputs and letter-ordered edges.
pub(crate) struct PushProblem {
    pub finals: Vec<Option<Value>>,
    pub edges: Vec<Vec<(Value, usize)>>,
}

impl PushProblem {
    fn project(&self, left: bool) -> PushProblem {
        let pick = |v: &Value| match v {
            Value::Pair(p) => {
                if left {
                    p.0.clone()
                } else {
                    p.1.clone()
                }
            }
            other => panic!("expected a pair, got {other:?}"),
        };
        PushProblem {
            finals: self.finals.iter().map(|f| f.as_ref().map(pick)).collect(),
            edges: self
                .edges
                .iter()
                .map(|es| es.iter().map(|(v, t)| (pick(v), *t)).collect())
                .collect(),
        }
    }

    fn output_size(&self) -> usize {
        self.finals.iter().flatten().map(Value::size).sum::<usize>()
            + self
                .edges
                .iter()
                .flatten()
                .map(|(v, _)| v.size())
                .sum::<usize>()
    }
}

/// Returns the push values and the number of fixpoint rounds used.
pub(crate) fn push_values(descriptor: &Descriptor, problem: &PushProblem) -> Result<(Vec<Value>, usize)> {
    match descriptor {
        Descriptor::Product(l, r) => {
            let (left, lr) = push_values(l, &problem.project(true))?;
            let (right, rr) = push_values(r, &problem.project(false))?;
            let values = left.into_iter().zip(right).map(|(a, b)| Value::pair(a, b)).collect();
            Ok((values, lr.max(rr)))
        }
        Descriptor::IntegerGroup => Ok((anchor_push(problem), 0)),
        Descriptor::Free(_) | Descriptor::Tropical => fixpoint_push(problem),
    }
}

/// Round cap: enough for definedness to propagate (`n` rounds) plus one
/// strict decrease of the total push size per round afterwards.
pub(crate) fn round_cap(problem: &PushProblem) -> usize {
    let n = problem.finals.len();
    (n + 1)
        .saturating_mul(2 + problem.output_size())
        .min(MAX_ROUNDS)
}

fn fixpoint_push(problem: &PushProblem) -> Result<(Vec<Value>, usize)> {
    let n = problem.finals.len();
    let cap = round_cap(problem);
    let mut current: Vec<Option<Value>> = vec![None; n];
    for round in 1..=cap {
        let next: Vec<Option<Value>> = (0..n)
            .map(|q| {
                let mut acc = problem.finals[q].clone();
                for (out, target) in &problem.edges[q] {
                    if let Some(pt) = &current[*target] {
                        let candidate = out.combine(pt);
                        match &mut acc {
                            Some(a) => a.meet_assign(&candidate),
                            None => acc = Some(candidate),
                        }
                    }
                }
                acc
            })
            .collect();
        if next == current {
            return match next.into_iter().collect::<Option<Vec<Value>>>() {
                Some(values) => Ok((values, round)),
                // only reachable if the machine was not trimmed
                None => Err(Error::InvalidTransducer("state with empty output language".into())),
            };
        }
        current = next;
    }
    Err(Error::NonConvergence(cap))
}

fn anchor_push(problem: &PushProblem) -> Vec<Value> {
    let n = problem.finals.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (q, es) in problem.edges.iter().enumerate() {
        for (_, t) in es {
            preds[*t].push(q);
        }
    }
    // distance to the nearest final state
    let mut dist = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| problem.finals[q].is_some()).collect();
    for &q in &queue {
        dist[q] = 0;
    }
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for &p in &preds[q] {
            if dist[p] == usize::MAX {
                dist[p] = dist[q] + 1;
                queue.push_back(p);
            }
        }
    }
    let mut values: Vec<Option<Value>> = vec![None; n];
    for q in order {
        let value = match &problem.finals[q] {
            Some(f) => f.clone(),
            None => {
                let (out, t) = problem.edges[q]
                    .iter()
                    .find(|(_, t)| dist[*t] + 1 == dist[q])
                    .expect("a successor one step closer to a final state");
                out.combine(values[*t].as_ref().expect("closer states are settled first"))
            }
        };
        values[q] = Some(value);
    }
    values
        .into_iter()
        .map(|v| v.expect("trimmed machine: every state is co-accessible"))
        .collect()
}
