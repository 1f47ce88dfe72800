//! Random machines and brute-force reference semantics shared by the test targets.
#![allow(dead_code)]

use mgeseq::{Alphabet, Descriptor, Element, Monoid, SubseqTransducer, Value, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn monoid(desc: &str) -> Monoid {
    desc.parse().unwrap()
}

/// A small random label: short words, small rationals and integers.
pub fn random_label(d: &Descriptor, rng: &mut ChaCha8Rng) -> Value {
    match d {
        Descriptor::Free(sigma) => {
            let len = rng.gen_range(0..=2);
            let letters = sigma.letters();
            Value::Word(Word::from_letters(
                (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<_>>(),
            ))
        }
        Descriptor::Tropical => Value::Rational(BigRational::new(
            BigInt::from(rng.gen_range(0..=4)),
            BigInt::from(rng.gen_range(1..=2)),
        )),
        Descriptor::IntegerGroup => Value::Integer(BigInt::from(rng.gen_range(-3..=3))),
        Descriptor::Product(l, r) => Value::pair(random_label(l, rng), random_label(r, rng)),
    }
}

pub fn label(m: &Monoid, rng: &mut ChaCha8Rng) -> Element {
    m.element(random_label(m.descriptor(), rng)).unwrap()
}

pub struct Shape {
    pub states: usize,
    pub p_transition: f64,
    pub p_final: f64,
}

/// A random machine; `p_transition = 1` gives a complete one.
pub fn random_machine(m: &Monoid, alphabet: &Alphabet, shape: &Shape, rng: &mut ChaCha8Rng) -> SubseqTransducer {
    let n = shape.states;
    let mut t = SubseqTransducer::new(m.clone(), alphabet.clone(), n, 0).unwrap();
    t.set_initial_output(label(m, rng)).unwrap();
    for q in 0..n {
        if rng.gen_bool(shape.p_final) {
            t.set_final(q, label(m, rng)).unwrap();
        }
        for &a in alphabet.letters() {
            if rng.gen_bool(shape.p_transition) {
                let target = rng.gen_range(0..n);
                t.set_transition(q, a, label(m, rng), target).unwrap();
            }
        }
    }
    t
}

/// Explicit transition list, independent of the machine's indexed storage.
pub struct Listing {
    pub start: usize,
    pub init: Element,
    pub finals: Vec<(usize, Element)>,
    pub edges: Vec<(usize, u8, Element, usize)>,
}

impl Listing {
    pub fn of(t: &SubseqTransducer) -> Listing {
        Listing {
            start: t.start(),
            init: t.initial_output().clone(),
            finals: t.finals().map(|(q, e)| (q, e.clone())).collect(),
            edges: t
                .transitions()
                .map(|(q, a, tr)| (q, a, tr.output.clone(), tr.target))
                .collect(),
        }
    }

    /// Product of labels over every accepting path for `word`; at most one exists.
    pub fn eval(&self, word: &[u8]) -> Option<Element> {
        let mut frontier = vec![(self.start, self.init.clone())];
        for &a in word {
            let mut next = Vec::new();
            for (q, acc) in &frontier {
                for (src, letter, out, dst) in &self.edges {
                    if src == q && *letter == a {
                        next.push((*dst, acc.op(out).unwrap()));
                    }
                }
            }
            frontier = next;
        }
        let mut results = Vec::new();
        for (q, acc) in frontier {
            for (f, out) in &self.finals {
                if *f == q {
                    results.push(acc.op(out).unwrap());
                }
            }
        }
        assert!(results.len() <= 1, "deterministic machines have at most one accepting path");
        results.pop()
    }

    /// Outputs `λ*(q, γ) Ψ(δ*(q, γ))` for all accepted `γ` with `|γ| ≤ depth`.
    pub fn state_outputs(&self, m: &Monoid, alphabet: &Alphabet, q: usize, depth: usize) -> Vec<Element> {
        let mut out = Vec::new();
        let mut frontier = vec![(q, m.unit())];
        for len in 0..=depth {
            for (p, acc) in &frontier {
                for (f, o) in &self.finals {
                    if f == p {
                        out.push(acc.op(o).unwrap());
                    }
                }
            }
            if len == depth {
                break;
            }
            let mut next = Vec::new();
            for (p, acc) in &frontier {
                for &a in alphabet.letters() {
                    for (src, letter, o, dst) in &self.edges {
                        if src == p && *letter == a {
                            next.push((*dst, acc.op(o).unwrap()));
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

/// Copies `extra` random states and redirects some incoming edges to the copies.
///
/// On tropical machines the copies are also made non-onward by moving a
/// constant from their outgoing labels onto their incoming ones.
pub fn duplicate_states(t: &SubseqTransducer, extra: usize, rng: &mut ChaCha8Rng) -> SubseqTransducer {
    let mut d = t.clone();
    let m = t.monoid().clone();
    let alphabet = t.alphabet().clone();
    for _ in 0..extra {
        let original = rng.gen_range(0..d.num_states());
        let copy = d.add_state();
        if let Some(f) = d.final_output(original).cloned() {
            d.set_final(copy, f).unwrap();
        }
        for &a in alphabet.letters() {
            if let Some(tr) = d.transition(original, a).unwrap().cloned() {
                let target = if tr.target == original { copy } else { tr.target };
                d.set_transition(copy, a, tr.output, target).unwrap();
            }
        }
        let incoming: Vec<(usize, u8, Element)> = d
            .transitions()
            .filter(|(q, _, tr)| tr.target == original && *q != copy)
            .map(|(q, a, tr)| (q, a, tr.output.clone()))
            .collect();
        for (q, a, out) in incoming {
            if rng.gen_bool(0.5) {
                d.set_transition(q, a, out, copy).unwrap();
            }
        }
        if matches!(m.descriptor(), Descriptor::Tropical) {
            let mut lower: Option<Element> = d.final_output(copy).cloned();
            for &a in alphabet.letters() {
                if let Some(tr) = d.transition(copy, a).unwrap() {
                    lower = Some(match lower {
                        Some(l) => l.meet(&tr.output).unwrap(),
                        None => tr.output.clone(),
                    });
                }
            }
            let c = lower.unwrap_or_else(|| m.unit());
            if let Some(f) = d.final_output(copy).cloned() {
                d.set_final(copy, f.quotient(&c).unwrap()).unwrap();
            }
            for &a in alphabet.letters() {
                if let Some(tr) = d.transition(copy, a).unwrap().cloned() {
                    d.set_transition(copy, a, tr.output.quotient(&c).unwrap(), tr.target).unwrap();
                }
            }
            let into_copy: Vec<(usize, u8, Element)> = d
                .transitions()
                .filter(|(_, _, tr)| tr.target == copy)
                .map(|(q, a, tr)| (q, a, tr.output.clone()))
                .collect();
            for (q, a, out) in into_copy {
                d.set_transition(q, a, out.op(&c).unwrap(), copy).unwrap();
            }
        }
    }
    d
}
