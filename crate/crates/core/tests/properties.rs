//! Property tests over random elements, machines and oracles.

mod common;

use mgeseq::canonize::{equivalent, minimize, onward};
use mgeseq::learn::{equiv_words, EquivOutcome, FunctionOracle};
use mgeseq::{Alphabet, Element, Monoid, SubseqTransducer, Value};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_label, random_machine, Listing, Shape};

const DESCRIPTORS: [&str; 5] = ["free:ab", "trop", "zgroup", "prod(free:ab,trop)", "prod(zgroup,prod(trop,free:a))"];

fn elements(desc: &'static str, n: usize) -> impl Strategy<Value = (Monoid, Vec<Element>)> {
    any::<u64>().prop_map(move |seed| {
        let m: Monoid = desc.parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = (0..n)
            .map(|_| m.element(random_label(m.descriptor(), &mut rng)).unwrap())
            .collect();
        (m, xs)
    })
}

fn any_elements(n: usize) -> impl Strategy<Value = (Monoid, Vec<Element>)> {
    prop::sample::select(DESCRIPTORS.to_vec()).prop_flat_map(move |d| elements(d, n))
}

fn machine(desc: &'static str, states: usize, p_transition: f64) -> impl Strategy<Value = SubseqTransducer> {
    any::<u64>().prop_map(move |seed| {
        let m: Monoid = desc.parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Shape {
            states,
            p_transition,
            p_final: 0.5,
        };
        random_machine(&m, &Alphabet::new("ab").unwrap(), &shape, &mut rng)
    })
}

fn any_machine() -> impl Strategy<Value = SubseqTransducer> {
    (prop::sample::select(DESCRIPTORS.to_vec()), 1usize..=5).prop_flat_map(|(d, n)| machine(d, n, 0.8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monoid_laws((m, x) in any_elements(3)) {
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        prop_assert_eq!(a.op(b).unwrap().op(c).unwrap(), a.op(&b.op(c).unwrap()).unwrap());
        prop_assert_eq!(m.unit().op(a).unwrap(), a.clone());
        prop_assert_eq!(a.op(&m.unit()).unwrap(), a.clone());
        // quotient law
        let ab = a.op(b).unwrap();
        prop_assert_eq!(ab.quotient(a).unwrap(), b.clone());
        // cancellation
        if c.op(a).unwrap() == c.op(b).unwrap() || a.op(c).unwrap() == b.op(c).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn join_and_meet_bounds((_m, x) in any_elements(3)) {
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let g = a.meet(b).unwrap();
        prop_assert!(g.le(a).unwrap() && g.le(b).unwrap());
        // a·c bounds a, and any b ≤ a·c must join with a below it
        let m = a.op(c).unwrap();
        if b.le(&m).unwrap() {
            let j = a.join(b).unwrap().expect("bounded pairs have a join");
            prop_assert!(a.le(&j).unwrap() && b.le(&j).unwrap() && j.le(&m).unwrap());
        }
        prop_assert!(a.join(&m).unwrap().is_some());
        // inf(vS) = v inf(S)
        let lhs = c.op(a).unwrap().meet(&c.op(b).unwrap()).unwrap();
        prop_assert!(lhs.sim(&c.op(&g).unwrap()).unwrap());
    }

    #[test]
    fn literals_round_trip((m, x) in any_elements(1)) {
        let text = x[0].to_string();
        prop_assert_eq!(m.parse_element(&text).unwrap(), x[0].clone());
    }

    #[test]
    fn eval_matches_path_product(t in any_machine()) {
        let listing = Listing::of(&t);
        for w in t.alphabet().words_up_to(6) {
            prop_assert_eq!(t.eval(w.letters()).unwrap(), listing.eval(w.letters()));
        }
    }

    #[test]
    fn text_format_round_trips(t in any_machine()) {
        let text = t.to_text();
        let back = SubseqTransducer::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text.clone());
        for w in t.alphabet().words_up_to(5) {
            prop_assert_eq!(back.eval(w.letters()).unwrap(), t.eval(w.letters()).unwrap());
        }
    }

    #[test]
    fn trim_and_complete_preserve_eval(t in any_machine()) {
        let trimmed = t.trim();
        let completed = t.complete();
        prop_assert!(trimmed.is_trim() || trimmed.is_empty_domain());
        prop_assert!(completed.is_complete());
        for w in t.alphabet().words_up_to(6) {
            let f = t.eval(w.letters()).unwrap();
            prop_assert_eq!(trimmed.eval(w.letters()).unwrap(), f.clone());
            prop_assert_eq!(completed.eval(w.letters()).unwrap(), f);
        }
    }

    #[test]
    fn onward_and_minimize_preserve_eval(t in any_machine()) {
        let o = onward(&t).unwrap();
        let m = minimize(&t).unwrap();
        prop_assert!(m.num_states() <= o.num_states().max(1));
        prop_assert!(minimize(&m).unwrap().is_isomorphic(&m));
        prop_assert_eq!(onward(&o).unwrap(), o.clone());
        for w in t.alphabet().words_up_to(7) {
            let f = t.eval(w.letters()).unwrap();
            prop_assert_eq!(o.eval(w.letters()).unwrap(), f.clone());
            prop_assert_eq!(m.eval(w.letters()).unwrap(), f);
        }
        prop_assert!(equivalent(&t, &m, 6).unwrap().is_equivalent());
    }

    #[test]
    fn equivalence_certificates_separate(a in any_machine(), seed in any::<u64>()) {
        // a second machine over the same monoid
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Shape { states: 3, p_transition: 0.8, p_final: 0.5 };
        let b = random_machine(a.monoid(), a.alphabet(), &shape, &mut rng);
        match equivalent(&a, &b, 8).unwrap() {
            mgeseq::canonize::Equivalence::Equivalent => {
                for w in a.alphabet().words_up_to(8) {
                    prop_assert_eq!(a.eval(w.letters()).unwrap(), b.eval(w.letters()).unwrap());
                }
            }
            mgeseq::canonize::Equivalence::Distinct(c) => match c {
                mgeseq::canonize::Certificate::Output { word, left, right } => {
                    prop_assert_eq!(a.eval(word.letters()).unwrap(), Some(left.clone()));
                    prop_assert_eq!(b.eval(word.letters()).unwrap(), Some(right.clone()));
                    prop_assert_ne!(left, right);
                }
                mgeseq::canonize::Certificate::Domain { word } => {
                    prop_assert_ne!(a.eval(word.letters()).unwrap().is_some(), b.eval(word.letters()).unwrap().is_some());
                }
                mgeseq::canonize::Certificate::Labels { .. } => {
                    for w in a.alphabet().words_up_to(8) {
                        prop_assert_eq!(a.eval(w.letters()).unwrap(), b.eval(w.letters()).unwrap());
                    }
                }
            },
        }
    }
}

fn equivalent_at(f: &FunctionOracle, a: &[u8], b: &[u8], depth: usize) -> bool {
    matches!(equiv_words(f, a, b, depth).unwrap(), EquivOutcome::Equivalent(_))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_equivalence_is_a_right_congruence(t in machine("trop", 3, 0.9), free in machine("free:ab", 3, 0.9)) {
        for t in [t, free] {
            let f = FunctionOracle::from(t.clone());
            let words = t.alphabet().words_up_to(2);
            let depth = 4;
            for a in &words {
                for b in &words {
                    let ab = equivalent_at(&f, a.letters(), b.letters(), depth);
                    prop_assert_eq!(ab, equivalent_at(&f, b.letters(), a.letters(), depth));
                    if !ab {
                        continue;
                    }
                    match equiv_words(&f, a.letters(), b.letters(), depth).unwrap() {
                        EquivOutcome::Equivalent(w) => {
                            prop_assert_eq!(w.violation(&f, a.letters(), b.letters()).unwrap(), None);
                        }
                        other => prop_assert!(false, "{:?}", other),
                    }
                    for &l in t.alphabet().letters() {
                        prop_assert!(equivalent_at(&f, a.appended(l).letters(), b.appended(l).letters(), depth - 1));
                    }
                    for c in &words {
                        if equivalent_at(&f, b.letters(), c.letters(), depth) {
                            prop_assert!(equivalent_at(&f, a.letters(), c.letters(), depth));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn residual_values_are_shape_consistent() {
    // every element produced by random machines conforms to its descriptor
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for desc in DESCRIPTORS {
        let m: Monoid = desc.parse().unwrap();
        for _ in 0..50 {
            let v: Value = random_label(m.descriptor(), &mut rng);
            assert!(v.conforms_to(m.descriptor()));
        }
    }
}
