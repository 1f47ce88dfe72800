//! Myhill-Nerode classes of a function oracle and the minimal machine they induce.
//!
//! All tests of `α ≡_f β` are bounded: suffixes are enumerated up to a depth,
//! and witnesses are meet-based (`u` is the meet of the sampled residual
//! outputs), which is sound for every shipped monoid since all of them have
//! binary infima.

mod oracle;
mod table;

pub use oracle::{FunctionOracle, TableOracle};
pub use table::{build_class_table, construct_minimal, ClassTable, WordClass};

use crate::error::Result;
use crate::monoid::{Element, Monoid, Value};
use crate::word::{Alphabet, Letter, Word};

/// `⟨u, v, s⟩` with `f(αz) = u s(z)` and `f(βz) = v s(z)` on a finite sample.
///
/// `sample` lists `s(z)` for every suffix `|z| ≤ depth` on which both sides
/// are defined; the remaining suffixes are undefined on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTriple {
    pub u: Element,
    pub v: Element,
    pub depth: usize,
    pub sample: Vec<(Word, Element)>,
}

impl WitnessTriple {
    /// First suffix on which the witness equations fail, if any.
    pub fn violation(&self, f: &FunctionOracle, alpha: &[Letter], beta: &[Letter]) -> Result<Option<Word>> {
        let sampled: std::collections::HashMap<&Word, &Element> =
            self.sample.iter().map(|(z, s)| (z, s)).collect();
        for z in f.alphabet().words_up_to(self.depth) {
            let mut az = Word::from_letters(alpha);
            az.extend_from(z.letters());
            let mut bz = Word::from_letters(beta);
            bz.extend_from(z.letters());
            let fa = f.query(az.letters())?;
            let fb = f.query(bz.letters())?;
            let ok = match sampled.get(&z) {
                Some(s) => fa == Some(self.u.op(s)?) && fb == Some(self.v.op(s)?),
                None => fa.is_none() && fb.is_none(),
            };
            if !ok {
                return Ok(Some(z));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivOutcome {
    Equivalent(WitnessTriple),
    /// `suffix` separates the two residuals.
    NotEquivalent { suffix: Word },
}

/// Residual normalized by its meet: `(meet, [f(wz) / meet]_z)`.
///
/// The meet is `None` when the sampled residual domain is empty.
pub(crate) fn normalize(residual: &mut [Option<Value>]) -> Option<Value> {
    let mut meet: Option<Value> = None;
    for v in residual.iter().flatten() {
        match &mut meet {
            Some(m) => m.meet_assign(v),
            None => meet = Some(v.clone()),
        }
    }
    if let Some(m) = &meet {
        for v in residual.iter_mut().flatten() {
            let divided = v.left_divide_assign(m);
            debug_assert!(divided, "the meet divides every member");
        }
    }
    meet
}

fn sample_map(monoid: &Monoid, alphabet: &Alphabet, normalized: Vec<Option<Value>>, depth: usize) -> Vec<(Word, Element)> {
    alphabet
        .words_up_to(depth)
        .into_iter()
        .zip(normalized)
        .filter_map(|(z, s)| s.map(|s| (z, monoid.wrap(s))))
        .collect()
}

/// Decides `α ≡_f β` up to `depth`.
pub fn equiv_words(f: &FunctionOracle, alpha: &[Letter], beta: &[Letter], depth: usize) -> Result<EquivOutcome> {
    let monoid = f.monoid();
    let mut ra = f.residual(alpha, depth)?;
    let mut rb = f.residual(beta, depth)?;
    let suffixes = || f.alphabet().words_up_to(depth);
    if let Some(i) = (0..ra.len()).find(|&i| ra[i].is_some() != rb[i].is_some()) {
        return Ok(EquivOutcome::NotEquivalent {
            suffix: suffixes().swap_remove(i),
        });
    }
    let u = normalize(&mut ra);
    let v = normalize(&mut rb);
    if let Some(i) = (0..ra.len()).find(|&i| ra[i] != rb[i]) {
        return Ok(EquivOutcome::NotEquivalent {
            suffix: suffixes().swap_remove(i),
        });
    }
    let unit = || Value::unit(monoid.descriptor());
    Ok(EquivOutcome::Equivalent(WitnessTriple {
        u: monoid.wrap(u.unwrap_or_else(unit)),
        v: monoid.wrap(v.unwrap_or_else(unit)),
        depth,
        sample: sample_map(monoid, f.alphabet(), ra, depth),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::SubseqTransducer;

    fn oracle(text: &str) -> FunctionOracle {
        SubseqTransducer::parse(text).unwrap().into()
    }

    fn witness(outcome: EquivOutcome) -> WitnessTriple {
        match outcome {
            EquivOutcome::Equivalent(w) => w,
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn counting_loop_witness() {
        let f = oracle("monoid trop\nalphabet a\nstart 0 0\nfinal 0 0\ntrans 0 a 1 0\n");
        let w = witness(equiv_words(&f, b"", b"a", 5).unwrap());
        assert_eq!((w.u.to_string(), w.v.to_string()), ("0".into(), "1".into()));
        for (z, s) in &w.sample {
            assert_eq!(s.to_string(), z.len().to_string());
        }
        assert_eq!(w.violation(&f, b"", b"a").unwrap(), None);
        assert!(w.violation(&f, b"", b"aa").unwrap().is_some());
    }

    #[test]
    fn identity_witness() {
        let f = oracle(
            "monoid free:ab\nalphabet ab\nstart 0 _\nfinal 0 _\ntrans 0 a a 0\ntrans 0 b b 0\n",
        );
        let w = witness(equiv_words(&f, b"a", b"b", 3).unwrap());
        assert_eq!((w.u.to_string(), w.v.to_string()), ("a".into(), "b".into()));
        assert!(w.sample.iter().all(|(z, s)| s.to_string() == z.to_string()));
    }

    #[test]
    fn domain_mismatch_separates() {
        // a⁻¹dom = a*, b⁻¹dom = b*
        let f = oracle(
            "monoid trop\nalphabet ab\nstart 0 0\nfinal 1 0\nfinal 2 0\n\
             trans 0 a 0 1\ntrans 1 a 0 1\ntrans 0 b 0 2\ntrans 2 b 0 2\n",
        );
        assert_eq!(
            equiv_words(&f, b"a", b"b", 3).unwrap(),
            EquivOutcome::NotEquivalent { suffix: "a".parse().unwrap() }
        );
    }

    #[test]
    fn output_mismatch_separates() {
        let f = oracle("monoid free:x\nalphabet a\nstart 0 _\nfinal 0 _\nfinal 1 x\ntrans 0 a _ 1\ntrans 1 a _ 0\n");
        assert_eq!(
            equiv_words(&f, b"", b"a", 2).unwrap(),
            EquivOutcome::NotEquivalent { suffix: Word::empty() }
        );
    }

    #[test]
    fn dead_words_are_equivalent_with_unit_witnesses() {
        let f = oracle("monoid trop\nalphabet a\nstart 0 0\nfinal 0 4\n");
        let w = witness(equiv_words(&f, b"a", b"aa", 4).unwrap());
        assert!(w.u.is_unit() && w.v.is_unit() && w.sample.is_empty());
    }
}
