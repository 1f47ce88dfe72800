//! Class tables and the minimal-machine construction.
//!
//! Words are addressed by their position in shortlex order, which for a
//! `k`-letter alphabet is the breadth-first numbering of the complete
//! `k`-ary tree: the parent of index `i > 0` is `(i - 1) / k`.

use std::collections::HashMap;
use std::rc::Rc;

use super::oracle::{NormalizedResidual, ResidualCache};
use super::{sample_map, FunctionOracle, WitnessTriple};
use crate::error::{Error, Result};
use crate::monoid::{join_fold, wlp_witness, Element, Monoid, Value};
use crate::transducer::SubseqTransducer;
use crate::word::{Alphabet, Letter, Word};

/// One `≡_f` class restricted to words of length at most the table bound.
#[derive(Clone, Debug)]
pub struct WordClass {
    /// Shortlex-least member.
    pub representative: Word,
    /// Members in shortlex order, representative first.
    pub members: Vec<Word>,
    /// `v(β)` for each member.
    pub values: Vec<Element>,
    /// Whether the sampled residual domain is non-empty.
    pub live: bool,
    /// `M_j`, the join of the class's correction set (the unit for dead classes).
    pub correction: Element,
    /// `s_i(z)` on every sampled suffix in the residual domain.
    pub sample: Vec<(Word, Element)>,
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    monoid: Monoid,
    alphabet: Alphabet,
    word_bound: usize,
    depth: usize,
    classes: Vec<WordClass>,
    class_of: Vec<usize>,
    value_of: Vec<Value>,
}

fn index_of(alphabet: &Alphabet, word: &[Letter]) -> Option<usize> {
    let k = alphabet.len();
    word.iter()
        .try_fold(0usize, |i, &l| Some(k * i + 1 + alphabet.index_of(l)?))
}

impl ClassTable {
    pub fn classes(&self) -> &[WordClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Longest classified word.
    pub fn word_bound(&self) -> usize {
        self.word_bound
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn class_of(&self, word: &[Letter]) -> Option<usize> {
        if word.len() > self.word_bound {
            return None;
        }
        index_of(&self.alphabet, word).map(|i| self.class_of[i])
    }

    /// `v(word)` for a classified word.
    pub fn value(&self, word: &[Letter]) -> Option<Element> {
        if word.len() > self.word_bound {
            return None;
        }
        index_of(&self.alphabet, word).map(|i| self.monoid.wrap(self.value_of[i].clone()))
    }

    /// `⟨v(α_i), v(β), s_i⟩` for `β` in class `i`.
    pub fn witness(&self, member: &[Letter]) -> Option<WitnessTriple> {
        let class = &self.classes[self.class_of(member)?];
        Some(WitnessTriple {
            u: class.values[0].clone(),
            v: self.value(member)?,
            depth: self.depth,
            sample: class.sample.clone(),
        })
    }
}

struct Draft {
    representative: usize,
    members: Vec<usize>,
    normalized: Rc<Vec<Option<Value>>>,
}

/// Classifies every word of length at most `2·n_bound − 1` and derives `v`, `s_i` and `M_j`.
pub fn build_class_table(f: &FunctionOracle, n_bound: usize, depth: usize) -> Result<ClassTable> {
    if n_bound == 0 {
        return Err(Error::InvalidParameter("the class bound must be at least 1".into()));
    }
    let monoid = f.monoid().clone();
    let alphabet = f.alphabet().clone();
    let unit = Value::unit(monoid.descriptor());
    let k = alphabet.len();
    let word_bound = 2 * n_bound - 1;
    let words = alphabet.words_up_to(word_bound);

    let mut cache = ResidualCache::new(f, depth);
    let mut drafts: Vec<Draft> = Vec::new();
    let mut index: HashMap<Rc<Vec<Option<Value>>>, usize> = HashMap::new();
    // shared vectors need no rehashing
    let mut by_pointer: HashMap<*const Vec<Option<Value>>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(words.len());
    let mut meets: Vec<Option<Value>> = Vec::with_capacity(words.len());
    for (w, word) in words.iter().enumerate() {
        let NormalizedResidual { meet, values } = cache.get(word.letters())?;
        let known = by_pointer
            .get(&Rc::as_ptr(&values))
            .or_else(|| index.get(&values))
            .copied();
        let class = match known {
            Some(c) => c,
            None => {
                if drafts.len() == n_bound {
                    let mut certificate: Vec<Word> =
                        drafts.iter().map(|d| words[d.representative].clone()).collect();
                    certificate.push(word.clone());
                    return Err(Error::IndexExceeded {
                        bound: n_bound,
                        certificate,
                    });
                }
                index.insert(Rc::clone(&values), drafts.len());
                drafts.push(Draft {
                    representative: w,
                    members: Vec::new(),
                    normalized: Rc::clone(&values),
                });
                drafts.len() - 1
            }
        };
        // only pointers kept alive elsewhere (by the cache or the index) are stable
        if Rc::strong_count(&values) > 1 {
            by_pointer.insert(Rc::as_ptr(&values), class);
        }
        drafts[class].members.push(w);
        class_of.push(class);
        meets.push(meet);
    }
    let n = drafts.len();
    if let Some(d) = drafts.iter().find(|d| words[d.representative].len() + 1 > word_bound) {
        return Err(Error::InvalidParameter(format!(
            "representative `{}` is too long for the table; the depth is too small",
            words[d.representative]
        )));
    }

    // v'(β): the meet of β's residual, or the unit on dead classes
    let mut value_of: Vec<Value> = meets.into_iter().map(|m| m.unwrap_or_else(|| unit.clone())).collect();

    // prefix pairs (α, αβ) inside one class
    let prefix_pairs = |w: usize| {
        let mut pairs = Vec::new();
        let mut p = w;
        while p > 0 {
            p = (p - 1) / k;
            if class_of[p] == class_of[w] {
                pairs.push(p);
            }
        }
        pairs
    };

    let mut classes = Vec::with_capacity(n);
    for (c, draft) in drafts.into_iter().enumerate() {
        let live = draft.normalized.iter().any(Option::is_some);
        // correction X: join of the WLP witnesses over prefix pairs
        let mut xs = vec![monoid.unit()];
        for &w in &draft.members {
            for p in prefix_pairs(w) {
                let vp = monoid.wrap(value_of[p].clone());
                let vw = monoid.wrap(value_of[w].clone());
                xs.push(wlp_witness(&vp, &vw)?);
            }
        }
        let x = join_fold(&xs)?.ok_or_else(|| Error::CorrectionUndefined {
            class: c,
            word: words[draft.representative].clone(),
        })?;
        let mut normalized = Rc::unwrap_or_clone(draft.normalized);
        for s in normalized.iter_mut().flatten() {
            if !s.left_divide_assign(x.value()) {
                return Err(Error::CorrectionUndefined {
                    class: c,
                    word: words[draft.representative].clone(),
                });
            }
        }
        for &w in &draft.members {
            value_of[w].combine_assign(x.value());
        }
        for &w in &draft.members {
            for p in prefix_pairs(w) {
                if !value_of[p].le(&value_of[w]) {
                    return Err(Error::MonotonicityViolation {
                        class: c,
                        prefix: words[p].clone(),
                        word: words[w].clone(),
                    });
                }
            }
        }
        classes.push(WordClass {
            representative: words[draft.representative].clone(),
            members: draft.members.iter().map(|&w| words[w].clone()).collect(),
            values: draft.members.iter().map(|&w| monoid.wrap(value_of[w].clone())).collect(),
            live,
            correction: monoid.unit(),
            sample: sample_map(&monoid, &alphabet, normalized, depth),
        });
    }

    // E_j over β ∈ B_{i,j}: words of class j having some representative α_i as a prefix
    let is_representative: Vec<bool> = (0..words.len())
        .map(|w| words[w] == classes[class_of[w]].representative)
        .collect();
    let mut corrections: Vec<Vec<Element>> = vec![Vec::new(); n];
    for w in 0..words.len() {
        let j = class_of[w];
        if !classes[j].live {
            continue;
        }
        let vw = &value_of[w];
        let mut p = w;
        loop {
            if is_representative[p] {
                let join = value_of[p].join(vw).ok_or_else(|| Error::CorrectionUndefined {
                    class: j,
                    word: words[w].clone(),
                })?;
                let e = join.left_quotient(vw).expect("the join is above both operands");
                corrections[j].push(monoid.wrap(e));
            }
            if p == 0 {
                break;
            }
            p = (p - 1) / k;
        }
    }
    for (j, set) in corrections.into_iter().enumerate() {
        if classes[j].live {
            classes[j].correction = join_fold(&set)?.ok_or_else(|| Error::CorrectionUndefined {
                class: j,
                word: classes[j].representative.clone(),
            })?;
        }
    }

    Ok(ClassTable {
        monoid,
        alphabet,
        word_bound,
        depth,
        classes,
        class_of,
        value_of,
    })
}

/// The complete machine whose states are the classes of `build_class_table`.
///
/// The result is checked against `f` on every word of length at most `depth`.
pub fn construct_minimal(f: &FunctionOracle, n_bound: usize, depth: usize) -> Result<SubseqTransducer> {
    let table = build_class_table(f, n_bound, depth)?;
    let machine = assemble(&table)?;
    let expected = f.residual(&[], depth)?;
    let actual = FunctionOracle::Transducer(machine.clone()).residual(&[], depth)?;
    if let Some(i) = (0..expected.len()).find(|&i| expected[i] != actual[i]) {
        let word = f.alphabet().words_up_to(depth).swap_remove(i);
        return Err(Error::OracleDisagreement(word));
    }
    Ok(machine.canonical())
}

fn assemble(table: &ClassTable) -> Result<SubseqTransducer> {
    let monoid = &table.monoid;
    let k = table.alphabet.len();
    let mut machine = SubseqTransducer::new(monoid.clone(), table.alphabet.clone(), table.len(), 0)?;
    // v(α_i) M_i
    let scaled: Vec<Element> = table
        .classes
        .iter()
        .map(|c| c.values[0].op(&c.correction))
        .collect::<Result<_>>()?;
    machine.set_initial_output(scaled[0].clone())?;
    for (i, class) in table.classes.iter().enumerate() {
        if let Some((z, s)) = class.sample.first() {
            if z.is_empty() {
                machine.set_final(i, s.quotient(&class.correction)?)?;
            }
        }
        let rep = index_of(&table.alphabet, class.representative.letters()).expect("classified word");
        for (a, &letter) in table.alphabet.letters().iter().enumerate() {
            let child = k * rep + 1 + a;
            let j = table.class_of[child];
            let target = &table.classes[j];
            let output = if target.live {
                let top = monoid.wrap(table.value_of[child].clone()).op(&target.correction)?;
                top.quotient(&scaled[i]).map_err(|_| Error::QuotientFailure {
                    class: i,
                    letter: letter as char,
                    target: j,
                })?
            } else {
                monoid.unit()
            };
            machine.set_transition(i, letter, output, j)?;
        }
    }
    Ok(machine)
}
