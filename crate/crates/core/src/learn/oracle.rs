//! Function oracles: a reference machine or a finite table.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::rc::Rc;

use crate::error::Result;
use crate::monoid::{Element, Monoid, Value};
use crate::transducer::format::{content_lines, parse_error, parse_header};
use crate::transducer::SubseqTransducer;
use crate::word::{Alphabet, Letter, Word};

/// A finite partial function `Σ* → M`; words outside the table are undefined.
#[derive(Clone, Debug)]
pub struct TableOracle {
    monoid: Monoid,
    alphabet: Alphabet,
    entries: HashMap<Word, Value>,
}

impl TableOracle {
    pub fn new(monoid: Monoid, alphabet: Alphabet) -> Self {
        TableOracle {
            monoid,
            alphabet,
            entries: HashMap::new(),
        }
    }

    /// Adds or replaces `f(word) = value`.
    pub fn insert(&mut self, word: Word, value: Element) -> Result<()> {
        self.alphabet.check(word.letters())?;
        self.monoid.check(value.monoid())?;
        self.entries.insert(word, value.into_value());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in shortlex order.
    pub fn entries(&self) -> Vec<(Word, Element)> {
        let mut out: Vec<(Word, Element)> = self
            .entries
            .iter()
            .map(|(w, v)| (w.clone(), self.monoid.wrap(v.clone())))
            .collect();
        out.sort_by(|a, b| self.alphabet.shortlex_cmp(a.0.letters(), b.0.letters()));
        out
    }

    /// Reads the `monoid` / `alphabet` / `map <word> <element>` format.
    pub fn parse(text: &str) -> Result<TableOracle> {
        let mut lines = content_lines(text);
        let (monoid, alphabet) = parse_header(&mut lines)?;
        let mut table = TableOracle::new(monoid, alphabet);
        for (ln, tokens) in lines {
            let ["map", word, lit] = tokens.as_slice() else {
                return Err(parse_error(ln, "expected `map <word> <element>`"));
            };
            let word: Word = word.parse().map_err(|e: crate::Error| parse_error(ln, e.to_string()))?;
            table
                .alphabet
                .check(word.letters())
                .map_err(|e| parse_error(ln, e.to_string()))?;
            let value = table
                .monoid
                .parse_element(lit)
                .map_err(|e| parse_error(ln, e.to_string()))?;
            if table.entries.insert(word.clone(), value.into_value()).is_some() {
                return Err(parse_error(ln, format!("`{word}` is mapped twice")));
            }
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "monoid {}", self.monoid);
        let _ = writeln!(out, "alphabet {}", self.alphabet);
        for (w, e) in self.entries() {
            let _ = writeln!(out, "map {w} {e}");
        }
        out
    }
}

/// The function `f` being learned.
#[derive(Clone, Debug)]
pub enum FunctionOracle {
    Transducer(SubseqTransducer),
    Table(TableOracle),
}

impl From<SubseqTransducer> for FunctionOracle {
    fn from(t: SubseqTransducer) -> Self {
        FunctionOracle::Transducer(t)
    }
}

impl From<TableOracle> for FunctionOracle {
    fn from(t: TableOracle) -> Self {
        FunctionOracle::Table(t)
    }
}

impl FunctionOracle {
    pub fn monoid(&self) -> &Monoid {
        match self {
            FunctionOracle::Transducer(t) => t.monoid(),
            FunctionOracle::Table(t) => &t.monoid,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            FunctionOracle::Transducer(t) => t.alphabet(),
            FunctionOracle::Table(t) => &t.alphabet,
        }
    }

    pub fn query(&self, word: &[Letter]) -> Result<Option<Element>> {
        match self {
            FunctionOracle::Transducer(t) => t.eval(word),
            FunctionOracle::Table(t) => {
                t.alphabet.check(word)?;
                Ok(t.entries.get(word).map(|v| t.monoid.wrap(v.clone())))
            }
        }
    }

    /// `f(prefix · z)` for every `z` with `|z| ≤ depth`, in shortlex order of `z`.
    ///
    /// Suffix `z` sits at its index in the breadth-first numbering of the
    /// complete `|Σ|`-ary tree: the children of index `i` are `k·i + 1 ..= k·i + k`.
    pub(crate) fn residual(&self, prefix: &[Letter], depth: usize) -> Result<Vec<Option<Value>>> {
        let alphabet = self.alphabet();
        match self {
            FunctionOracle::Transducer(t) => {
                let indices = alphabet.indices(prefix)?;
                Ok(match t.run_indices(t.start(), &indices) {
                    Some((q, acc)) => state_residual(t, q, t.initial_output().value().combine(&acc), depth),
                    None => vec![None; alphabet.count_up_to(depth)],
                })
            }
            FunctionOracle::Table(table) => {
                alphabet.check(prefix)?;
                let mut word = Word::from_letters(prefix);
                let mut out = Vec::with_capacity(alphabet.count_up_to(depth));
                for z in alphabet.words_up_to(depth) {
                    word.extend_from(z.letters());
                    out.push(table.entries.get(&word).cloned());
                    word.truncate(prefix.len());
                }
                Ok(out)
            }
        }
    }
}

/// Outputs `acc · λ*(q, z) · Ψ(δ*(q, z))` for all `|z| ≤ depth`, indexed as in `residual`.
fn state_residual(t: &SubseqTransducer, q: usize, acc: Value, depth: usize) -> Vec<Option<Value>> {
    let k = t.alphabet().len();
    let total = t.alphabet().count_up_to(depth);
    let inner = if depth == 0 { 0 } else { t.alphabet().count_up_to(depth - 1) };
    let mut out = vec![None; total];
    let mut runs: Vec<Option<(usize, Value)>> = vec![None; total];
    runs[0] = Some((q, acc));
    for i in 0..total {
        let Some((q, acc)) = runs[i].take() else { continue };
        if i < inner {
            for a in 0..k {
                if let Some(tr) = t.transition_at(q, a) {
                    runs[k * i + 1 + a] = Some((tr.target, acc.combine(tr.output.value())));
                }
            }
        }
        if let Some(f) = t.final_output(q) {
            out[i] = Some(acc.combine(f.value()));
        }
    }
    out
}

/// A residual split as `meet · normalized`; see `learn::normalize`.
pub(crate) struct NormalizedResidual {
    pub meet: Option<Value>,
    pub values: Rc<Vec<Option<Value>>>,
}

/// Normalized residuals of many prefixes at one depth.
///
/// Machine-backed oracles reuse one normalized vector per state: the
/// residual of `w` is `ι λ*(w)` times the residual of `δ*(w)`, and since
/// `inf(pS) = p inf(S)` and left cancellation hold in every shipped monoid,
/// the normalized vectors coincide and only the meet carries the prefix.
pub(crate) struct ResidualCache<'a> {
    f: &'a FunctionOracle,
    depth: usize,
    per_state: HashMap<usize, (Option<Value>, Rc<Vec<Option<Value>>>)>,
    dead: Option<Rc<Vec<Option<Value>>>>,
}

impl<'a> ResidualCache<'a> {
    pub fn new(f: &'a FunctionOracle, depth: usize) -> Self {
        ResidualCache {
            f,
            depth,
            per_state: HashMap::new(),
            dead: None,
        }
    }

    pub fn get(&mut self, prefix: &[Letter]) -> Result<NormalizedResidual> {
        let FunctionOracle::Transducer(t) = self.f else {
            let mut values = self.f.residual(prefix, self.depth)?;
            let meet = super::normalize(&mut values);
            return Ok(NormalizedResidual {
                meet,
                values: Rc::new(values),
            });
        };
        let indices = t.alphabet().indices(prefix)?;
        let Some((q, acc)) = t.run_indices(t.start(), &indices) else {
            let total = t.alphabet().count_up_to(self.depth);
            let dead = self.dead.get_or_insert_with(|| Rc::new(vec![None; total]));
            return Ok(NormalizedResidual {
                meet: None,
                values: Rc::clone(dead),
            });
        };
        let depth = self.depth;
        let (meet, values) = self.per_state.entry(q).or_insert_with(|| {
            let mut values = state_residual(t, q, Value::unit(t.monoid().descriptor()), depth);
            let meet = super::normalize(&mut values);
            (meet, Rc::new(values))
        });
        let prefix_out = t.initial_output().value().combine(&acc);
        Ok(NormalizedResidual {
            meet: meet.as_ref().map(|m| prefix_out.combine(m)),
            values: Rc::clone(values),
        })
    }
}
