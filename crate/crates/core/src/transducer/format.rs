//! Line-based text format.
//!
//! ```text
//! monoid <descriptor>
//! alphabet <letters>
//! start <id> <ι>
//! final <id> <Ψ(id)>
//! trans <src> <letter> <λ> <dst>
//! ```
//!
//! `#` starts a comment. Writing is canonical: states are renumbered
//! breadth-first from the start state, so equal machines print identically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use super::{StateId, SubseqTransducer};
use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid};
use crate::word::{Alphabet, Letter};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the `monoid` and `alphabet` header lines shared with oracle tables.
pub(crate) fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<(Monoid, Alphabet)> {
    let (ln, tokens) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let monoid = match tokens.as_slice() {
        ["monoid", d] => d.parse::<Monoid>().map_err(|e| parse_error(ln, e.to_string()))?,
        _ => return Err(parse_error(ln, "expected `monoid <descriptor>`")),
    };
    let (ln, tokens) = lines
        .next()
        .ok_or_else(|| parse_error(ln + 1, "missing `alphabet` line"))?;
    let alphabet = match tokens.as_slice() {
        ["alphabet", letters] => {
            Alphabet::new(letters).map_err(|e| parse_error(ln, e.to_string()))?
        }
        _ => return Err(parse_error(ln, "expected `alphabet <letters>`")),
    };
    Ok((monoid, alphabet))
}

pub(crate) fn parse_letter(ln: usize, alphabet: &Alphabet, tok: &str) -> Result<Letter> {
    match tok.as_bytes() {
        [l] if alphabet.contains(*l) => Ok(*l),
        _ => Err(parse_error(ln, format!("`{tok}` is not a letter of `{alphabet}`"))),
    }
}

fn parse_id(ln: usize, tok: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| parse_error(ln, format!("`{tok}` is not a state id")))
}

fn parse_element(ln: usize, monoid: &Monoid, tok: &str) -> Result<Element> {
    monoid
        .parse_element(tok)
        .map_err(|e| parse_error(ln, e.to_string()))
}

impl SubseqTransducer {
    pub fn parse(text: &str) -> Result<SubseqTransducer> {
        let mut lines = content_lines(text);
        let (monoid, alphabet) = parse_header(&mut lines)?;

        let (ln, tokens) = lines
            .next()
            .ok_or_else(|| parse_error(3, "missing `start` line"))?;
        let (start, init) = match tokens.as_slice() {
            ["start", id, lit] => (parse_id(ln, id)?, parse_element(ln, &monoid, lit)?),
            _ => return Err(parse_error(ln, "expected `start <id> <element>`")),
        };

        let mut finals: BTreeMap<u64, Element> = BTreeMap::new();
        let mut trans: BTreeMap<(u64, Letter), (Element, u64)> = BTreeMap::new();
        let mut ids = BTreeSet::from([start]);
        for (ln, tokens) in lines {
            match tokens.as_slice() {
                ["final", id, lit] => {
                    let id = parse_id(ln, id)?;
                    let out = parse_element(ln, &monoid, lit)?;
                    if finals.insert(id, out).is_some() {
                        return Err(parse_error(ln, format!("state {id} is already final")));
                    }
                    ids.insert(id);
                }
                ["trans", src, letter, lit, dst] => {
                    let src = parse_id(ln, src)?;
                    let letter = parse_letter(ln, &alphabet, letter)?;
                    let out = parse_element(ln, &monoid, lit)?;
                    let dst = parse_id(ln, dst)?;
                    if trans.insert((src, letter), (out, dst)).is_some() {
                        return Err(parse_error(
                            ln,
                            format!("second transition from {src} on `{}`", letter as char),
                        ));
                    }
                    ids.insert(src);
                    ids.insert(dst);
                }
                [directive, ..] => {
                    return Err(parse_error(ln, format!("unknown or malformed `{directive}` line")))
                }
                [] => unreachable!("blank lines are filtered"),
            }
        }

        let dense: BTreeMap<u64, StateId> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut t = SubseqTransducer::new(monoid, alphabet, dense.len(), dense[&start])?;
        t.set_initial_output(init)?;
        for (id, out) in finals {
            t.set_final(dense[&id], out)?;
        }
        for ((src, letter), (out, dst)) in trans {
            t.set_transition(dense[&src], letter, out, dense[&dst])?;
        }
        Ok(t)
    }

    /// Canonical text form; see the module docs.
    pub fn to_text(&self) -> String {
        let c = self.canonical();
        // drop states no line would mention
        let n = c.num_states();
        let mut mentioned = vec![false; n];
        mentioned[c.start] = true;
        for (q, _) in c.finals() {
            mentioned[q] = true;
        }
        for (q, _, t) in c.transitions() {
            mentioned[q] = true;
            mentioned[t.target] = true;
        }
        let c = if mentioned.iter().all(|m| *m) {
            c
        } else {
            c.restrict(&mentioned)
        };

        let mut out = String::new();
        // writing to a String cannot fail
        let _ = writeln!(out, "monoid {}", c.monoid);
        let _ = writeln!(out, "alphabet {}", c.alphabet);
        let _ = writeln!(out, "start {} {}", c.start, c.init_out);
        for (q, e) in c.finals() {
            let _ = writeln!(out, "final {q} {e}");
        }
        for (q, letter, t) in c.transitions() {
            let _ = writeln!(out, "trans {q} {} {} {}", letter as char, t.output, t.target);
        }
        out
    }
}

impl fmt::Display for SubseqTransducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
