//! Letters, words and ordered alphabets.
//!
//! Letters are ASCII bytes from `[a-z0-9]`. The empty word prints as `_`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Letter = u8;

fn is_letter(b: u8) -> bool {
    b.is_ascii_lowercase() || b.is_ascii_digit()
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn appended(&self, letter: Letter) -> Word {
        let mut out = self.clone();
        out.push(letter);
        out
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn common_prefix(&self, other: &Word) -> Word {
        let n = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count();
        Word(self.0[..n].to_vec())
    }

    /// Proper and improper prefixes, shortest first.
    pub fn prefixes(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        (0..=self.0.len()).map(move |i| &self.0[..i])
    }

    pub(crate) fn drain_prefix(&mut self, n: usize) {
        self.0.drain(..n);
    }

    pub(crate) fn truncate(&mut self, n: usize) {
        self.0.truncate(n);
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("_")
        } else {
            // letters are ASCII by construction
            f.write_str(std::str::from_utf8(&self.0).unwrap_or("?"))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "_" {
            return Ok(Word::empty());
        }
        match s.bytes().find(|b| !is_letter(*b)) {
            Some(b) => Err(Error::UnknownLetter(b as char)),
            None => Ok(Word(s.as_bytes().to_vec())),
        }
    }
}

/// A non-empty ordered set of letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<Letter>);

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self> {
        let bytes = letters.as_bytes();
        let invalid = bytes.is_empty()
            || bytes.iter().any(|b| !is_letter(*b))
            || (1..bytes.len()).any(|i| bytes[..i].contains(&bytes[i]));
        if invalid {
            return Err(Error::InvalidAlphabet(letters.to_string()));
        }
        Ok(Alphabet(bytes.to_vec()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, letter: Letter) -> Option<usize> {
        self.0.iter().position(|&l| l == letter)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }

    /// Maps a word to letter indices, rejecting foreign letters.
    pub fn indices(&self, word: &[Letter]) -> Result<Vec<usize>> {
        word.iter()
            .map(|&l| self.index_of(l).ok_or(Error::UnknownLetter(l as char)))
            .collect()
    }

    pub fn check(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|l| !self.contains(**l)) {
            Some(&l) => Err(Error::UnknownLetter(l as char)),
            None => Ok(()),
        }
    }

    /// Shortlex order: shorter words first, then lexicographic by alphabet position.
    pub fn shortlex_cmp(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = self.index_of(*x).cmp(&self.index_of(*y));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut start = 0;
        for _ in 0..max_len {
            let end = out.len();
            for i in start..end {
                for &l in &self.0 {
                    let w = out[i].appended(l);
                    out.push(w);
                }
            }
            start = end;
        }
        out
    }

    /// Number of words of length at most `max_len`.
    pub fn count_up_to(&self, max_len: usize) -> usize {
        let k = self.0.len();
        let mut total = 0usize;
        let mut level = 1usize;
        for _ in 0..=max_len {
            total = total.saturating_add(level);
            level = level.saturating_mul(k);
        }
        total
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("?"))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new("ab").is_ok());
        assert!(Alphabet::new("").is_err());
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("aB").is_err());
        assert!(Alphabet::new("a_").is_err());
    }

    #[test]
    fn shortlex_follows_alphabet_order() {
        let sigma = Alphabet::new("ba").unwrap();
        let words: Vec<String> = sigma.words_up_to(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["_", "b", "a", "bb", "ba", "ab", "aa"]);
        assert_eq!(sigma.count_up_to(2), 7);
        assert_eq!(sigma.shortlex_cmp(b"b", b"a"), Ordering::Less);
        assert_eq!(sigma.shortlex_cmp(b"aa", b"b"), Ordering::Greater);
    }

    #[test]
    fn empty_word_literal() {
        assert_eq!("_".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "_");
        assert!("a-b".parse::<Word>().is_err());
    }

    #[test]
    fn prefix_helpers() {
        let abc: Word = "abc".parse().unwrap();
        let ab: Word = "ab".parse().unwrap();
        let abd: Word = "abd".parse().unwrap();
        assert!(ab.is_prefix_of(&abc));
        assert_eq!(abc.strip_prefix(&ab).unwrap().to_string(), "c");
        assert_eq!(abc.common_prefix(&abd), ab);
        assert_eq!(abc.prefixes().count(), 4);
    }
}
