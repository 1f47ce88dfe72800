//! Text syntax for descriptors and element payloads.
//!
//! ```text
//! descriptor := "free:" letters | "trop" | "zgroup" | "prod(" descriptor "," descriptor ")"
//! free       := letters | "_"
//! trop       := p | p "/" q          (p ≥ 0, q ≥ 1)
//! zgroup     := ["+" | "-"] digits
//! product    := "(" literal "," literal ")"
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::value::Value;
use super::{Descriptor, MAX_PRODUCT_DEPTH};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Splits `(left,right)` at its top-level comma.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidDescriptor {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let d = if let Some(letters) = s.strip_prefix("free:") {
            Descriptor::Free(Alphabet::new(letters).map_err(|e| bad(&e.to_string()))?)
        } else if s == "trop" {
            Descriptor::Tropical
        } else if s == "zgroup" {
            Descriptor::IntegerGroup
        } else if let Some(rest) = s.strip_prefix("prod") {
            let (l, r) = split_pair(rest).ok_or_else(|| bad("expected prod(<d>,<d>)"))?;
            Descriptor::Product(Box::new(l.parse()?), Box::new(r.parse()?))
        } else {
            return Err(bad("expected free:<letters>, trop, zgroup or prod(<d>,<d>)"));
        };
        if d.depth() > MAX_PRODUCT_DEPTH {
            return Err(bad("product nesting exceeds 8"));
        }
        Ok(d)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Free(sigma) => write!(f, "free:{sigma}"),
            Descriptor::Tropical => f.write_str("trop"),
            Descriptor::IntegerGroup => f.write_str("zgroup"),
            Descriptor::Product(l, r) => write!(f, "prod({l},{r})"),
        }
    }
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub(crate) fn parse_value(descriptor: &Descriptor, s: &str) -> Result<Value> {
    let bad = |reason: &str| Error::InvalidLiteral {
        literal: s.to_string(),
        monoid: descriptor.to_string(),
        reason: reason.to_string(),
    };
    match descriptor {
        Descriptor::Free(sigma) => {
            let w: Word = s.parse().map_err(|e: Error| bad(&e.to_string()))?;
            sigma.check(w.letters()).map_err(|e| bad(&e.to_string()))?;
            Ok(Value::Word(w))
        }
        Descriptor::Tropical => {
            let (p, q) = match s.split_once('/') {
                Some((p, q)) => (p, q),
                None => (s, "1"),
            };
            let p = parse_unsigned(p).ok_or_else(|| bad("expected a non-negative p or p/q"))?;
            let q = parse_unsigned(q).ok_or_else(|| bad("expected a positive denominator"))?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Value::Rational(BigRational::new(p, q)))
        }
        Descriptor::IntegerGroup => {
            let (neg, digits) = match s.as_bytes().first() {
                Some(b'-') => (true, &s[1..]),
                Some(b'+') => (false, &s[1..]),
                _ => (false, s),
            };
            let n = parse_unsigned(digits).ok_or_else(|| bad("expected a signed integer"))?;
            Ok(Value::Integer(if neg { -n } else { n }))
        }
        Descriptor::Product(l, r) => {
            let (ls, rs) = split_pair(s).ok_or_else(|| bad("expected (<literal>,<literal>)"))?;
            Ok(Value::pair(parse_value(l, ls)?, parse_value(r, rs)?))
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Word(w) => write!(f, "{w}"),
            Value::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Integer(i) => write!(f, "{i}"),
            Value::Pair(p) => write!(f, "({},{})", p.0, p.1),
        }
    }
}
