//! The four shipped monoid instances and their order-theoretic operations.
//!
//! Every instance here is an mge monoid satisfying LC, RC, RMGE, LSL, GCLF
//! and LP, so `quotient` is unique when defined, `meet` is total and `join`
//! is defined exactly when the pair has a common upper bound. Where a
//! `~`-class has several members (only in the integer group and products
//! containing it) the canonical witness is the numeric min/max.

mod literal;
mod value;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use value::Value;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

pub const MAX_PRODUCT_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    /// Words over the alphabet under concatenation.
    Free(Alphabet),
    /// Non-negative rationals under addition.
    Tropical,
    /// Integers under addition.
    IntegerGroup,
    Product(Box<Descriptor>, Box<Descriptor>),
}

impl Descriptor {
    pub fn depth(&self) -> usize {
        match self {
            Descriptor::Product(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub fn product(left: Descriptor, right: Descriptor) -> Result<Descriptor> {
        let d = Descriptor::Product(Box::new(left), Box::new(right));
        if d.depth() > MAX_PRODUCT_DEPTH {
            return Err(Error::InvalidDescriptor {
                literal: d.to_string(),
                reason: "product nesting exceeds 8".into(),
            });
        }
        Ok(d)
    }
}

/// A shared handle on a descriptor; cheap to clone and compare.
#[derive(Clone)]
pub struct Monoid(Arc<Descriptor>);

impl Monoid {
    pub fn new(descriptor: Descriptor) -> Self {
        Monoid(Arc::new(descriptor))
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.0
    }

    pub fn unit(&self) -> Element {
        Element {
            monoid: self.clone(),
            value: Value::unit(&self.0),
        }
    }

    /// Wraps a payload, checking that it belongs to this monoid.
    pub fn element(&self, value: Value) -> Result<Element> {
        if !value.conforms_to(&self.0) {
            return Err(Error::InvalidLiteral {
                literal: value.to_string(),
                monoid: self.to_string(),
                reason: "payload does not belong to this monoid".into(),
            });
        }
        Ok(Element {
            monoid: self.clone(),
            value,
        })
    }

    pub(crate) fn wrap(&self, value: Value) -> Element {
        debug_assert!(value.conforms_to(&self.0));
        Element {
            monoid: self.clone(),
            value,
        }
    }

    pub fn parse_element(&self, literal: &str) -> Result<Element> {
        Ok(self.wrap(literal::parse_value(&self.0, literal)?))
    }

    pub fn left(&self) -> Option<Monoid> {
        match &*self.0 {
            Descriptor::Product(l, _) => Some(Monoid::new((**l).clone())),
            _ => None,
        }
    }

    pub fn right(&self) -> Option<Monoid> {
        match &*self.0 {
            Descriptor::Product(_, r) => Some(Monoid::new((**r).clone())),
            _ => None,
        }
    }

    pub(crate) fn check(&self, other: &Monoid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Monoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Monoid {}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({})", self.0)
    }
}

impl FromStr for Monoid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Monoid::new(s.parse()?))
    }
}

impl From<Descriptor> for Monoid {
    fn from(d: Descriptor) -> Self {
        Monoid::new(d)
    }
}

/// A value of one monoid instance, tagged with that instance.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    monoid: Monoid,
    value: Value,
}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl Element {
    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn word(monoid: &Monoid, word: Word) -> Result<Element> {
        monoid.element(Value::Word(word))
    }

    pub fn op(&self, other: &Element) -> Result<Element> {
        self.monoid.check(&other.monoid)?;
        Ok(self.monoid.wrap(self.value.combine(&other.value)))
    }

    /// `self ≤_M other`.
    pub fn le(&self, other: &Element) -> Result<bool> {
        self.monoid.check(&other.monoid)?;
        Ok(self.value.le(&other.value))
    }

    /// `self ~_M other`: mutually related by `≤_M`.
    pub fn sim(&self, other: &Element) -> Result<bool> {
        Ok(self.le(other)? && other.le(self)?)
    }

    /// The unique `c` with `divisor ∘ c = self`.
    pub fn quotient(&self, divisor: &Element) -> Result<Element> {
        self.monoid.check(&divisor.monoid)?;
        match self.value.left_quotient(&divisor.value) {
            Some(v) => Ok(self.monoid.wrap(v)),
            None => Err(Error::NotAPrefix {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            }),
        }
    }

    /// Canonical element of `sup {self, other}`, or `None` if there is no upper bound.
    pub fn join(&self, other: &Element) -> Result<Option<Element>> {
        self.monoid.check(&other.monoid)?;
        Ok(self.value.join(&other.value).map(|v| self.monoid.wrap(v)))
    }

    /// Canonical element of `inf {self, other}`.
    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.monoid.check(&other.monoid)?;
        Ok(self.monoid.wrap(self.value.meet(&other.value)))
    }

    pub fn is_invertible(&self) -> bool {
        self.value.is_invertible()
    }

    pub fn is_unit(&self) -> bool {
        self.value == Value::unit(self.monoid.descriptor())
    }

    pub fn pair(left: &Element, right: &Element) -> Result<Element> {
        let monoid = Monoid::new(Descriptor::product(
            left.monoid.descriptor().clone(),
            right.monoid.descriptor().clone(),
        )?);
        Ok(monoid.wrap(Value::pair(left.value.clone(), right.value.clone())))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.monoid)
    }
}

fn same_monoid(items: &[Element]) -> Result<Option<&Monoid>> {
    let Some(first) = items.first() else {
        return Ok(None);
    };
    for e in &items[1..] {
        first.monoid.check(&e.monoid)?;
    }
    Ok(Some(&first.monoid))
}

/// Left fold of `join`; `None` as soon as a partial join is undefined.
pub fn join_fold(items: &[Element]) -> Result<Option<Element>> {
    same_monoid(items)?;
    let mut iter = items.iter();
    let Some(first) = iter.next() else {
        return Ok(None);
    };
    let mut acc = first.value.clone();
    for e in iter {
        match acc.join(&e.value) {
            Some(j) => acc = j,
            None => return Ok(None),
        }
    }
    Ok(Some(first.monoid.wrap(acc)))
}

/// Left fold of `meet`; `None` for an empty slice.
pub fn meet_fold(items: &[Element]) -> Result<Option<Element>> {
    same_monoid(items)?;
    let mut iter = items.iter();
    let Some(first) = iter.next() else {
        return Ok(None);
    };
    let mut acc = first.value.clone();
    for e in iter {
        acc.meet_assign(&e.value);
    }
    Ok(Some(first.monoid.wrap(acc)))
}

/// Most general equaliser of a tuple: `⟨J/a_1, …, J/a_n⟩` for `J = ⋁ a_i`.
pub fn mge_tuple(items: &[Element]) -> Result<Option<Vec<Element>>> {
    if items.is_empty() {
        return Err(Error::InvalidParameter("mge of an empty tuple".into()));
    }
    let Some(top) = join_fold(items)? else {
        return Ok(None);
    };
    items
        .iter()
        .map(|a| top.quotient(a))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// A witness `x` for the weak limit prefix property of `(u, v)`.
///
/// All shipped instances satisfy LP, so an equalising sequence for `(u, v)`
/// forces `u ≤ v`, and the unit is below every `a_n`. The unit therefore
/// always works.
pub fn wlp_witness(u: &Element, v: &Element) -> Result<Element> {
    u.monoid.check(&v.monoid)?;
    Ok(u.monoid.unit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: &str) -> Monoid {
        d.parse().unwrap()
    }

    fn el(monoid: &Monoid, lit: &str) -> Element {
        monoid.parse_element(lit).unwrap()
    }

    #[test]
    fn op_examples() {
        let free = m("free:ab");
        assert_eq!(el(&free, "ab").op(&el(&free, "ba")).unwrap(), el(&free, "abba"));
        let trop = m("trop");
        assert_eq!(el(&trop, "3/2").op(&el(&trop, "1/2")).unwrap(), el(&trop, "2"));
        for (mo, lit) in [(&free, "ab"), (&trop, "5/3")] {
            let a = el(mo, lit);
            assert_eq!(mo.unit().op(&a).unwrap(), a);
            assert_eq!(a.op(&mo.unit()).unwrap(), a);
        }
    }

    #[test]
    fn op_rejects_mixed_descriptors() {
        let a = el(&m("free:ab"), "a");
        let b = el(&m("free:abc"), "a");
        assert!(matches!(a.op(&b), Err(Error::DescriptorMismatch { .. })));
        let t = el(&m("trop"), "1");
        assert!(a.le(&t).is_err());
        assert!(a.join(&t).is_err());
    }

    #[test]
    fn unit_examples() {
        assert_eq!(m("free:ab").unit().to_string(), "_");
        assert_eq!(m("trop").unit().to_string(), "0");
        assert_eq!(m("prod(free:a,trop)").unit().to_string(), "(_,0)");
    }

    #[test]
    fn le_examples() {
        let free = m("free:abc");
        assert!(el(&free, "ab").le(&el(&free, "abc")).unwrap());
        let trop = m("trop");
        assert!(!el(&trop, "2").le(&el(&trop, "3/2")).unwrap());
        let z = m("zgroup");
        assert!(el(&z, "5").le(&el(&z, "-3")).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let free = m("free:abc");
        assert_eq!(el(&free, "abc").quotient(&el(&free, "ab")).unwrap(), el(&free, "c"));
        assert!(matches!(
            el(&free, "abc").quotient(&el(&free, "b")),
            Err(Error::NotAPrefix { .. })
        ));
        let trop = m("trop");
        assert_eq!(el(&trop, "7/2").quotient(&el(&trop, "1")).unwrap(), el(&trop, "5/2"));
        let p = m("prod(free:ab,trop)");
        assert_eq!(el(&p, "(ab,3)").quotient(&el(&p, "(a,1)")).unwrap(), el(&p, "(b,2)"));
    }

    #[test]
    fn join_meet_examples() {
        let free = m("free:abcd");
        assert_eq!(el(&free, "ab").join(&el(&free, "abc")).unwrap(), Some(el(&free, "abc")));
        assert_eq!(el(&free, "ab").join(&el(&free, "ba")).unwrap(), None);
        assert_eq!(el(&free, "abc").meet(&el(&free, "abd")).unwrap(), el(&free, "ab"));
        let trop = m("trop");
        assert_eq!(el(&trop, "3/2").join(&el(&trop, "2")).unwrap(), Some(el(&trop, "2")));
        assert_eq!(el(&trop, "3/2").meet(&el(&trop, "2")).unwrap(), el(&trop, "3/2"));
        let p = m("prod(free:ab,trop)");
        assert_eq!(el(&p, "(a,1)").join(&el(&p, "(b,1)")).unwrap(), None);
        let a = el(&p, "(ab,2)");
        assert_eq!(a.meet(&a).unwrap(), a);
    }

    #[test]
    fn invertibility() {
        let free = m("free:ab");
        assert!(el(&free, "_").is_invertible());
        assert!(!el(&free, "a").is_invertible());
        assert!(el(&m("zgroup"), "-7").is_invertible());
        assert!(!el(&m("trop"), "1/3").is_invertible());
        assert!(!el(&m("prod(zgroup,free:a)"), "(3,a)").is_invertible());
    }

    #[test]
    fn mge_examples() {
        let free = m("free:abc");
        let got = mge_tuple(&[el(&free, "ab"), el(&free, "abc")]).unwrap().unwrap();
        assert_eq!(got, vec![el(&free, "c"), el(&free, "_")]);
        let trop = m("trop");
        let got = mge_tuple(&[el(&trop, "1"), el(&trop, "3")]).unwrap().unwrap();
        assert_eq!(got, vec![el(&trop, "2"), el(&trop, "0")]);
        let a = el(&free, "cab");
        assert_eq!(
            mge_tuple(&[a.clone(), a]).unwrap().unwrap(),
            vec![free.unit(), free.unit()]
        );
        assert_eq!(mge_tuple(&[el(&free, "a"), el(&free, "b")]).unwrap(), None);
    }

    #[test]
    fn wlp_witness_is_unit() {
        let free = m("free:ab");
        assert_eq!(wlp_witness(&el(&free, "a"), &el(&free, "ab")).unwrap(), free.unit());
        let trop = m("trop");
        assert_eq!(wlp_witness(&el(&trop, "1"), &el(&trop, "1")).unwrap(), trop.unit());
        let p = m("prod(free:ab,trop)");
        assert_eq!(
            wlp_witness(&el(&p, "(a,1)"), &el(&p, "(ab,2)")).unwrap().to_string(),
            "(_,0)"
        );
    }

    #[test]
    fn element_rejects_foreign_payload() {
        let free = m("free:ab");
        assert!(free.element(Value::Word("c".parse().unwrap())).is_err());
        assert!(m("trop").parse_element("-1").is_err());
    }
}
