//! Raw payloads and their structural operations.
//!
//! Nothing here checks descriptors; callers pair values of the same shape.
//! Mixing shapes is a bug and panics.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Descriptor;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Word(Word),
    Rational(BigRational),
    Integer(BigInt),
    Pair(Box<(Value, Value)>),
}

fn shape_mismatch(a: &Value, b: &Value) -> ! {
    panic!("value shapes differ: {a:?} vs {b:?}")
}

impl Value {
    pub fn unit(descriptor: &Descriptor) -> Value {
        match descriptor {
            Descriptor::Free(_) => Value::Word(Word::empty()),
            Descriptor::Tropical => Value::Rational(BigRational::zero()),
            Descriptor::IntegerGroup => Value::Integer(BigInt::zero()),
            Descriptor::Product(l, r) => Value::pair(Value::unit(l), Value::unit(r)),
        }
    }

    pub fn pair(left: Value, right: Value) -> Value {
        Value::Pair(Box::new((left, right)))
    }

    pub fn combine(&self, other: &Value) -> Value {
        let mut out = self.clone();
        out.combine_assign(other);
        out
    }

    pub fn combine_assign(&mut self, other: &Value) {
        match (self, other) {
            (Value::Word(a), Value::Word(b)) => a.extend_from(b.letters()),
            (Value::Rational(a), Value::Rational(b)) => *a += b,
            (Value::Integer(a), Value::Integer(b)) => *a += b,
            (Value::Pair(a), Value::Pair(b)) => {
                a.0.combine_assign(&b.0);
                a.1.combine_assign(&b.1);
            }
            (a, b) => shape_mismatch(a, b),
        }
    }

    /// `self ≤ other`: some `c` has `self ∘ c = other`.
    pub fn le(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Word(a), Value::Word(b)) => a.is_prefix_of(b),
            (Value::Rational(a), Value::Rational(b)) => a <= b,
            (Value::Integer(_), Value::Integer(_)) => true,
            (Value::Pair(a), Value::Pair(b)) => a.0.le(&b.0) && a.1.le(&b.1),
            (a, b) => shape_mismatch(a, b),
        }
    }

    /// The unique `c` with `divisor ∘ c = self`.
    pub fn left_quotient(&self, divisor: &Value) -> Option<Value> {
        match (self, divisor) {
            (Value::Word(b), Value::Word(a)) => b.strip_prefix(a).map(Value::Word),
            (Value::Rational(b), Value::Rational(a)) => (a <= b).then(|| Value::Rational(b - a)),
            (Value::Integer(b), Value::Integer(a)) => Some(Value::Integer(b - a)),
            (Value::Pair(b), Value::Pair(a)) => Some(Value::pair(
                b.0.left_quotient(&a.0)?,
                b.1.left_quotient(&a.1)?,
            )),
            (a, b) => shape_mismatch(a, b),
        }
    }

    /// In-place `self := divisor⁻¹ self`; leaves `self` untouched and returns
    /// `false` when `divisor` is not a left factor.
    pub fn left_divide_assign(&mut self, divisor: &Value) -> bool {
        if !divisor.le(self) {
            return false;
        }
        self.left_divide_unchecked(divisor);
        true
    }

    fn left_divide_unchecked(&mut self, divisor: &Value) {
        match (self, divisor) {
            (Value::Word(b), Value::Word(a)) => b.drain_prefix(a.len()),
            (Value::Rational(b), Value::Rational(a)) => *b -= a,
            (Value::Integer(b), Value::Integer(a)) => *b -= a,
            (Value::Pair(b), Value::Pair(a)) => {
                b.0.left_divide_unchecked(&a.0);
                b.1.left_divide_unchecked(&a.1);
            }
            (a, b) => shape_mismatch(a, b),
        }
    }

    /// Canonical supremum of `{self, other}`; `None` when no upper bound exists.
    pub fn join(&self, other: &Value) -> Option<Value> {
        match (self, other) {
            (Value::Word(a), Value::Word(b)) => {
                if a.is_prefix_of(b) {
                    Some(Value::Word(b.clone()))
                } else if b.is_prefix_of(a) {
                    Some(Value::Word(a.clone()))
                } else {
                    None
                }
            }
            (Value::Rational(a), Value::Rational(b)) => Some(Value::Rational(a.max(b).clone())),
            (Value::Integer(a), Value::Integer(b)) => Some(Value::Integer(a.max(b).clone())),
            (Value::Pair(a), Value::Pair(b)) => {
                Some(Value::pair(a.0.join(&b.0)?, a.1.join(&b.1)?))
            }
            (a, b) => shape_mismatch(a, b),
        }
    }

    /// Canonical infimum of `{self, other}`.
    pub fn meet(&self, other: &Value) -> Value {
        let mut out = self.clone();
        out.meet_assign(other);
        out
    }

    pub fn meet_assign(&mut self, other: &Value) {
        match (self, other) {
            (Value::Word(a), Value::Word(b)) => {
                let n = a
                    .letters()
                    .iter()
                    .zip(b.letters())
                    .take_while(|(x, y)| x == y)
                    .count();
                a.truncate(n);
            }
            (Value::Rational(a), Value::Rational(b)) => {
                if b < a {
                    *a = b.clone();
                }
            }
            (Value::Integer(a), Value::Integer(b)) => {
                if b < a {
                    *a = b.clone();
                }
            }
            (Value::Pair(a), Value::Pair(b)) => {
                a.0.meet_assign(&b.0);
                a.1.meet_assign(&b.1);
            }
            (a, b) => shape_mismatch(a, b),
        }
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            Value::Word(w) => w.is_empty(),
            Value::Rational(r) => r.is_zero(),
            Value::Integer(_) => true,
            Value::Pair(p) => p.0.is_invertible() && p.1.is_invertible(),
        }
    }

    /// Rough magnitude used to bound fixpoint iterations.
    pub fn size(&self) -> usize {
        match self {
            Value::Word(w) => w.len(),
            Value::Rational(_) => 1,
            Value::Integer(i) => usize::from(!i.is_zero()),
            Value::Pair(p) => p.0.size() + p.1.size(),
        }
    }

    /// Does the payload fit `descriptor`?
    pub fn conforms_to(&self, descriptor: &Descriptor) -> bool {
        match (self, descriptor) {
            (Value::Word(w), Descriptor::Free(sigma)) => sigma.check(w.letters()).is_ok(),
            (Value::Rational(r), Descriptor::Tropical) => !r.is_negative(),
            (Value::Integer(_), Descriptor::IntegerGroup) => true,
            (Value::Pair(p), Descriptor::Product(l, r)) => p.0.conforms_to(l) && p.1.conforms_to(r),
            _ => false,
        }
    }

    /// Total order used only for deterministic tie-breaking, never semantically.
    pub fn structural_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Word(a), Value::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::Integer(a), Value::Integer(b)) => a.cmp(b),
            (Value::Pair(a), Value::Pair(b)) => {
                a.0.structural_cmp(&b.0).then_with(|| a.1.structural_cmp(&b.1))
            }
            (a, b) => shape_mismatch(a, b),
        }
    }
}
