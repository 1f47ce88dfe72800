//! Subsequential transducers with outputs in mge monoids.
//!
//! The crate covers four concrete monoids (free, tropical over exact
//! rationals, the integer group and binary products), an axiom-checking
//! harness for them, deterministic one-letter transducers, onward
//! normalization and minimization, and reconstruction of the minimal
//! complete transducer of a function from a query oracle.

pub mod canonize;
pub mod cli;
pub mod error;
pub mod learn;
pub mod monoid;
pub mod props;
pub mod transducer;
pub mod word;

pub use error::{Error, Result};
pub use monoid::{Descriptor, Element, Monoid, Value};
pub use transducer::{Path, StateId, SubseqTransducer, Transition};
pub use word::{Alphabet, Letter, Word};
