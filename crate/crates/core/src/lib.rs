//! Neutrosophic ALC.
//!
//! Concepts are evaluated to a pair of independent degrees, a truth degree and
//! a falsity degree, each in `[0, 1]`. This crate holds the syntax, knowledge
//! bases with acyclic terminologies, a finite-model oracle, the constraint
//! propagation calculus, and the entailment, subsumption and best truth-value
//! bound procedures built on it.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod constraint;
pub mod degree;
pub mod kb;
pub mod oracle;
pub mod reasoner;
pub mod syntax;
pub mod tableau;

pub use constraint::{Bound, Direction, Form, NeutrosophicConstraint};
pub use degree::{deg, Degree, DegreeError, DegreePair};
pub use kb::{
    AxiomKind, FuzzyAssertion, FuzzyKnowledgeBase, KnowledgeBase, NeutrosophicAssertion, Relation, Sign,
    TerminologicalAxiom, Violation,
};
pub use syntax::{Assertion, Concept, Object};
