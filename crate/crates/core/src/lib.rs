//! Equational identities associated with finite automata for fixed point
//! operations in cartesian categories.
//!
//! The crate builds the automaton identities `Γ(Q)` and `Γ(Q, q)` as terms,
//! computes transition monoids and the simple groups dividing them, decides
//! entailment between automaton identities over Conway categories by
//! comparing simple divisors, and evaluates any identity in a finite model of
//! pointed posets with least fixed points.

pub mod algebra;
pub mod automaton;
pub mod cpo_model;
pub mod entailment;
pub mod identities;
pub mod term;

pub use algebra::{Limits, SimpleGroupId, TransformationMonoid};
pub use automaton::{Automaton, InitializedAutomaton, Subject, Transformation};
pub use term::{Equation, Morphism, Symbol};
