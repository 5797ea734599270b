//! Propositional schemata with cardinality atoms: parsing, grounding,
//! propositional semantics, a DPLL solver with native cardinality
//! constraints, and program completion. Also benchmark families, a
//! suite runner and random instance generators for tests.

pub mod completion;
pub mod families;
pub mod ground;
pub mod harness;
pub mod lang;
pub mod par;
pub mod propcore;
pub mod solver;
pub mod testgen;
