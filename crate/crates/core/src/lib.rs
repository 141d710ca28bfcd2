//! Graphs on split extensions `G = K ⋊ A` built from normal-form words, with
//! invariants and audits that check whether the graph depends only on `G`.
//!
//! The pipeline is: parse a [`presentation::SplitDescription`], realize it as
//! a Cayley table with [`presentation::realize`], build the graph with
//! [`gamma::build_gamma`] under an [`gamma::InterpretationPolicy`], and compare
//! descriptions with [`audit::audit_pair`].

pub mod audit;
pub mod error;
pub mod gamma;
pub mod group;
pub mod invariants;
pub mod presentation;

pub use audit::{audit_pair, policy_sweep, reproduce_counterexample, AuditReport, Verdict};
pub use error::{GroupError, PresentationError};
pub use gamma::{build_gamma, edge_decision, GammaGraph, InterpretationPolicy};
pub use group::{are_isomorphic, Automorphism, GroupTable, Isomorphism};
pub use invariants::{degree_sequence, DegreeSequence};
pub use presentation::{parse_split_description, realize, Realization, SplitDescription, Word};
