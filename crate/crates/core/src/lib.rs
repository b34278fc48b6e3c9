//! Bisimulations for description logics with optional inverse roles,
//! nominals, qualified number restrictions, the universal role and local
//! reflexivity: syntax, semantics, partition refinement, minimisation and
//! separating concepts.

pub mod bisim;
pub mod checks;
pub mod features;
pub mod fixtures;
pub mod graph;
pub mod interp;
pub mod quotient;
pub mod random;
pub mod refine;
pub mod semantics;
pub mod syntax;

pub use features::{Feature, FeatureSet};
pub use interp::{
    BasicRoleId, BuildError, ElementSet, Interpretation, InterpretationBuilder, QSInterpretation,
    Relation, Signature,
};
pub use syntax::{Assertion, BasicRole, Concept, Gci, KnowledgeBase, Role, RoleAxiom};
