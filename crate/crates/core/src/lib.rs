//! Turns informal ontology class diagrams into OWL axioms.
//!
//! The pipeline is: [`diagram::validate_diagram`] checks a drawing against
//! the allowed node-edge-node shapes, [`generator::generate`] proposes
//! candidate axioms for each relationship, [`session`] merges them with an
//! existing ontology and applies accept/reject decisions, and [`syntax`]
//! renders Manchester text for review and reads/writes functional-style
//! ontology documents.

pub mod axiom;
pub mod diagram;
pub mod generator;
pub mod session;
pub mod syntax;

#[cfg(feature = "testing")]
pub mod testing;

pub use axiom::{Axiom, ClassExpression};
pub use diagram::{Diagram, ValidationReport};
pub use generator::{candidate_count, generate, CandidateAxiom, SchemaCode, Status};
pub use session::{apply_selection, integrate, merge_existing, ReviewList, SessionState};
pub use syntax::{Ontology, PrefixEnvironment};
