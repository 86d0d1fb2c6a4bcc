//! Concrete syntaxes: Manchester for display, OWL 2 functional-style for
//! persistence, and the [`Ontology`] container they operate on.

pub mod functional;
pub mod manchester;
mod parser;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::axiom::{signature, Axiom, Datatype, Entity, EntityKind, XsdDatatype};

pub use functional::render_functional;
pub use manchester::{render_manchester, render_manchester_document};
pub use parser::{parse_axiom, parse_functional};

pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const DEFAULT_BASE_IRI: &str = "http://example.org/onto#";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("PARSE_ERROR at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("UNSUPPORTED_CONSTRUCT {construct}{}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Unsupported {
        construct: String,
        line: Option<usize>,
    },
    #[error("invalid base IRI `{0}`: must be absolute and end in `#` or `/`")]
    BadBaseIri(String),
}

/// Namespace bindings. Only the default namespace is configurable; `owl:`,
/// `rdfs:` and `xsd:` are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixEnvironment {
    base_iri: String,
}

impl PrefixEnvironment {
    pub fn new(base_iri: impl Into<String>) -> Result<Self, SyntaxError> {
        let base_iri = base_iri.into();
        if crate::diagram::is_absolute_iri(&base_iri)
            && (base_iri.ends_with('#') || base_iri.ends_with('/'))
        {
            Ok(PrefixEnvironment { base_iri })
        } else {
            Err(SyntaxError::BadBaseIri(base_iri))
        }
    }

    pub fn base_iri(&self) -> &str {
        &self.base_iri
    }
}

impl Default for PrefixEnvironment {
    fn default() -> Self {
        PrefixEnvironment {
            base_iri: DEFAULT_BASE_IRI.to_owned(),
        }
    }
}

/// `owl:Thing` as an entity.
pub fn thing() -> Entity {
    Entity::new(EntityKind::Class, "owl:Thing")
}

/// `rdfs:Literal` as an entity.
pub fn top_datatype() -> Entity {
    Entity::new(EntityKind::Datatype, "rdfs:Literal")
}

/// Full IRI of an entity. Names carrying a fixed prefix (`owl:`, `rdfs:`,
/// `xsd:`) and xsd datatype names resolve to the standard namespaces;
/// everything else is appended to the base IRI.
pub fn entity_to_iri(e: &Entity, env: &PrefixEnvironment) -> String {
    for (prefix, ns) in [("owl:", OWL_NS), ("rdfs:", RDFS_NS), ("xsd:", XSD_NS)] {
        if let Some(local) = e.name.strip_prefix(prefix) {
            return format!("{ns}{local}");
        }
    }
    if e.kind == EntityKind::Datatype {
        match Datatype::from_label(&e.name) {
            Some(Datatype::Xsd(x)) => return format!("{XSD_NS}{}", x.local_name()),
            Some(Datatype::Iri(iri)) => return iri,
            None => {}
        }
    }
    format!("{}{}", env.base_iri, e.name)
}

/// Maps a full datatype IRI onto the model, preferring the xsd variant.
pub(crate) fn datatype_from_iri(iri: &str) -> Datatype {
    iri.strip_prefix(XSD_NS)
        .and_then(|local| local.parse::<XsdDatatype>().ok())
        .map(Datatype::Xsd)
        .unwrap_or_else(|| Datatype::Iri(iri.to_owned()))
}

/// Ontology IRI with optional version IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OntologyId {
    pub iri: String,
    pub version: Option<String>,
}

/// A de-duplicated axiom set plus explicit entity declarations.
///
/// Axioms are kept in canonical order, so iteration order (and therefore
/// serialization) never depends on insertion order.
#[derive(Debug, Clone, Default)]
pub struct Ontology {
    pub prefixes: PrefixEnvironment,
    pub id: Option<OntologyId>,
    axioms: BTreeSet<Axiom>,
    declarations: BTreeSet<Entity>,
}

impl Ontology {
    pub fn new(prefixes: PrefixEnvironment) -> Self {
        Ontology {
            prefixes,
            ..Ontology::default()
        }
    }

    /// Returns false when a structurally equal axiom is already present.
    pub fn insert(&mut self, axiom: Axiom) -> bool {
        self.axioms.insert(axiom)
    }

    pub fn remove(&mut self, axiom: &Axiom) -> bool {
        self.axioms.remove(axiom)
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn declare(&mut self, entity: Entity) {
        self.declarations.insert(entity);
    }

    pub fn axioms(&self) -> impl ExactSizeIterator<Item = &Axiom> + '_ {
        self.axioms.iter()
    }

    pub fn axiom_set(&self) -> &BTreeSet<Axiom> {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Explicit declarations plus every non-datatype entity used by an axiom.
    pub fn entities(&self) -> BTreeSet<Entity> {
        let mut used = Vec::new();
        for axiom in &self.axioms {
            signature(axiom, &mut used);
        }
        used.retain(|e| e.kind != EntityKind::Datatype);
        let mut all = self.declarations.clone();
        all.extend(used);
        all
    }
}

impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.prefixes == other.prefixes
            && self.id == other.id
            && self.axioms == other.axioms
            && self.entities() == other.entities()
    }
}

impl Eq for Ontology {}

impl Extend<Axiom> for Ontology {
    fn extend<T: IntoIterator<Item = Axiom>>(&mut self, iter: T) {
        self.axioms.extend(iter);
    }
}
