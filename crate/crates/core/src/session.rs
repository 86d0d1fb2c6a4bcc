//! Review workflow: merge candidates with an ontology, record accept
//! decisions, and integrate the accepted axioms.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::{Axiom, Entity, EntityKind};
use crate::diagram::{entities_of, Diagram};
use crate::generator::{CandidateAxiom, Provenance, SchemaCode, Status};
use crate::syntax::{functional, parse_axiom, render_manchester, Ontology, PrefixEnvironment, SyntaxError};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("UNKNOWN_CANDIDATE_ID: {}", .0.join(", "))]
    UnknownCandidateIds(Vec<String>),
    #[error("DUPLICATE_CANDIDATE_ID: {0}")]
    DuplicateCandidateId(String),
    #[error("malformed review file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("review entry `{id}`: {source}")]
    Axiom {
        id: String,
        #[source]
        source: SyntaxError,
    },
    #[error("review entry `{id}`: {message}")]
    Entry { id: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewEntry {
    pub candidate: CandidateAxiom,
    pub manchester: String,
    pub accept: bool,
}

impl ReviewEntry {
    pub fn id(&self) -> &str {
        &self.candidate.id
    }

    pub fn axiom(&self) -> &Axiom {
        &self.candidate.axiom
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReviewList {
    pub entries: Vec<ReviewEntry>,
}

/// Manchester text for display. Axioms outside the Manchester fragment
/// (possible only for imported ontologies) fall back to functional syntax.
pub fn display_string(axiom: &Axiom, env: &PrefixEnvironment) -> String {
    render_manchester(axiom, env).unwrap_or_else(|_| functional::render_axiom(axiom))
}

/// Marks candidates already in the ontology as existing (pre-accepted) and
/// appends ontology axioms no candidate matched, in canonical order.
pub fn merge_existing(candidates: Vec<CandidateAxiom>, o: &Ontology) -> ReviewList {
    let env = &o.prefixes;
    let mut matched = HashSet::new();
    let mut entries: Vec<ReviewEntry> = candidates
        .into_iter()
        .map(|mut candidate| {
            let existing = o.contains(&candidate.axiom);
            if existing {
                matched.insert(candidate.axiom.clone());
                candidate.status = Status::Existing;
            }
            ReviewEntry {
                manchester: display_string(&candidate.axiom, env),
                candidate,
                accept: existing,
            }
        })
        .collect();

    let leftovers = o.axioms().filter(|a| !matched.contains(*a));
    for (index, axiom) in leftovers.enumerate() {
        entries.push(ReviewEntry {
            manchester: display_string(axiom, env),
            candidate: CandidateAxiom {
                id: format!("ont#{index}"),
                axiom: axiom.clone(),
                schema: None,
                provenance: Provenance::Ontology(index),
                status: Status::Existing,
            },
            accept: true,
        });
    }
    ReviewList { entries }
}

/// Adds accepted entries and removes existing axioms whose entry was
/// unchecked. Unchecked new entries have no effect.
pub fn integrate(review: &ReviewList, o: &Ontology) -> Ontology {
    let mut result = o.clone();
    for entry in &review.entries {
        if !entry.accept && entry.candidate.status == Status::Existing {
            result.remove(entry.axiom());
        }
    }
    result.extend(review.entries.iter().filter(|e| e.accept).map(|e| e.axiom().clone()));
    result
}

/// Overwrites accept flags. Every id must name an entry; on failure all
/// offending ids are reported and the review is left untouched.
pub fn apply_selection(
    review: &ReviewList,
    decisions: &BTreeMap<String, bool>,
) -> Result<ReviewList, SessionError> {
    let known: HashSet<&str> = review.entries.iter().map(|e| e.id()).collect();
    let unknown: Vec<String> = decisions
        .keys()
        .filter(|id| !known.contains(id.as_str()))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(SessionError::UnknownCandidateIds(unknown));
    }
    let mut out = review.clone();
    for entry in &mut out.entries {
        if let Some(&accept) = decisions.get(entry.id()) {
            entry.accept = accept;
        }
    }
    Ok(out)
}

/// Declares every named entity of a diagram (datatypes excepted) in `o`.
pub fn declare_diagram_entities(o: &mut Ontology, d: &Diagram) {
    let inv = entities_of(d);
    let groups = [
        (EntityKind::Class, &inv.classes),
        (EntityKind::ObjectProperty, &inv.object_properties),
        (EntityKind::DataProperty, &inv.data_properties),
        (EntityKind::NamedIndividual, &inv.individuals),
    ];
    for (kind, names) in groups {
        for name in names {
            o.declare(Entity::new(kind, name.as_str()));
        }
    }
}

/// Review session: a diagram, the ontology being edited, and the most
/// recently generated review list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SessionState {
    pub diagram: Diagram,
    pub ontology: Ontology,
    pub last_review: Option<ReviewList>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    id: String,
    axiom: String,
    manchester: String,
    schema: Option<SchemaCode>,
    status: Status,
    accept: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReviewJson {
    entries: Vec<EntryJson>,
}

/// Reconstructs provenance from a candidate id.
fn provenance_from_id(id: &str, schema: Option<SchemaCode>) -> Result<Provenance, String> {
    if let Some(index) = id.strip_prefix("ont#") {
        return index
            .parse()
            .map(Provenance::Ontology)
            .map_err(|_| format!("bad ontology entry id `{id}`"));
    }
    if let Some(pair) = id.strip_prefix("disj#") {
        return match pair.split_once('#') {
            Some((a, b)) if a < b => Ok(Provenance::ClassPair(a.into(), b.into())),
            _ => Err(format!("bad disjointness id `{id}`")),
        };
    }
    match (id.rsplit_once('#'), schema) {
        (Some((edge, code)), Some(schema)) if code == schema.as_str() && !edge.is_empty() => {
            Ok(Provenance::Edge(edge.into()))
        }
        _ => Err(format!("id `{id}` does not match its schema")),
    }
}

impl ReviewList {
    pub fn get(&self, id: &str) -> Option<&ReviewEntry> {
        self.entries.iter().find(|e| e.id() == id)
    }

    pub fn existing_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.candidate.status == Status::Existing)
            .count()
    }

    /// Accept flags keyed by id.
    pub fn decisions(&self) -> BTreeMap<String, bool> {
        self.entries
            .iter()
            .map(|e| (e.id().to_owned(), e.accept))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = ReviewJson {
            entries: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    id: e.candidate.id.clone(),
                    axiom: functional::render_axiom(&e.candidate.axiom),
                    manchester: e.manchester.clone(),
                    schema: e.candidate.schema,
                    status: e.candidate.status,
                    accept: e.accept,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("review serialization is infallible");
        text.push('\n');
        text
    }

    /// Loads a review file. The functional-syntax `axiom` string is
    /// authoritative; `manchester` is regenerated.
    pub fn from_json(text: &str, env: &PrefixEnvironment) -> Result<Self, SessionError> {
        let doc: ReviewJson = serde_json::from_str(text)?;
        let mut seen = HashMap::new();
        let mut entries = Vec::with_capacity(doc.entries.len());
        for e in doc.entries {
            if seen.insert(e.id.clone(), ()).is_some() {
                return Err(SessionError::DuplicateCandidateId(e.id));
            }
            let axiom = parse_axiom(&e.axiom, env).map_err(|source| SessionError::Axiom {
                id: e.id.clone(),
                source,
            })?;
            let provenance = provenance_from_id(&e.id, e.schema).map_err(|message| SessionError::Entry {
                id: e.id.clone(),
                message,
            })?;
            entries.push(ReviewEntry {
                manchester: display_string(&axiom, env),
                candidate: CandidateAxiom {
                    id: e.id,
                    axiom,
                    schema: e.schema,
                    provenance,
                    status: e.status,
                },
                accept: e.accept,
            });
        }
        Ok(ReviewList { entries })
    }
}

/// Axioms in `after` but not `before`, and vice versa.
pub fn axiom_delta(before: &Ontology, after: &Ontology) -> (usize, usize) {
    let b: &BTreeSet<Axiom> = before.axiom_set();
    let a: &BTreeSet<Axiom> = after.axiom_set();
    (a.difference(b).count(), b.difference(a).count())
}
