//! Candidate axiom generation.
//!
//! Every edge of a valid diagram is expanded through a fixed schema table
//! (domain, range, existential and functionality readings of the edge),
//! then every pair of classes not joined by a `subClassOf` path is offered
//! as a disjointness candidate. The result is deterministic and free of
//! structural duplicates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::{
    Axiom, Class, ClassExpression, DataProperty, DataRange, Datatype, Individual, Literal,
    ObjectProperty, ObjectPropertyExpression,
};
use crate::diagram::{
    validate_diagram, Diagram, Edge, EdgeKind, NodeKind, SubclassGraph, ValidationReport,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GenerateError {
    #[error("INVALID_DIAGRAM: diagram has {} validation error(s)", .0.errors.len())]
    InvalidDiagram(ValidationReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SchemaCode {
    Dom,
    Sdom,
    Ran,
    Sran,
    Ex,
    Iex,
    Fun,
    Qfun,
    Ifun,
    Qifun,
    Type,
    Subc,
    Disj,
}

impl SchemaCode {
    pub const ALL: [SchemaCode; 13] = [
        SchemaCode::Dom,
        SchemaCode::Sdom,
        SchemaCode::Ran,
        SchemaCode::Sran,
        SchemaCode::Ex,
        SchemaCode::Iex,
        SchemaCode::Fun,
        SchemaCode::Qfun,
        SchemaCode::Ifun,
        SchemaCode::Qifun,
        SchemaCode::Type,
        SchemaCode::Subc,
        SchemaCode::Disj,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemaCode::Dom => "DOM",
            SchemaCode::Sdom => "SDOM",
            SchemaCode::Ran => "RAN",
            SchemaCode::Sran => "SRAN",
            SchemaCode::Ex => "EX",
            SchemaCode::Iex => "IEX",
            SchemaCode::Fun => "FUN",
            SchemaCode::Qfun => "QFUN",
            SchemaCode::Ifun => "IFUN",
            SchemaCode::Qifun => "QIFUN",
            SchemaCode::Type => "TYPE",
            SchemaCode::Subc => "SUBC",
            SchemaCode::Disj => "DISJ",
        }
    }
}

impl fmt::Display for SchemaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemaCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaCode::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown schema code `{s}`"))
    }
}

/// Schema order for each edge shape.
const CLASS_CLASS: [SchemaCode; 10] = [
    SchemaCode::Dom,
    SchemaCode::Sdom,
    SchemaCode::Ran,
    SchemaCode::Sran,
    SchemaCode::Ex,
    SchemaCode::Iex,
    SchemaCode::Fun,
    SchemaCode::Qfun,
    SchemaCode::Ifun,
    SchemaCode::Qifun,
];
const SEVEN: [SchemaCode; 7] = [
    SchemaCode::Dom,
    SchemaCode::Sdom,
    SchemaCode::Ran,
    SchemaCode::Sran,
    SchemaCode::Ex,
    SchemaCode::Fun,
    SchemaCode::Qfun,
];

/// Where a candidate came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Edge(String),
    /// Sorted pair of class labels (disjointness candidates).
    ClassPair(String, String),
    /// Position among ontology axioms that matched no generated candidate.
    Ontology(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    New,
    Existing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateAxiom {
    pub id: String,
    pub axiom: Axiom,
    /// `None` only for axioms carried over from an ontology.
    pub schema: Option<SchemaCode>,
    pub provenance: Provenance,
    pub status: Status,
}

pub fn edge_candidate_id(edge_id: &str, schema: SchemaCode) -> String {
    format!("{edge_id}#{schema}")
}

pub fn disjoint_candidate_id(a: &str, b: &str) -> String {
    let (a, b) = if b < a { (b, a) } else { (a, b) };
    format!("disj#{a}#{b}")
}

/// The resolved shape of one edge of a valid diagram.
enum EdgeShape {
    ClassClass(Class, ObjectProperty, Class),
    ClassIndividual(Class, ObjectProperty, Individual),
    ClassDatatype(Class, DataProperty, Datatype),
    ClassLiteral(Class, DataProperty, Literal),
    Typing(Individual, Class),
    Subclass(Class, Class),
}

fn resolve(d: &Diagram, edge: &Edge) -> EdgeShape {
    let source = d.node(&edge.source).expect("validated edge source");
    let target = d.node(&edge.target).expect("validated edge target");
    let property = || edge.property.clone().expect("validated property label");
    let class = |label: &str| Class::new(label);
    match (source.kind, edge.kind, target.kind) {
        (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Class) => EdgeShape::ClassClass(
            class(&source.label),
            ObjectProperty::new(property()),
            class(&target.label),
        ),
        (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Individual) => {
            EdgeShape::ClassIndividual(
                class(&source.label),
                ObjectProperty::new(property()),
                Individual::new(&target.label),
            )
        }
        (NodeKind::Class, EdgeKind::DataProperty, NodeKind::Datatype) => EdgeShape::ClassDatatype(
            class(&source.label),
            DataProperty::new(property()),
            Datatype::from_label(&target.label).expect("validated datatype"),
        ),
        (NodeKind::Class, EdgeKind::DataProperty, NodeKind::Literal) => {
            let datatype = target
                .literal_datatype
                .as_deref()
                .and_then(Datatype::from_label)
                .expect("validated literal datatype");
            EdgeShape::ClassLiteral(
                class(&source.label),
                DataProperty::new(property()),
                Literal::new(&target.label, datatype),
            )
        }
        (NodeKind::Individual, EdgeKind::Type, NodeKind::Class) => {
            EdgeShape::Typing(Individual::new(&source.label), class(&target.label))
        }
        (NodeKind::Class, EdgeKind::SubClassOf, NodeKind::Class) => {
            EdgeShape::Subclass(class(&source.label), class(&target.label))
        }
        other => unreachable!("validated diagram contains illegal configuration {other:?}"),
    }
}

/// Instantiates the schema table for one edge, in schema order.
fn instantiate(shape: EdgeShape) -> Vec<(SchemaCode, Axiom)> {
    use ClassExpression as CE;
    let named = |c: &Class| CE::Class(c.clone());
    match shape {
        EdgeShape::ClassClass(a, r, b) => {
            let fwd = || ObjectPropertyExpression::Named(r.clone());
            let inv = || ObjectPropertyExpression::Inverse(r.clone());
            let axioms = [
                Axiom::subclass(CE::some(fwd(), CE::Thing), named(&a)),
                Axiom::subclass(CE::some(fwd(), named(&b)), named(&a)),
                Axiom::subclass(CE::Thing, CE::only(fwd(), named(&b))),
                Axiom::subclass(named(&a), CE::only(fwd(), named(&b))),
                Axiom::subclass(named(&a), CE::some(fwd(), named(&b))),
                Axiom::subclass(named(&b), CE::some(inv(), named(&a))),
                Axiom::subclass(named(&a), CE::max(1, fwd(), CE::Thing)),
                Axiom::subclass(named(&a), CE::max(1, fwd(), named(&b))),
                Axiom::subclass(named(&b), CE::max(1, inv(), CE::Thing)),
                Axiom::subclass(named(&b), CE::max(1, inv(), named(&a))),
            ];
            CLASS_CLASS.into_iter().zip(axioms).collect()
        }
        EdgeShape::ClassIndividual(a, r, c) => {
            let p = || ObjectPropertyExpression::Named(r.clone());
            let nominal = || CE::ObjectOneOf(c.clone());
            let axioms = [
                Axiom::subclass(CE::some(p(), CE::Thing), named(&a)),
                Axiom::subclass(CE::some(p(), nominal()), named(&a)),
                Axiom::subclass(CE::Thing, CE::only(p(), nominal())),
                Axiom::subclass(named(&a), CE::only(p(), nominal())),
                Axiom::subclass(named(&a), CE::some(p(), nominal())),
                Axiom::subclass(named(&a), CE::max(1, p(), CE::Thing)),
                Axiom::subclass(named(&a), CE::max(1, p(), nominal())),
            ];
            SEVEN.into_iter().zip(axioms).collect()
        }
        EdgeShape::ClassDatatype(a, q, m) => {
            data_schemas(&a, &q, DataRange::Datatype(m))
        }
        EdgeShape::ClassLiteral(a, q, lit) => data_schemas(&a, &q, DataRange::OneOf(lit)),
        EdgeShape::Typing(c, a) => vec![(SchemaCode::Type, Axiom::class_assertion(a, c))],
        EdgeShape::Subclass(a, b) => vec![(SchemaCode::Subc, Axiom::subclass(a, b))],
    }
}

fn data_schemas(a: &Class, q: &DataProperty, filler: DataRange) -> Vec<(SchemaCode, Axiom)> {
    use ClassExpression as CE;
    let named = || CE::Class(a.clone());
    let axioms = [
        Axiom::subclass(CE::DataSomeValuesFrom(q.clone(), DataRange::Top), named()),
        Axiom::subclass(CE::DataSomeValuesFrom(q.clone(), filler.clone()), named()),
        Axiom::subclass(CE::Thing, CE::DataAllValuesFrom(q.clone(), filler.clone())),
        Axiom::subclass(named(), CE::DataAllValuesFrom(q.clone(), filler.clone())),
        Axiom::subclass(named(), CE::DataSomeValuesFrom(q.clone(), filler.clone())),
        Axiom::subclass(named(), CE::DataMaxCardinality(1, q.clone(), DataRange::Top)),
        Axiom::subclass(named(), CE::DataMaxCardinality(1, q.clone(), filler)),
    ];
    SEVEN.into_iter().zip(axioms).collect()
}

/// Sorted pairs of distinct class labels with no `subClassOf` path between them.
fn disjoint_pairs<'d>(graph: &SubclassGraph<'d>) -> Vec<(&'d str, &'d str)> {
    let classes: Vec<&str> = graph.classes().collect();
    let mut pairs = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if !graph.connected(a, b) {
                pairs.push((*a, *b));
            }
        }
    }
    pairs
}

fn ensure_valid(d: &Diagram) -> Result<(), GenerateError> {
    let report = validate_diagram(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(GenerateError::InvalidDiagram(report))
    }
}

/// Generates the ordered candidate list for a valid diagram.
pub fn generate(d: &Diagram) -> Result<Vec<CandidateAxiom>, GenerateError> {
    ensure_valid(d)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();

    for edge in &d.edges {
        for (schema, axiom) in instantiate(resolve(d, edge)) {
            if seen.insert(axiom.clone()) {
                out.push(CandidateAxiom {
                    id: edge_candidate_id(&edge.id, schema),
                    axiom,
                    schema: Some(schema),
                    provenance: Provenance::Edge(edge.id.clone()),
                    status: Status::New,
                });
            }
        }
    }

    let graph = SubclassGraph::new(d);
    for (a, b) in disjoint_pairs(&graph) {
        out.push(CandidateAxiom {
            id: disjoint_candidate_id(a, b),
            axiom: Axiom::disjoint(Class::new(a), Class::new(b)),
            schema: Some(SchemaCode::Disj),
            provenance: Provenance::ClassPair(a.to_owned(), b.to_owned()),
            status: Status::New,
        });
    }
    Ok(out)
}

/// Number of candidates [`generate`] would return, without building them.
pub fn candidate_count(d: &Diagram) -> Result<usize, GenerateError> {
    ensure_valid(d)?;
    let unique: HashSet<Axiom> = d
        .edges
        .iter()
        .flat_map(|e| instantiate(resolve(d, e)))
        .map(|(_, axiom)| axiom)
        .collect();
    Ok(unique.len() + disjoint_pairs(&SubclassGraph::new(d)).len())
}
