//! Class-diagram data model, JSON format and structural validation.
//!
//! A diagram is a set of nodes (classes, datatypes, individuals, literals)
//! connected by directed edges (object properties, data properties,
//! `rdf:type` and `rdfs:subClassOf`). Only six node-edge-node shapes are
//! legal; [`validate_diagram`] reports everything else.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axiom::XsdDatatype;

#[derive(Debug, Error)]
pub enum DiagramError {
    /// `path` locates the offending value, e.g. `nodes[0].kind`.
    #[error("malformed diagram JSON at `{path}`: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("UNKNOWN_CLASS: `{0}` is not a class in the diagram")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum NodeKind {
    Class,
    Datatype,
    Individual,
    Literal,
}

impl NodeKind {
    pub const ALL: [NodeKind; 4] = [
        NodeKind::Class,
        NodeKind::Datatype,
        NodeKind::Individual,
        NodeKind::Literal,
    ];
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Class => "class",
            NodeKind::Datatype => "datatype",
            NodeKind::Individual => "individual",
            NodeKind::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EdgeKind {
    ObjectProperty,
    DataProperty,
    Type,
    SubClassOf,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 4] = [
        EdgeKind::ObjectProperty,
        EdgeKind::DataProperty,
        EdgeKind::Type,
        EdgeKind::SubClassOf,
    ];

    /// Property edges carry a property label; `type` and `subClassOf` do not.
    pub fn is_property(self) -> bool {
        matches!(self, EdgeKind::ObjectProperty | EdgeKind::DataProperty)
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::ObjectProperty => "objectProperty",
            EdgeKind::DataProperty => "dataProperty",
            EdgeKind::Type => "type",
            EdgeKind::SubClassOf => "subClassOf",
        })
    }
}

/// The node-edge-node shapes a diagram may contain.
pub const LEGAL_CONFIGURATIONS: [(NodeKind, EdgeKind, NodeKind); 6] = [
    (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Class),
    (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Individual),
    (NodeKind::Class, EdgeKind::DataProperty, NodeKind::Datatype),
    (NodeKind::Class, EdgeKind::DataProperty, NodeKind::Literal),
    (NodeKind::Individual, EdgeKind::Type, NodeKind::Class),
    (NodeKind::Class, EdgeKind::SubClassOf, NodeKind::Class),
];

pub fn is_legal_configuration(source: NodeKind, edge: EdgeKind, target: NodeKind) -> bool {
    LEGAL_CONFIGURATIONS.contains(&(source, edge, target))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub label: String,
    #[serde(
        rename = "literalDatatype",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub literal_datatype: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: NodeKind, label: impl Into<String>) -> Self {
        Node {
            id: id.into(),
            kind,
            label: label.into(),
            literal_datatype: None,
            x: None,
            y: None,
        }
    }

    pub fn class(id: impl Into<String>, label: impl Into<String>) -> Self {
        Node::new(id, NodeKind::Class, label)
    }

    pub fn individual(id: impl Into<String>, label: impl Into<String>) -> Self {
        Node::new(id, NodeKind::Individual, label)
    }

    pub fn datatype(id: impl Into<String>, label: impl Into<String>) -> Self {
        Node::new(id, NodeKind::Datatype, label)
    }

    pub fn literal(
        id: impl Into<String>,
        lexical: impl Into<String>,
        datatype: impl Into<String>,
    ) -> Self {
        Node {
            literal_datatype: Some(datatype.into()),
            ..Node::new(id, NodeKind::Literal, lexical)
        }
    }

    /// Key under which duplicate nodes denote the same thing.
    fn identity_key(&self) -> (NodeKind, &str, Option<&str>) {
        (self.kind, &self.label, self.literal_datatype.as_deref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    pub source: String,
    pub target: String,
}

impl Edge {
    pub fn new(
        id: impl Into<String>,
        kind: EdgeKind,
        property: Option<&str>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Edge {
            id: id.into(),
            kind,
            property: property.map(str::to_owned),
            source: source.into(),
            target: target.into(),
        }
    }

    pub fn object(
        id: impl Into<String>,
        property: &str,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Edge::new(id, EdgeKind::ObjectProperty, Some(property), source, target)
    }

    pub fn data(
        id: impl Into<String>,
        property: &str,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Edge::new(id, EdgeKind::DataProperty, Some(property), source, target)
    }

    pub fn typing(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Edge::new(id, EdgeKind::Type, None, source, target)
    }

    pub fn subclass(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Edge::new(id, EdgeKind::SubClassOf, None, source, target)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    #[serde(default)]
    pub nodes: Vec<Node>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

impl Diagram {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Self {
        Diagram { nodes, edges }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let diagram = serde_path_to_error::deserialize(&mut de).map_err(|e| DiagramError::Json {
            path: e.path().to_string(),
            source: e.into_inner(),
        })?;
        de.end().map_err(|source| DiagramError::Json {
            path: ".".to_owned(),
            source,
        })?;
        Ok(diagram)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serialization is infallible")
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Node lookup table; with duplicate ids the first node wins.
    pub(crate) fn node_index(&self) -> HashMap<&str, &Node> {
        let mut index = HashMap::with_capacity(self.nodes.len());
        for node in &self.nodes {
            index.entry(node.id.as_str()).or_insert(node);
        }
        index
    }
}

/// Whether `name` matches `[A-Za-z_][A-Za-z0-9_.-]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Accepts the supported xsd names and `<absolute-iri>`.
pub fn is_supported_datatype(name: &str) -> bool {
    name.parse::<XsdDatatype>().is_ok() || is_bracketed_absolute_iri(name)
}

pub(crate) fn is_bracketed_absolute_iri(name: &str) -> bool {
    let Some(inner) = name.strip_prefix('<').and_then(|s| s.strip_suffix('>')) else {
        return false;
    };
    is_absolute_iri(inner)
}

pub(crate) fn is_absolute_iri(iri: &str) -> bool {
    let Some((scheme, rest)) = iri.split_once(':') else {
        return false;
    };
    let mut sc = scheme.chars();
    matches!(sc.next(), Some(c) if c.is_ascii_alphabetic())
        && sc.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        && !rest.is_empty()
        && !iri
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IssueCode {
    EmptyDiagram,
    DuplicateId,
    DanglingEdge,
    IllegalConfiguration,
    BadName,
    UnknownDatatype,
    BadLiteral,
    MissingProperty,
    UnexpectedProperty,
    DuplicateEntity,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::EmptyDiagram => "EMPTY_DIAGRAM",
            IssueCode::DuplicateId => "DUPLICATE_ID",
            IssueCode::DanglingEdge => "DANGLING_EDGE",
            IssueCode::IllegalConfiguration => "ILLEGAL_CONFIGURATION",
            IssueCode::BadName => "BAD_NAME",
            IssueCode::UnknownDatatype => "UNKNOWN_DATATYPE",
            IssueCode::BadLiteral => "BAD_LITERAL",
            IssueCode::MissingProperty => "MISSING_PROPERTY",
            IssueCode::UnexpectedProperty => "UNEXPECTED_PROPERTY",
            IssueCode::DuplicateEntity => "DUPLICATE_ENTITY",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Element id used for findings about the diagram as a whole.
pub const DIAGRAM_ELEMENT: &str = "-";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Issue {
    pub code: IssueCode,
    pub element: String,
    pub message: String,
}

impl Issue {
    fn new(code: IssueCode, element: &str, message: impl Into<String>) -> Self {
        Issue {
            code,
            element: element.to_owned(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    /// One `LEVEL CODE element: message` line per finding, errors first.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        let errors = self.errors.iter().map(|i| ("ERROR", i));
        let warnings = self.warnings.iter().map(|i| ("WARNING", i));
        errors
            .chain(warnings)
            .map(|(level, i)| format!("{level} {} {}: {}", i.code, i.element, i.message))
    }
}

/// Checks a diagram against the structural rules. Never fails; every
/// problem becomes a report entry. Entries are sorted, so the report does
/// not depend on node or edge storage order.
pub fn validate_diagram(d: &Diagram) -> ValidationReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();

    if d.nodes.is_empty() {
        errors.push(Issue::new(
            IssueCode::EmptyDiagram,
            DIAGRAM_ELEMENT,
            "diagram must contain at least one node",
        ));
    }

    let mut id_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for id in d.nodes.iter().map(|n| &n.id).chain(d.edges.iter().map(|e| &e.id)) {
        *id_counts.entry(id.as_str()).or_default() += 1;
    }
    for (id, count) in id_counts.into_iter().filter(|(_, c)| *c > 1) {
        errors.push(Issue::new(
            IssueCode::DuplicateId,
            id,
            format!("id is used by {count} elements"),
        ));
    }

    for node in &d.nodes {
        check_node(node, &mut errors);
    }

    let index = d.node_index();
    for edge in &d.edges {
        check_edge(edge, &index, &mut errors);
    }

    let mut groups: BTreeMap<_, Vec<&str>> = BTreeMap::new();
    for node in &d.nodes {
        groups.entry(node.identity_key()).or_default().push(&node.id);
    }
    for ((kind, label, _), mut ids) in groups.into_iter().filter(|(_, ids)| ids.len() > 1) {
        ids.sort_unstable();
        let first = ids[0];
        for id in &ids[1..] {
            warnings.push(Issue::new(
                IssueCode::DuplicateEntity,
                id,
                format!("{kind} `{label}` duplicates node {first}; both denote the same entity"),
            ));
        }
    }

    errors.sort();
    warnings.sort();
    ValidationReport { errors, warnings }
}

fn check_node(node: &Node, errors: &mut Vec<Issue>) {
    match node.kind {
        NodeKind::Class | NodeKind::Individual => {
            if !is_identifier(&node.label) {
                errors.push(Issue::new(
                    IssueCode::BadName,
                    &node.id,
                    format!("{} label `{}` is not a valid identifier", node.kind, node.label),
                ));
            }
        }
        NodeKind::Datatype => {
            if node.label.is_empty() {
                errors.push(Issue::new(IssueCode::BadName, &node.id, "datatype label is empty"));
            } else if !is_supported_datatype(&node.label) {
                errors.push(Issue::new(
                    IssueCode::UnknownDatatype,
                    &node.id,
                    format!("unsupported datatype `{}`", node.label),
                ));
            }
        }
        NodeKind::Literal => match &node.literal_datatype {
            None => errors.push(Issue::new(
                IssueCode::BadLiteral,
                &node.id,
                "literal node has no literalDatatype",
            )),
            Some(dt) if !is_supported_datatype(dt) => errors.push(Issue::new(
                IssueCode::UnknownDatatype,
                &node.id,
                format!("unsupported literal datatype `{dt}`"),
            )),
            Some(_) => {}
        },
    }
    if node.kind != NodeKind::Literal && node.literal_datatype.is_some() {
        errors.push(Issue::new(
            IssueCode::BadLiteral,
            &node.id,
            format!("{} node must not carry a literalDatatype", node.kind),
        ));
    }
}

fn check_edge(edge: &Edge, index: &HashMap<&str, &Node>, errors: &mut Vec<Issue>) {
    match (&edge.property, edge.kind.is_property()) {
        (None, true) => errors.push(Issue::new(
            IssueCode::MissingProperty,
            &edge.id,
            format!("{} edge has no property label", edge.kind),
        )),
        (Some(p), true) if !is_identifier(p) => errors.push(Issue::new(
            IssueCode::BadName,
            &edge.id,
            format!("property label `{p}` is not a valid identifier"),
        )),
        (Some(_), false) => errors.push(Issue::new(
            IssueCode::UnexpectedProperty,
            &edge.id,
            format!("{} edge must not carry a property label", edge.kind),
        )),
        _ => {}
    }

    let source = index.get(edge.source.as_str());
    let target = index.get(edge.target.as_str());
    for (end, id, node) in [("source", &edge.source, source), ("target", &edge.target, target)] {
        if node.is_none() {
            errors.push(Issue::new(
                IssueCode::DanglingEdge,
                &edge.id,
                format!("{end} `{id}` does not reference a node"),
            ));
        }
    }
    if let (Some(s), Some(t)) = (source, target) {
        if !is_legal_configuration(s.kind, edge.kind, t.kind) {
            errors.push(Issue::new(
                IssueCode::IllegalConfiguration,
                &edge.id,
                format!("{} -{}-> {} is not an allowed configuration", s.kind, edge.kind, t.kind),
            ));
        }
    }
}

/// Directed `subClassOf` graph over class labels. Nodes sharing a label are
/// one vertex; every other edge kind is ignored.
#[derive(Debug, Clone)]
pub struct SubclassGraph<'d> {
    successors: BTreeMap<&'d str, BTreeSet<&'d str>>,
}

impl<'d> SubclassGraph<'d> {
    pub fn new(d: &'d Diagram) -> Self {
        let index = d.node_index();
        let mut successors: BTreeMap<&str, BTreeSet<&str>> = d
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Class)
            .map(|n| (n.label.as_str(), BTreeSet::new()))
            .collect();
        for edge in d.edges.iter().filter(|e| e.kind == EdgeKind::SubClassOf) {
            let (Some(s), Some(t)) = (index.get(edge.source.as_str()), index.get(edge.target.as_str()))
            else {
                continue;
            };
            if s.kind == NodeKind::Class && t.kind == NodeKind::Class {
                successors.entry(s.label.as_str()).or_default().insert(t.label.as_str());
            }
        }
        SubclassGraph { successors }
    }

    pub fn contains(&self, class: &str) -> bool {
        self.successors.contains_key(class)
    }

    pub fn classes(&self) -> impl Iterator<Item = &'d str> + '_ {
        self.successors.keys().copied()
    }

    /// Reflexive-transitive reachability along `subClassOf` edges.
    pub fn reaches(&self, from: &str, to: &str) -> bool {
        if from == to {
            return true;
        }
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(current) = queue.pop_front() {
            for &next in self.successors.get(current).into_iter().flatten() {
                if next == to {
                    return true;
                }
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        false
    }

    /// Whether a directed path joins the two classes in either direction.
    pub fn connected(&self, a: &str, b: &str) -> bool {
        self.reaches(a, b) || self.reaches(b, a)
    }
}

pub fn subclass_reachable(d: &Diagram, x: &str, y: &str) -> Result<bool, DiagramError> {
    let graph = SubclassGraph::new(d);
    for class in [x, y] {
        if !graph.contains(class) {
            return Err(DiagramError::UnknownClass(class.to_owned()));
        }
    }
    Ok(graph.reaches(x, y))
}

/// Names used by a diagram, de-duplicated and sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EntityInventory {
    pub classes: BTreeSet<String>,
    pub object_properties: BTreeSet<String>,
    pub data_properties: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
    pub datatypes: BTreeSet<String>,
}

pub fn entities_of(d: &Diagram) -> EntityInventory {
    let mut inv = EntityInventory::default();
    for node in &d.nodes {
        match node.kind {
            NodeKind::Class => inv.classes.insert(node.label.clone()),
            NodeKind::Individual => inv.individuals.insert(node.label.clone()),
            NodeKind::Datatype => inv.datatypes.insert(node.label.clone()),
            NodeKind::Literal => match &node.literal_datatype {
                Some(dt) => inv.datatypes.insert(dt.clone()),
                None => false,
            },
        };
    }
    for edge in &d.edges {
        let Some(p) = &edge.property else { continue };
        match edge.kind {
            EdgeKind::ObjectProperty => inv.object_properties.insert(p.clone()),
            EdgeKind::DataProperty => inv.data_properties.insert(p.clone()),
            _ => false,
        };
    }
    inv
}
