//! Test support: proptest strategies for diagrams and axioms, and
//! brute-force oracles that share no code with the generator.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use crate::axiom::{
    Axiom, Class, ClassExpression, DataProperty, DataRange, Datatype, Individual, Literal,
    ObjectProperty, ObjectPropertyExpression, XsdDatatype,
};
use crate::diagram::{Diagram, Edge, EdgeKind, Node, NodeKind};

const CLASSES: [&str; 6] = ["A", "B", "C", "D", "Person", "Address"];
const INDIVIDUALS: [&str; 3] = ["a", "bob", "mary"];
const DATATYPES: [&str; 4] = ["string", "integer", "dateTime", "<http://example.org/dt#temp>"];
const LEXICALS: [&str; 4] = ["x", "", "say \"hi\"", "back\\slash"];
const OBJECT_PROPERTIES: [&str; 3] = ["p", "r", "hasAddress"];
const DATA_PROPERTIES: [&str; 2] = ["d", "code"];

fn node_for(i: usize, kind: NodeKind, pick: usize) -> Node {
    let id = format!("n{i}");
    match kind {
        NodeKind::Class => Node::class(id, CLASSES[pick % CLASSES.len()]),
        NodeKind::Individual => Node::individual(id, INDIVIDUALS[pick % INDIVIDUALS.len()]),
        NodeKind::Datatype => Node::datatype(id, DATATYPES[pick % DATATYPES.len()]),
        NodeKind::Literal => Node::literal(
            id,
            LEXICALS[pick % LEXICALS.len()],
            DATATYPES[(pick / LEXICALS.len()) % DATATYPES.len()],
        ),
    }
}

/// Valid diagrams with 1..=`max_nodes` nodes and up to `max_edges` edges.
/// Classes dominate so subclass and property edges are common.
pub fn valid_diagram(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Diagram> {
    let kind = prop_oneof![
        5 => Just(NodeKind::Class),
        1 => Just(NodeKind::Individual),
        1 => Just(NodeKind::Datatype),
        1 => Just(NodeKind::Literal),
    ];
    let nodes = prop::collection::vec((kind, 0..64usize), 1..=max_nodes);
    let edges = prop::collection::vec((0..64usize, 0..64usize, 0..8usize, 0..8usize), 0..=max_edges);
    (nodes, edges).prop_map(|(nodes, edges)| {
        let nodes: Vec<Node> = nodes
            .into_iter()
            .enumerate()
            .map(|(i, (kind, pick))| node_for(i, kind, pick))
            .collect();
        let mut out_edges = Vec::new();
        for (s, t, k, p) in edges {
            let (src, tgt) = (&nodes[s % nodes.len()], &nodes[t % nodes.len()]);
            let legal: Vec<EdgeKind> = EdgeKind::ALL
                .into_iter()
                .filter(|&e| crate::diagram::is_legal_configuration(src.kind, e, tgt.kind))
                .collect();
            if legal.is_empty() {
                continue;
            }
            let kind = legal[k % legal.len()];
            let id = format!("e{}", out_edges.len());
            let property = match kind {
                EdgeKind::ObjectProperty => Some(OBJECT_PROPERTIES[p % OBJECT_PROPERTIES.len()]),
                EdgeKind::DataProperty => Some(DATA_PROPERTIES[p % DATA_PROPERTIES.len()]),
                _ => None,
            };
            out_edges.push(Edge::new(id, kind, property, src.id.clone(), tgt.id.clone()));
        }
        Diagram::new(nodes, out_edges)
    })
}

/// Arbitrary diagrams: any kinds, any edges, occasional dangling ends and
/// bad names. Used for validator properties.
pub fn any_diagram(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Diagram> {
    let kind = prop::sample::select(NodeKind::ALL.to_vec());
    let edge_kind = prop::sample::select(EdgeKind::ALL.to_vec());
    let label = prop::sample::select(vec!["A", "B", "mary", "string", "x", "9bad", ""]);
    let nodes = prop::collection::vec((kind, label), 0..=max_nodes);
    let edges = prop::collection::vec(
        (edge_kind, 0..10usize, 0..10usize, prop::option::of(prop::sample::select(vec!["p", "bad name"]))),
        0..=max_edges,
    );
    (nodes, edges).prop_map(|(nodes, edges)| {
        let nodes: Vec<Node> = nodes
            .into_iter()
            .enumerate()
            .map(|(i, (kind, label))| {
                let mut n = Node::new(format!("n{i}"), kind, label);
                if kind == NodeKind::Literal {
                    n.literal_datatype = Some("string".into());
                }
                n
            })
            .collect();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, (kind, s, t, p))| Edge::new(format!("e{i}"), kind, p, format!("n{s}"), format!("n{t}")))
            .collect();
        Diagram::new(nodes, edges)
    })
}

fn arb_datatype() -> impl Strategy<Value = Datatype> {
    prop_oneof![
        prop::sample::select(XsdDatatype::ALL.to_vec()).prop_map(Datatype::Xsd),
        Just(Datatype::Iri("http://example.org/dt#temp".into())),
    ]
}

fn arb_data_range() -> impl Strategy<Value = DataRange> {
    prop_oneof![
        Just(DataRange::Top),
        arb_datatype().prop_map(DataRange::Datatype),
        (prop::sample::select(LEXICALS.to_vec()), arb_datatype())
            .prop_map(|(l, dt)| DataRange::OneOf(Literal::new(l, dt))),
    ]
}

fn arb_property() -> impl Strategy<Value = ObjectPropertyExpression> {
    (prop::sample::select(OBJECT_PROPERTIES.to_vec()), any::<bool>()).prop_map(|(p, inv)| {
        let p = ObjectProperty::new(p);
        if inv {
            ObjectPropertyExpression::Inverse(p)
        } else {
            ObjectPropertyExpression::Named(p)
        }
    })
}

fn arb_class() -> impl Strategy<Value = Class> {
    prop::sample::select(CLASSES.to_vec()).prop_map(Class::new)
}

fn atomic_expression() -> impl Strategy<Value = ClassExpression> {
    prop_oneof![
        3 => arb_class().prop_map(ClassExpression::Class),
        1 => Just(ClassExpression::Thing),
        1 => prop::sample::select(INDIVIDUALS.to_vec())
            .prop_map(|i| ClassExpression::ObjectOneOf(Individual::new(i))),
    ]
}

/// Class expressions of depth at most 2.
pub fn arb_class_expression() -> impl Strategy<Value = ClassExpression> {
    atomic_expression().prop_recursive(2, 8, 1, |inner| {
        let q = || prop::sample::select(DATA_PROPERTIES.to_vec()).prop_map(DataProperty::new);
        prop_oneof![
            (arb_property(), inner.clone()).prop_map(|(p, f)| ClassExpression::some(p, f)),
            (arb_property(), inner.clone()).prop_map(|(p, f)| ClassExpression::only(p, f)),
            (0..3u32, arb_property(), inner).prop_map(|(n, p, f)| ClassExpression::max(n, p, f)),
            (q(), arb_data_range()).prop_map(|(q, r)| ClassExpression::DataSomeValuesFrom(q, r)),
            (q(), arb_data_range()).prop_map(|(q, r)| ClassExpression::DataAllValuesFrom(q, r)),
            (0..3u32, q(), arb_data_range())
                .prop_map(|(n, q, r)| ClassExpression::DataMaxCardinality(n, q, r)),
        ]
    })
}

pub fn arb_axiom() -> impl Strategy<Value = Axiom> {
    prop_oneof![
        3 => (arb_class_expression(), arb_class_expression()).prop_map(|(a, b)| Axiom::subclass(a, b)),
        1 => (arb_class(), arb_class()).prop_map(|(a, b)| Axiom::disjoint(a, b)),
        1 => (arb_class(), prop::sample::select(INDIVIDUALS.to_vec()))
            .prop_map(|(c, i)| Axiom::class_assertion(c, Individual::new(i))),
    ]
}

/// Reflexive-transitive closure of the subClassOf relation over class
/// labels, by Floyd-Warshall on a boolean matrix.
pub fn subclass_closure(d: &Diagram) -> BTreeMap<(String, String), bool> {
    let labels: Vec<String> = d
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::Class)
        .map(|n| n.label.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let n = labels.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    let label_of = |id: &str| d.nodes.iter().find(|n| n.id == id).map(|n| (n.kind, n.label.as_str()));
    for e in d.edges.iter().filter(|e| e.kind == EdgeKind::SubClassOf) {
        if let (Some((NodeKind::Class, s)), Some((NodeKind::Class, t))) = (label_of(&e.source), label_of(&e.target)) {
            reach[index[s]][index[t]] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            out.insert((a.clone(), b.clone()), reach[i][j]);
        }
    }
    out
}

fn oracle_datatype(label: &str) -> String {
    if label.starts_with('<') {
        label.to_owned()
    } else {
        format!("xsd:{label}")
    }
}

fn oracle_literal(lexical: &str, datatype: &str) -> String {
    let escaped = lexical.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"^^{}", oracle_datatype(datatype))
}

/// Brute-force candidate enumeration: every edge against the schema table,
/// then every class pair against the closure. Returns functional-syntax
/// strings.
pub fn oracle_axioms(d: &Diagram) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let node = |id: &str| d.nodes.iter().find(|n| n.id == id).expect("valid diagram");
    for e in &d.edges {
        let (s, t) = (node(&e.source), node(&e.target));
        let p = e.property.as_deref().unwrap_or_default();
        let a = format!(":{}", s.label);
        let templates: Vec<String> = match (s.kind, e.kind, t.kind) {
            (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Class) => {
                let b = format!(":{}", t.label);
                let inv = format!("ObjectInverseOf(:{p})");
                vec![
                    format!("SubClassOf(ObjectSomeValuesFrom(:{p} owl:Thing) {a})"),
                    format!("SubClassOf(ObjectSomeValuesFrom(:{p} {b}) {a})"),
                    format!("SubClassOf(owl:Thing ObjectAllValuesFrom(:{p} {b}))"),
                    format!("SubClassOf({a} ObjectAllValuesFrom(:{p} {b}))"),
                    format!("SubClassOf({a} ObjectSomeValuesFrom(:{p} {b}))"),
                    format!("SubClassOf({b} ObjectSomeValuesFrom({inv} {a}))"),
                    format!("SubClassOf({a} ObjectMaxCardinality(1 :{p} owl:Thing))"),
                    format!("SubClassOf({a} ObjectMaxCardinality(1 :{p} {b}))"),
                    format!("SubClassOf({b} ObjectMaxCardinality(1 {inv} owl:Thing))"),
                    format!("SubClassOf({b} ObjectMaxCardinality(1 {inv} {a}))"),
                ]
            }
            (NodeKind::Class, EdgeKind::ObjectProperty, NodeKind::Individual) => {
                let c = format!("ObjectOneOf(:{})", t.label);
                vec![
                    format!("SubClassOf(ObjectSomeValuesFrom(:{p} owl:Thing) {a})"),
                    format!("SubClassOf(ObjectSomeValuesFrom(:{p} {c}) {a})"),
                    format!("SubClassOf(owl:Thing ObjectAllValuesFrom(:{p} {c}))"),
                    format!("SubClassOf({a} ObjectAllValuesFrom(:{p} {c}))"),
                    format!("SubClassOf({a} ObjectSomeValuesFrom(:{p} {c}))"),
                    format!("SubClassOf({a} ObjectMaxCardinality(1 :{p} owl:Thing))"),
                    format!("SubClassOf({a} ObjectMaxCardinality(1 :{p} {c}))"),
                ]
            }
            (NodeKind::Class, EdgeKind::DataProperty, kind @ (NodeKind::Datatype | NodeKind::Literal)) => {
                let m = if kind == NodeKind::Datatype {
                    oracle_datatype(&t.label)
                } else {
                    format!(
                        "DataOneOf({})",
                        oracle_literal(&t.label, t.literal_datatype.as_deref().unwrap_or_default())
                    )
                };
                vec![
                    format!("SubClassOf(DataSomeValuesFrom(:{p} rdfs:Literal) {a})"),
                    format!("SubClassOf(DataSomeValuesFrom(:{p} {m}) {a})"),
                    format!("SubClassOf(owl:Thing DataAllValuesFrom(:{p} {m}))"),
                    format!("SubClassOf({a} DataAllValuesFrom(:{p} {m}))"),
                    format!("SubClassOf({a} DataSomeValuesFrom(:{p} {m}))"),
                    format!("SubClassOf({a} DataMaxCardinality(1 :{p} rdfs:Literal))"),
                    format!("SubClassOf({a} DataMaxCardinality(1 :{p} {m}))"),
                ]
            }
            (NodeKind::Individual, EdgeKind::Type, NodeKind::Class) => {
                vec![format!("ClassAssertion(:{} :{})", t.label, s.label)]
            }
            (NodeKind::Class, EdgeKind::SubClassOf, NodeKind::Class) => {
                vec![format!("SubClassOf({a} :{})", t.label)]
            }
            other => panic!("oracle given illegal configuration {other:?}"),
        };
        out.extend(templates);
    }
    let closure = subclass_closure(d);
    let classes: BTreeSet<&String> = closure.keys().map(|(a, _)| a).collect();
    for a in &classes {
        for b in &classes {
            let key = |x: &String, y: &String| (x.clone(), y.clone());
            if a < b && !closure[&key(a, b)] && !closure[&key(b, a)] {
                out.insert(format!("DisjointClasses(:{a} :{b})"));
            }
        }
    }
    out
}
