//! OWL 2 functional-style rendering.

use std::fmt::Write;

use crate::axiom::{
    Axiom, ClassExpression, DataRange, Datatype, EntityKind, Literal, ObjectPropertyExpression,
};

use super::{Ontology, OWL_NS, RDFS_NS, XSD_NS};

/// Declaration groups in output order.
const DECLARATION_ORDER: [EntityKind; 5] = [
    EntityKind::Class,
    EntityKind::ObjectProperty,
    EntityKind::DataProperty,
    EntityKind::NamedIndividual,
    EntityKind::Datatype,
];

/// Renders a whole ontology document. Output is a pure function of the
/// ontology's content.
pub fn render_functional(o: &Ontology) -> String {
    let mut out = String::new();
    for (prefix, ns) in [("owl", OWL_NS), ("rdfs", RDFS_NS), ("xsd", XSD_NS)] {
        let _ = writeln!(out, "Prefix({prefix}:=<{ns}>)");
    }
    let _ = writeln!(out, "Prefix(:=<{}>)", o.prefixes.base_iri());

    out.push_str("Ontology(");
    if let Some(id) = &o.id {
        let _ = write!(out, "<{}>", id.iri);
        if let Some(version) = &id.version {
            let _ = write!(out, " <{version}>");
        }
    }
    out.push('\n');

    let entities = o.entities();
    for kind in DECLARATION_ORDER {
        for e in entities.iter().filter(|e| e.kind == kind) {
            let name = match kind {
                EntityKind::Datatype => match Datatype::from_label(&e.name) {
                    Some(dt) => datatype(&dt),
                    None => e.name.clone(),
                },
                _ => format!(":{}", e.name),
            };
            let _ = writeln!(out, "Declaration({}({name}))", kind.keyword());
        }
    }
    for axiom in o.axioms() {
        out.push_str(&render_axiom(axiom));
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

pub fn render_axiom(axiom: &Axiom) -> String {
    match axiom {
        Axiom::SubClassOf { sub, sup } => {
            format!("SubClassOf({} {})", class_expression(sub), class_expression(sup))
        }
        Axiom::DisjointClasses(pair) => {
            format!("DisjointClasses(:{} :{})", pair.first(), pair.second())
        }
        Axiom::ClassAssertion { class, individual } => {
            format!("ClassAssertion(:{class} :{individual})")
        }
    }
}

pub fn class_expression(ce: &ClassExpression) -> String {
    use ClassExpression as CE;
    match ce {
        CE::Class(c) => format!(":{c}"),
        CE::Thing => "owl:Thing".to_owned(),
        CE::ObjectSomeValuesFrom(p, f) => {
            format!("ObjectSomeValuesFrom({} {})", property(p), class_expression(f))
        }
        CE::ObjectAllValuesFrom(p, f) => {
            format!("ObjectAllValuesFrom({} {})", property(p), class_expression(f))
        }
        CE::ObjectMaxCardinality(n, p, f) => {
            format!("ObjectMaxCardinality({n} {} {})", property(p), class_expression(f))
        }
        CE::ObjectOneOf(i) => format!("ObjectOneOf(:{i})"),
        CE::DataSomeValuesFrom(q, r) => format!("DataSomeValuesFrom(:{q} {})", data_range(r)),
        CE::DataAllValuesFrom(q, r) => format!("DataAllValuesFrom(:{q} {})", data_range(r)),
        CE::DataMaxCardinality(n, q, r) => {
            format!("DataMaxCardinality({n} :{q} {})", data_range(r))
        }
    }
}

fn property(p: &ObjectPropertyExpression) -> String {
    match p {
        ObjectPropertyExpression::Named(p) => format!(":{p}"),
        ObjectPropertyExpression::Inverse(p) => format!("ObjectInverseOf(:{p})"),
    }
}

fn data_range(r: &DataRange) -> String {
    match r {
        DataRange::Datatype(dt) => datatype(dt),
        DataRange::Top => "rdfs:Literal".to_owned(),
        DataRange::OneOf(lit) => format!("DataOneOf({})", literal(lit)),
    }
}

pub(crate) fn datatype(dt: &Datatype) -> String {
    match dt {
        Datatype::Xsd(x) => format!("xsd:{}", x.local_name()),
        Datatype::Iri(iri) => format!("<{iri}>"),
    }
}

/// `"lexical"^^datatype` with `"` and `\` escaped.
pub fn literal(lit: &Literal) -> String {
    let mut out = String::with_capacity(lit.lexical.len() + 16);
    out.push('"');
    for c in lit.lexical.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push_str("\"^^");
    out.push_str(&datatype(&lit.datatype));
    out
}
