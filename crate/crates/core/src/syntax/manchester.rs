//! Single-line Manchester rendering for the review dialog. Display only.

use crate::axiom::{Axiom, ClassExpression, DataRange, ObjectPropertyExpression};

use super::functional;
use super::{Ontology, PrefixEnvironment, SyntaxError};

pub fn render_manchester(a: &Axiom, _env: &PrefixEnvironment) -> Result<String, SyntaxError> {
    Ok(match a {
        Axiom::SubClassOf { sub, sup } => {
            format!("{} SubClassOf {}", expression(sub)?, expression(sup)?)
        }
        Axiom::DisjointClasses(pair) => format!("{} DisjointWith {}", pair.first(), pair.second()),
        Axiom::ClassAssertion { class, individual } => format!("{individual} Type {class}"),
    })
}

/// One axiom per line, in canonical order.
pub fn render_manchester_document(o: &Ontology) -> Result<String, SyntaxError> {
    let mut out = String::new();
    for axiom in o.axioms() {
        out.push_str(&render_manchester(axiom, &o.prefixes)?);
        out.push('\n');
    }
    Ok(out)
}

fn unsupported(construct: &str) -> SyntaxError {
    SyntaxError::Unsupported {
        construct: construct.to_owned(),
        line: None,
    }
}

fn property(p: &ObjectPropertyExpression) -> String {
    match p {
        ObjectPropertyExpression::Named(p) => p.to_string(),
        ObjectPropertyExpression::Inverse(p) => format!("inverse ({p})"),
    }
}

/// Restriction fillers must be atomic: a name, `owl:Thing` or a nominal.
/// Anything deeper would need parentheses.
fn filler(ce: &ClassExpression) -> Result<String, SyntaxError> {
    match ce {
        ClassExpression::Class(c) => Ok(c.to_string()),
        ClassExpression::Thing => Ok("owl:Thing".to_owned()),
        ClassExpression::ObjectOneOf(i) => Ok(format!("{{{i}}}")),
        _ => Err(unsupported("nested restriction")),
    }
}

fn data_range(r: &DataRange) -> String {
    match r {
        DataRange::Datatype(dt) => functional::datatype(dt),
        DataRange::Top => "rdfs:Literal".to_owned(),
        DataRange::OneOf(lit) => format!("{{{}}}", functional::literal(lit)),
    }
}

fn expression(ce: &ClassExpression) -> Result<String, SyntaxError> {
    use ClassExpression as CE;
    Ok(match ce {
        CE::Class(_) | CE::Thing | CE::ObjectOneOf(_) => filler(ce)?,
        CE::ObjectSomeValuesFrom(p, f) => match f.as_ref() {
            CE::ObjectOneOf(i) => format!("{} value {i}", property(p)),
            f => format!("{} some {}", property(p), filler(f)?),
        },
        CE::ObjectAllValuesFrom(p, f) => format!("{} only {}", property(p), filler(f)?),
        CE::ObjectMaxCardinality(n, p, f) => format!("{} max {n} {}", property(p), filler(f)?),
        CE::DataSomeValuesFrom(q, DataRange::OneOf(lit)) => {
            format!("{q} value {}", functional::literal(lit))
        }
        CE::DataSomeValuesFrom(q, r) => format!("{q} some {}", data_range(r)),
        CE::DataAllValuesFrom(q, r) => format!("{q} only {}", data_range(r)),
        CE::DataMaxCardinality(n, q, r) => format!("{q} max {n} {}", data_range(r)),
    })
}
