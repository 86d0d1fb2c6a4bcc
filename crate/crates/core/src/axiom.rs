//! Axioms and class expressions for the OWL fragment produced from diagrams.
//!
//! Equality and hashing are structural: two axioms are equal iff their
//! trees are identical. `DisjointClasses` is an unordered pair and is kept
//! in canonical (sorted) form by construction, so derived equality already
//! treats `DisjointClasses(B, A)` and `DisjointClasses(A, B)` alike.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::syntax::functional;

macro_rules! name_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                $name(name.into())
            }

            pub fn name(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_newtype!(
    /// A named class in the default namespace.
    Class
);
name_newtype!(ObjectProperty);
name_newtype!(DataProperty);
name_newtype!(
    /// A named individual in the default namespace.
    Individual
);

/// The xsd datatypes a diagram may name directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XsdDatatype {
    String,
    Integer,
    Decimal,
    Float,
    Double,
    Boolean,
    DateTime,
    Date,
    AnyUri,
}

impl XsdDatatype {
    pub const ALL: [XsdDatatype; 9] = [
        XsdDatatype::String,
        XsdDatatype::Integer,
        XsdDatatype::Decimal,
        XsdDatatype::Float,
        XsdDatatype::Double,
        XsdDatatype::Boolean,
        XsdDatatype::DateTime,
        XsdDatatype::Date,
        XsdDatatype::AnyUri,
    ];

    pub fn local_name(self) -> &'static str {
        match self {
            XsdDatatype::String => "string",
            XsdDatatype::Integer => "integer",
            XsdDatatype::Decimal => "decimal",
            XsdDatatype::Float => "float",
            XsdDatatype::Double => "double",
            XsdDatatype::Boolean => "boolean",
            XsdDatatype::DateTime => "dateTime",
            XsdDatatype::Date => "date",
            XsdDatatype::AnyUri => "anyURI",
        }
    }
}

impl FromStr for XsdDatatype {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        XsdDatatype::ALL
            .into_iter()
            .find(|dt| dt.local_name() == s)
            .ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datatype {
    Xsd(XsdDatatype),
    /// Any other datatype, by absolute IRI (stored without angle brackets).
    Iri(String),
}

impl Datatype {
    /// Parses a diagram datatype label: an xsd local name or `<iri>`.
    pub fn from_label(label: &str) -> Option<Self> {
        if let Ok(xsd) = label.parse() {
            return Some(Datatype::Xsd(xsd));
        }
        crate::diagram::is_bracketed_absolute_iri(label)
            .then(|| crate::syntax::datatype_from_iri(&label[1..label.len() - 1]))
    }

    /// Inverse of [`Datatype::from_label`].
    pub fn label(&self) -> String {
        match self {
            Datatype::Xsd(x) => x.local_name().to_owned(),
            Datatype::Iri(iri) => format!("<{iri}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Datatype,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Datatype) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjectPropertyExpression {
    Named(ObjectProperty),
    Inverse(ObjectProperty),
}

impl ObjectPropertyExpression {
    pub fn property(&self) -> &ObjectProperty {
        match self {
            ObjectPropertyExpression::Named(p) | ObjectPropertyExpression::Inverse(p) => p,
        }
    }
}

impl From<ObjectProperty> for ObjectPropertyExpression {
    fn from(p: ObjectProperty) -> Self {
        ObjectPropertyExpression::Named(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DataRange {
    Datatype(Datatype),
    /// `rdfs:Literal`, the universal data range.
    Top,
    OneOf(Literal),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassExpression {
    Class(Class),
    Thing,
    ObjectSomeValuesFrom(ObjectPropertyExpression, Box<ClassExpression>),
    ObjectAllValuesFrom(ObjectPropertyExpression, Box<ClassExpression>),
    ObjectMaxCardinality(u32, ObjectPropertyExpression, Box<ClassExpression>),
    ObjectOneOf(Individual),
    DataSomeValuesFrom(DataProperty, DataRange),
    DataAllValuesFrom(DataProperty, DataRange),
    DataMaxCardinality(u32, DataProperty, DataRange),
}

impl ClassExpression {
    pub fn some(p: impl Into<ObjectPropertyExpression>, filler: ClassExpression) -> Self {
        ClassExpression::ObjectSomeValuesFrom(p.into(), Box::new(filler))
    }

    pub fn only(p: impl Into<ObjectPropertyExpression>, filler: ClassExpression) -> Self {
        ClassExpression::ObjectAllValuesFrom(p.into(), Box::new(filler))
    }

    pub fn max(n: u32, p: impl Into<ObjectPropertyExpression>, filler: ClassExpression) -> Self {
        ClassExpression::ObjectMaxCardinality(n, p.into(), Box::new(filler))
    }

    /// Restriction nesting depth: named classes, `owl:Thing` and nominals are 0.
    pub fn depth(&self) -> usize {
        match self {
            ClassExpression::Class(_) | ClassExpression::Thing | ClassExpression::ObjectOneOf(_) => 0,
            ClassExpression::ObjectSomeValuesFrom(_, f)
            | ClassExpression::ObjectAllValuesFrom(_, f)
            | ClassExpression::ObjectMaxCardinality(_, _, f) => 1 + f.depth(),
            ClassExpression::DataSomeValuesFrom(..)
            | ClassExpression::DataAllValuesFrom(..)
            | ClassExpression::DataMaxCardinality(..) => 1,
        }
    }
}

impl From<Class> for ClassExpression {
    fn from(c: Class) -> Self {
        ClassExpression::Class(c)
    }
}

/// Two classes in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassPair(Class, Class);

impl ClassPair {
    pub fn new(a: Class, b: Class) -> Self {
        if b < a {
            ClassPair(b, a)
        } else {
            ClassPair(a, b)
        }
    }

    pub fn first(&self) -> &Class {
        &self.0
    }

    pub fn second(&self) -> &Class {
        &self.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Axiom {
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    DisjointClasses(ClassPair),
    ClassAssertion {
        class: Class,
        individual: Individual,
    },
}

impl Axiom {
    pub fn subclass(sub: impl Into<ClassExpression>, sup: impl Into<ClassExpression>) -> Self {
        Axiom::SubClassOf {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    pub fn disjoint(a: Class, b: Class) -> Self {
        Axiom::DisjointClasses(ClassPair::new(a, b))
    }

    pub fn class_assertion(class: Class, individual: Individual) -> Self {
        Axiom::ClassAssertion { class, individual }
    }

    /// SubClassOf < DisjointClasses < ClassAssertion.
    pub fn kind_rank(&self) -> u8 {
        match self {
            Axiom::SubClassOf { .. } => 0,
            Axiom::DisjointClasses(_) => 1,
            Axiom::ClassAssertion { .. } => 2,
        }
    }

    /// Sort key realising [`canonical_compare`].
    pub fn canonical_key(&self) -> (u8, String) {
        (self.kind_rank(), functional::render_axiom(self))
    }
}

/// Structural identity; no reasoning is involved.
pub fn structurally_equal(a: &Axiom, b: &Axiom) -> bool {
    a == b
}

/// Total order: axiom kind first, then the functional-syntax rendering.
pub fn canonical_compare(a: &Axiom, b: &Axiom) -> Ordering {
    a.kind_rank()
        .cmp(&b.kind_rank())
        .then_with(|| functional::render_axiom(a).cmp(&functional::render_axiom(b)))
}

impl Ord for Axiom {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_compare(self, other)
    }
}

impl PartialOrd for Axiom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&functional::render_axiom(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    NamedIndividual,
    Datatype,
}

impl EntityKind {
    /// Functional-syntax keyword used in `Declaration(...)`.
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
            EntityKind::Datatype => "Datatype",
        }
    }
}

/// A named logical entity. For datatypes the name is an xsd local name or
/// a bracketed absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entity {
    pub kind: EntityKind,
    pub name: String,
}

impl Entity {
    pub fn new(kind: EntityKind, name: impl Into<String>) -> Self {
        Entity {
            kind,
            name: name.into(),
        }
    }
}

impl From<&Class> for Entity {
    fn from(c: &Class) -> Self {
        Entity::new(EntityKind::Class, c.name())
    }
}

impl From<&ObjectProperty> for Entity {
    fn from(p: &ObjectProperty) -> Self {
        Entity::new(EntityKind::ObjectProperty, p.name())
    }
}

impl From<&DataProperty> for Entity {
    fn from(p: &DataProperty) -> Self {
        Entity::new(EntityKind::DataProperty, p.name())
    }
}

impl From<&Individual> for Entity {
    fn from(i: &Individual) -> Self {
        Entity::new(EntityKind::NamedIndividual, i.name())
    }
}

impl From<&Datatype> for Entity {
    fn from(d: &Datatype) -> Self {
        Entity::new(EntityKind::Datatype, d.label())
    }
}

/// Collects every entity mentioned in an axiom into `out`.
pub fn signature(axiom: &Axiom, out: &mut impl Extend<Entity>) {
    fn class_expr(ce: &ClassExpression, out: &mut impl Extend<Entity>) {
        match ce {
            ClassExpression::Class(c) => out.extend([c.into()]),
            ClassExpression::Thing => {}
            ClassExpression::ObjectSomeValuesFrom(p, f)
            | ClassExpression::ObjectAllValuesFrom(p, f)
            | ClassExpression::ObjectMaxCardinality(_, p, f) => {
                out.extend([p.property().into()]);
                class_expr(f, out);
            }
            ClassExpression::ObjectOneOf(i) => out.extend([i.into()]),
            ClassExpression::DataSomeValuesFrom(q, r)
            | ClassExpression::DataAllValuesFrom(q, r)
            | ClassExpression::DataMaxCardinality(_, q, r) => {
                out.extend([q.into()]);
                match r {
                    DataRange::Datatype(dt) => out.extend([dt.into()]),
                    DataRange::OneOf(lit) => out.extend([(&lit.datatype).into()]),
                    DataRange::Top => {}
                }
            }
        }
    }
    match axiom {
        Axiom::SubClassOf { sub, sup } => {
            class_expr(sub, out);
            class_expr(sup, out);
        }
        Axiom::DisjointClasses(pair) => out.extend([pair.first().into(), pair.second().into()]),
        Axiom::ClassAssertion { class, individual } => {
            out.extend([class.into(), individual.into()])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};

    fn class(n: &str) -> Class {
        Class::new(n)
    }

    fn hash_of(a: &Axiom) -> u64 {
        let mut h = DefaultHasher::new();
        a.hash(&mut h);
        h.finish()
    }

    #[test]
    fn disjoint_is_unordered() {
        let ab = Axiom::disjoint(class("A"), class("B"));
        let ba = Axiom::disjoint(class("B"), class("A"));
        assert!(structurally_equal(&ab, &ba));
        assert_eq!(hash_of(&ab), hash_of(&ba));
        let Axiom::DisjointClasses(pair) = &ba else { unreachable!() };
        assert_eq!(pair.first().name(), "A");
    }

    #[test]
    fn scoped_and_unscoped_domain_differ() {
        let r = ObjectProperty::new("R");
        let unscoped = Axiom::subclass(ClassExpression::some(r.clone(), ClassExpression::Thing), class("A"));
        let scoped = Axiom::subclass(ClassExpression::some(r, class("B").into()), class("A"));
        assert!(!structurally_equal(&unscoped, &scoped));
    }

    #[test]
    fn assertion_identity() {
        let a = Axiom::class_assertion(class("Person"), Individual::new("mary"));
        let b = Axiom::class_assertion(class("Person"), Individual::new("mary"));
        assert!(structurally_equal(&a, &b));
        assert_eq!(canonical_compare(&a, &b), Ordering::Equal);
    }

    #[test]
    fn kind_rank_dominates() {
        let sub = Axiom::subclass(class("Z"), class("Z"));
        let disj = Axiom::disjoint(class("A"), class("B"));
        let assertion = Axiom::class_assertion(class("A"), Individual::new("a"));
        assert_eq!(canonical_compare(&sub, &disj), Ordering::Less);
        assert_eq!(canonical_compare(&disj, &assertion), Ordering::Less);
        assert_eq!(canonical_compare(&assertion, &sub), Ordering::Greater);
    }

    #[test]
    fn datatype_labels() {
        assert_eq!(Datatype::from_label("dateTime"), Some(Datatype::Xsd(XsdDatatype::DateTime)));
        let iri = Datatype::from_label("<http://ex.org/t>").unwrap();
        assert_eq!(iri, Datatype::Iri("http://ex.org/t".into()));
        assert_eq!(iri.label(), "<http://ex.org/t>");
        assert_eq!(Datatype::from_label("int"), None);
    }

    #[test]
    fn depth_of_generator_shapes() {
        let r = ObjectProperty::new("R");
        let ex = ClassExpression::some(ObjectPropertyExpression::Inverse(r), class("A").into());
        assert_eq!(ex.depth(), 1);
        assert_eq!(ClassExpression::Thing.depth(), 0);
    }

    #[test]
    fn signature_collects_entities() {
        let ax = Axiom::subclass(
            class("A"),
            ClassExpression::DataMaxCardinality(
                1,
                DataProperty::new("q"),
                DataRange::OneOf(Literal::new("x", Datatype::Iri("http://t".into()))),
            ),
        );
        let mut out = Vec::new();
        signature(&ax, &mut out);
        assert_eq!(
            out,
            vec![
                Entity::new(EntityKind::Class, "A"),
                Entity::new(EntityKind::DataProperty, "q"),
                Entity::new(EntityKind::Datatype, "<http://t>"),
            ]
        );
    }
}
