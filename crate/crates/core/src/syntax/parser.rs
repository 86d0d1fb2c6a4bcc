//! Parser for the functional-style subset written by [`render_functional`].
//!
//! Anything that is valid OWL 2 but outside the supported fragment is
//! reported as [`SyntaxError::Unsupported`]; nothing is silently dropped.
//! Two normalizations are applied: unqualified max-cardinality restrictions
//! get `owl:Thing` / `rdfs:Literal` fillers, and untyped string literals
//! become `xsd:string`.
//!
//! [`render_functional`]: super::render_functional

use std::collections::HashMap;

use crate::axiom::{
    Axiom, Class, ClassExpression, DataProperty, DataRange, Datatype, Entity, EntityKind,
    Individual, Literal, ObjectProperty, ObjectPropertyExpression, XsdDatatype,
};
use crate::diagram::is_identifier;

use super::{
    datatype_from_iri, Ontology, OntologyId, PrefixEnvironment, SyntaxError, OWL_NS, RDFS_NS,
    RDF_NS, XSD_NS,
};

/// Functional-style keywords that are valid OWL 2 but outside the fragment.
const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "Import",
    "Annotation",
    "AnnotationAssertion",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "AnnotationProperty",
    "EquivalentClasses",
    "DisjointUnion",
    "SubObjectPropertyOf",
    "ObjectPropertyChain",
    "EquivalentObjectProperties",
    "DisjointObjectProperties",
    "InverseObjectProperties",
    "ObjectPropertyDomain",
    "ObjectPropertyRange",
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "TransitiveObjectProperty",
    "SubDataPropertyOf",
    "EquivalentDataProperties",
    "DisjointDataProperties",
    "DataPropertyDomain",
    "DataPropertyRange",
    "FunctionalDataProperty",
    "DatatypeDefinition",
    "HasKey",
    "SameIndividual",
    "DifferentIndividuals",
    "ObjectPropertyAssertion",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "ObjectIntersectionOf",
    "ObjectUnionOf",
    "ObjectComplementOf",
    "ObjectHasValue",
    "ObjectHasSelf",
    "ObjectMinCardinality",
    "ObjectExactCardinality",
    "DataIntersectionOf",
    "DataUnionOf",
    "DataComplementOf",
    "DatatypeRestriction",
    "DataHasValue",
    "DataMinCardinality",
    "DataExactCardinality",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Equals,
    Caret2,
    Iri(String),
    /// `prefix:local`; the prefix may be empty.
    Prefixed(String, String),
    Keyword(String),
    Integer(String),
    Str(String),
    LangTag(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Caret2 => "`^^`".into(),
            Tok::Iri(i) => format!("<{i}>"),
            Tok::Prefixed(p, l) => format!("`{p}:{l}`"),
            Tok::Keyword(k) => format!("`{k}`"),
            Tok::Integer(n) => format!("number {n}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(t) => format!("`@{t}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.i + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        self.i += 1;
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek(0).filter(|&c| pred(c)) {
            out.push(c);
            self.bump();
        }
        out
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn string(&mut self, line: usize, column: usize) -> Result<String, SyntaxError> {
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(line, column, "unterminated string")),
                Some('"') => return Ok(value),
                Some('\\') => match self.bump() {
                    Some(e @ ('"' | '\\')) => value.push(e),
                    _ => return Err(self.error(self.line, self.column, "invalid escape in string")),
                },
                Some(c) => value.push(c),
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<Token>, SyntaxError> {
        loop {
            match self.peek(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    self.take_while(|c| c != '\n');
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.peek(0) else {
            return Ok(None);
        };
        let tok = match c {
            '(' | ')' | '=' => {
                self.bump();
                match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => Tok::Equals,
                }
            }
            '^' => {
                if self.peek(1) != Some('^') {
                    return Err(self.error(line, column, "expected `^^`"));
                }
                self.bump();
                self.bump();
                Tok::Caret2
            }
            '<' => {
                self.bump();
                let iri = self.take_while(|c| c != '>' && c != '\n');
                if self.bump() != Some('>') {
                    return Err(self.error(line, column, "unterminated IRI"));
                }
                if !crate::diagram::is_absolute_iri(&iri) {
                    return Err(self.error(line, column, format!("`<{iri}>` is not an absolute IRI")));
                }
                Tok::Iri(iri)
            }
            '"' => {
                self.bump();
                Tok::Str(self.string(line, column)?)
            }
            '@' => {
                self.bump();
                Tok::LangTag(self.take_while(|c| c.is_ascii_alphanumeric() || c == '-'))
            }
            c if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                if self.peek(0).is_some_and(|c| is_name_char(c) || c == ':') {
                    return Err(self.error(line, column, "malformed number"));
                }
                Tok::Integer(digits)
            }
            c if c == ':' || c == '_' || c.is_ascii_alphabetic() => {
                let word = self.take_while(|c| is_name_char(c) || c == ':');
                match word.split_once(':') {
                    Some((prefix, local)) => Tok::Prefixed(prefix.into(), local.into()),
                    None => Tok::Keyword(word),
                }
            }
            other => return Err(self.error(line, column, format!("unexpected character `{other}`"))),
        };
        Ok(Some(Token { tok, line, column }))
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lexer = Lexer {
        chars: text.chars().collect(),
        i: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    tokens.push(Token {
        tok: Tok::Eof,
        line: lexer.line,
        column: lexer.column,
    });
    Ok(tokens)
}

/// What a full IRI denotes in this fragment.
enum Resolved {
    Local(String),
    Thing,
    TopDatatype,
    Datatype(Datatype),
    Foreign(String),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: HashMap<String, String>,
    base: Option<String>,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            prefixes: HashMap::from([
                ("owl".into(), OWL_NS.into()),
                ("rdfs".into(), RDFS_NS.into()),
                ("rdf".into(), RDF_NS.into()),
                ("xsd".into(), XSD_NS.into()),
            ]),
            base: None,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn unsupported_at(t: &Token, construct: impl Into<String>) -> SyntaxError {
        SyntaxError::Unsupported {
            construct: construct.into(),
            line: Some(t.line),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(Self::error_at(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    /// Closes a constructor; anything but `)` is an arity error.
    fn close(&mut self, construct: &str) -> PResult<()> {
        let t = self.next();
        match &t.tok {
            Tok::Close => Ok(()),
            other => Err(Self::error_at(
                &t,
                format!("too many arguments to {construct}: unexpected {}", other.describe()),
            )),
        }
    }

    fn keyword(&mut self) -> PResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Keyword(k) => Ok((k.clone(), t.clone())),
            other => Err(Self::error_at(&t, format!("expected a keyword, found {}", other.describe()))),
        }
    }

    fn keyword_error(kw: &str, t: &Token) -> SyntaxError {
        if UNSUPPORTED_KEYWORDS.contains(&kw) {
            Self::unsupported_at(t, kw)
        } else {
            Self::error_at(t, format!("unknown construct `{kw}`"))
        }
    }

    fn iri_of(&self, t: &Token) -> PResult<Option<String>> {
        match &t.tok {
            Tok::Iri(iri) => Ok(Some(iri.clone())),
            Tok::Prefixed(p, _) if p == "_" => Err(Self::unsupported_at(t, "anonymous individual")),
            Tok::Prefixed(p, local) if p.is_empty() => match &self.base {
                Some(base) => Ok(Some(format!("{base}{local}"))),
                None => Err(Self::error_at(t, "default prefix `:` is not declared")),
            },
            Tok::Prefixed(p, local) => match self.prefixes.get(p) {
                Some(ns) => Ok(Some(format!("{ns}{local}"))),
                None => Err(Self::error_at(t, format!("undeclared prefix `{p}:`"))),
            },
            _ => Ok(None),
        }
    }

    fn resolve(&self, t: &Token) -> PResult<Option<Resolved>> {
        let Some(iri) = self.iri_of(t)? else {
            return Ok(None);
        };
        if let Some(local) = self.base.as_deref().and_then(|b| iri.strip_prefix(b)) {
            if is_identifier(local) {
                return Ok(Some(Resolved::Local(local.to_owned())));
            }
        }
        Ok(Some(if iri == format!("{OWL_NS}Thing") {
            Resolved::Thing
        } else if iri == format!("{RDFS_NS}Literal") {
            Resolved::TopDatatype
        } else if let Some(x) = iri
            .strip_prefix(XSD_NS)
            .and_then(|l| l.parse::<XsdDatatype>().ok())
        {
            Resolved::Datatype(Datatype::Xsd(x))
        } else {
            Resolved::Foreign(iri)
        }))
    }

    /// A named entity in the default namespace.
    fn local_name(&mut self, what: &str) -> PResult<String> {
        let t = self.next();
        match self.resolve(&t)? {
            Some(Resolved::Local(name)) => Ok(name),
            Some(Resolved::Foreign(iri)) => {
                Err(Self::unsupported_at(&t, format!("{what} IRI <{iri}> outside the ontology namespace")))
            }
            Some(_) => Err(Self::unsupported_at(&t, format!("built-in entity used as {what}"))),
            None => Err(Self::error_at(&t, format!("expected {what}, found {}", t.tok.describe()))),
        }
    }

    fn document(mut self) -> PResult<Ontology> {
        let mut default_base = None;
        while matches!(&self.peek().tok, Tok::Keyword(k) if k == "Prefix") {
            self.next();
            self.expect(Tok::Open)?;
            let t = self.next();
            let Tok::Prefixed(prefix, local) = &t.tok else {
                return Err(Self::error_at(&t, format!("expected prefix name, found {}", t.tok.describe())));
            };
            if !local.is_empty() {
                return Err(Self::error_at(&t, "prefix name must end with `:`"));
            }
            self.expect(Tok::Equals)?;
            let iri_tok = self.next();
            let Tok::Iri(iri) = &iri_tok.tok else {
                return Err(Self::error_at(&iri_tok, "expected namespace IRI"));
            };
            self.close("Prefix")?;
            match self.prefixes.get(prefix.as_str()) {
                _ if prefix.is_empty() => {
                    let env = PrefixEnvironment::new(iri.clone())
                        .map_err(|e| Self::error_at(&iri_tok, e.to_string()))?;
                    self.base = Some(iri.clone());
                    default_base = Some(env);
                }
                Some(ns) if ["owl", "rdfs", "rdf", "xsd"].contains(&prefix.as_str()) => {
                    if ns != iri {
                        return Err(Self::error_at(&iri_tok, format!("prefix `{prefix}:` must be <{ns}>")));
                    }
                }
                _ => {
                    self.prefixes.insert(prefix.clone(), iri.clone());
                }
            }
        }

        let env = default_base.unwrap_or_default();
        if self.base.is_none() {
            self.base = Some(env.base_iri().to_owned());
        }
        let mut ontology = Ontology::new(env);

        let (kw, t) = self.keyword()?;
        if kw != "Ontology" {
            return Err(Self::error_at(&t, format!("expected `Ontology`, found `{kw}`")));
        }
        self.expect(Tok::Open)?;
        if let Tok::Iri(iri) = &self.peek().tok {
            let iri = iri.clone();
            self.next();
            let version = match &self.peek().tok {
                Tok::Iri(v) => {
                    let v = v.clone();
                    self.next();
                    Some(v)
                }
                _ => None,
            };
            ontology.id = Some(OntologyId { iri, version });
        }

        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Close => {
                    self.next();
                    break;
                }
                Tok::Keyword(k) if k == "Declaration" => {
                    self.next();
                    let entity = self.declaration()?;
                    ontology.declare(entity);
                }
                Tok::Keyword(_) => {
                    let axiom = self.axiom()?;
                    ontology.insert(axiom);
                }
                Tok::Eof => return Err(Self::error_at(&t, "missing `)` closing Ontology")),
                other => {
                    return Err(Self::error_at(&t, format!("expected an axiom, found {}", other.describe())))
                }
            }
        }
        let t = self.next();
        if t.tok != Tok::Eof {
            return Err(Self::error_at(&t, format!("unexpected {} after ontology", t.tok.describe())));
        }
        Ok(ontology)
    }

    fn declaration(&mut self) -> PResult<Entity> {
        self.expect(Tok::Open)?;
        let (kw, t) = self.keyword()?;
        self.reject_annotation()?;
        self.expect(Tok::Open)?;
        let entity = match kw.as_str() {
            "Class" => Entity::new(EntityKind::Class, self.local_name("class")?),
            "ObjectProperty" => Entity::new(EntityKind::ObjectProperty, self.local_name("object property")?),
            "DataProperty" => Entity::new(EntityKind::DataProperty, self.local_name("data property")?),
            "NamedIndividual" => Entity::new(EntityKind::NamedIndividual, self.local_name("individual")?),
            "Datatype" => Entity::from(&self.datatype()?),
            "AnnotationProperty" => return Err(Self::unsupported_at(&t, "AnnotationProperty")),
            other => return Err(Self::error_at(&t, format!("unknown entity kind `{other}`"))),
        };
        self.close(&kw)?;
        self.close("Declaration")?;
        Ok(entity)
    }

    fn reject_annotation(&self) -> PResult<()> {
        let t = self.peek();
        if matches!(&t.tok, Tok::Keyword(k) if k == "Annotation") {
            return Err(Self::unsupported_at(t, "Annotation"));
        }
        Ok(())
    }

    fn axiom(&mut self) -> PResult<Axiom> {
        let (kw, t) = self.keyword()?;
        match kw.as_str() {
            "SubClassOf" => {
                self.expect(Tok::Open)?;
                self.reject_annotation()?;
                let sub = self.class_expression()?;
                let sup = self.class_expression()?;
                self.close("SubClassOf")?;
                Ok(Axiom::SubClassOf { sub, sup })
            }
            "DisjointClasses" => {
                self.expect(Tok::Open)?;
                self.reject_annotation()?;
                let a = self.named_class("DisjointClasses")?;
                let b = self.named_class("DisjointClasses")?;
                if self.peek().tok != Tok::Close {
                    return Err(Self::unsupported_at(&t, "DisjointClasses with more than two classes"));
                }
                self.close("DisjointClasses")?;
                Ok(Axiom::disjoint(a, b))
            }
            "ClassAssertion" => {
                self.expect(Tok::Open)?;
                self.reject_annotation()?;
                let class = self.named_class("ClassAssertion")?;
                let individual = Individual::new(self.local_name("individual")?);
                self.close("ClassAssertion")?;
                Ok(Axiom::class_assertion(class, individual))
            }
            other => Err(Self::keyword_error(other, &t)),
        }
    }

    fn named_class(&mut self, construct: &str) -> PResult<Class> {
        let t = self.peek().clone();
        match self.class_expression()? {
            ClassExpression::Class(c) => Ok(c),
            _ => Err(Self::unsupported_at(&t, format!("complex class expression in {construct}"))),
        }
    }

    fn class_expression(&mut self) -> PResult<ClassExpression> {
        let t = self.next();
        match self.resolve(&t)? {
            Some(Resolved::Local(name)) => return Ok(ClassExpression::Class(Class::new(name))),
            Some(Resolved::Thing) => return Ok(ClassExpression::Thing),
            Some(Resolved::Foreign(iri)) if iri == format!("{OWL_NS}Nothing") => {
                return Err(Self::unsupported_at(&t, "owl:Nothing"))
            }
            Some(Resolved::Foreign(iri)) => {
                return Err(Self::unsupported_at(&t, format!("class IRI <{iri}> outside the ontology namespace")))
            }
            Some(_) => return Err(Self::error_at(&t, "datatype used as a class expression")),
            None => {}
        }
        let Tok::Keyword(kw) = &t.tok else {
            return Err(Self::error_at(&t, format!("expected class expression, found {}", t.tok.describe())));
        };
        let kw = kw.clone();
        use ClassExpression as CE;
        let ce = match kw.as_str() {
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                self.expect(Tok::Open)?;
                let p = self.object_property_expression()?;
                let f = Box::new(self.class_expression()?);
                if kw == "ObjectSomeValuesFrom" {
                    CE::ObjectSomeValuesFrom(p, f)
                } else {
                    CE::ObjectAllValuesFrom(p, f)
                }
            }
            "ObjectMaxCardinality" => {
                self.expect(Tok::Open)?;
                let n = self.cardinality()?;
                let p = self.object_property_expression()?;
                let f = if self.peek().tok == Tok::Close {
                    CE::Thing
                } else {
                    self.class_expression()?
                };
                CE::ObjectMaxCardinality(n, p, Box::new(f))
            }
            "ObjectOneOf" => {
                self.expect(Tok::Open)?;
                let i = Individual::new(self.local_name("individual")?);
                if self.peek().tok != Tok::Close {
                    return Err(Self::unsupported_at(&t, "ObjectOneOf with more than one individual"));
                }
                CE::ObjectOneOf(i)
            }
            "DataSomeValuesFrom" | "DataAllValuesFrom" => {
                self.expect(Tok::Open)?;
                let q = DataProperty::new(self.local_name("data property")?);
                let r = self.data_range()?;
                if kw == "DataSomeValuesFrom" {
                    CE::DataSomeValuesFrom(q, r)
                } else {
                    CE::DataAllValuesFrom(q, r)
                }
            }
            "DataMaxCardinality" => {
                self.expect(Tok::Open)?;
                let n = self.cardinality()?;
                let q = DataProperty::new(self.local_name("data property")?);
                let r = if self.peek().tok == Tok::Close {
                    DataRange::Top
                } else {
                    self.data_range()?
                };
                CE::DataMaxCardinality(n, q, r)
            }
            other => return Err(Self::keyword_error(other, &t)),
        };
        self.close(&kw)?;
        Ok(ce)
    }

    fn cardinality(&mut self) -> PResult<u32> {
        let t = self.next();
        match &t.tok {
            Tok::Integer(n) => n
                .parse()
                .map_err(|_| Self::error_at(&t, format!("cardinality {n} is out of range"))),
            other => Err(Self::error_at(&t, format!("expected cardinality, found {}", other.describe()))),
        }
    }

    fn object_property_expression(&mut self) -> PResult<ObjectPropertyExpression> {
        if matches!(&self.peek().tok, Tok::Keyword(k) if k == "ObjectInverseOf") {
            self.next();
            self.expect(Tok::Open)?;
            let p = ObjectProperty::new(self.local_name("object property")?);
            self.close("ObjectInverseOf")?;
            return Ok(ObjectPropertyExpression::Inverse(p));
        }
        Ok(ObjectPropertyExpression::Named(ObjectProperty::new(
            self.local_name("object property")?,
        )))
    }

    fn datatype(&mut self) -> PResult<Datatype> {
        let t = self.next();
        match self.resolve(&t)? {
            Some(Resolved::Datatype(dt)) => Ok(dt),
            Some(Resolved::Foreign(iri)) => Ok(datatype_from_iri(&iri)),
            Some(Resolved::Local(name)) => Ok(Datatype::Iri(format!(
                "{}{name}",
                self.base.as_deref().unwrap_or_default()
            ))),
            Some(Resolved::TopDatatype) => Err(Self::unsupported_at(&t, "rdfs:Literal as a named datatype")),
            Some(Resolved::Thing) => Err(Self::error_at(&t, "owl:Thing is not a datatype")),
            None => Err(Self::error_at(&t, format!("expected datatype, found {}", t.tok.describe()))),
        }
    }

    fn data_range(&mut self) -> PResult<DataRange> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Keyword(k) if k == "DataOneOf" => {
                self.next();
                self.expect(Tok::Open)?;
                let lit = self.literal()?;
                if self.peek().tok != Tok::Close {
                    return Err(Self::unsupported_at(&t, "DataOneOf with more than one literal"));
                }
                self.close("DataOneOf")?;
                Ok(DataRange::OneOf(lit))
            }
            Tok::Keyword(k) => Err(Self::keyword_error(k, &t)),
            _ => {
                if let Some(Resolved::TopDatatype) = self.resolve(&t)? {
                    self.next();
                    return Ok(DataRange::Top);
                }
                Ok(DataRange::Datatype(self.datatype()?))
            }
        }
    }

    fn literal(&mut self) -> PResult<Literal> {
        let t = self.next();
        let Tok::Str(lexical) = t.tok else {
            return Err(Self::error_at(&t, format!("expected literal, found {}", t.tok.describe())));
        };
        match &self.peek().tok {
            Tok::Caret2 => {
                self.next();
                Ok(Literal::new(lexical, self.datatype()?))
            }
            Tok::LangTag(_) => Err(Self::unsupported_at(self.peek(), "language-tagged literal")),
            _ => Ok(Literal::new(lexical, Datatype::Xsd(XsdDatatype::String))),
        }
    }
}

/// Parses a functional-style ontology document.
pub fn parse_functional(doc: &str) -> Result<Ontology, SyntaxError> {
    Parser::new(doc)?.document()
}

/// Parses a single logical axiom, resolving `:` against `env`.
pub fn parse_axiom(text: &str, env: &PrefixEnvironment) -> Result<Axiom, SyntaxError> {
    let mut parser = Parser::new(text)?;
    parser.base = Some(env.base_iri().to_owned());
    let t = parser.peek().clone();
    if matches!(&t.tok, Tok::Keyword(k) if k == "Declaration") {
        return Err(Parser::error_at(&t, "expected a logical axiom, found a declaration"));
    }
    let axiom = parser.axiom()?;
    let end = parser.next();
    if end.tok != Tok::Eof {
        return Err(Parser::error_at(&end, format!("unexpected {} after axiom", end.tok.describe())));
    }
    Ok(axiom)
}
