use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use super::ns::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("malformed IRI <{iri}>: {reason}")]
    MalformedIri { iri: String, reason: &'static str },
    #[error("malformed language tag {0:?}")]
    MalformedLanguageTag(String),
    #[error("malformed blank node label {0:?}")]
    MalformedBlankNode(String),
    #[error("a literal cannot be used as a triple subject")]
    LiteralSubject,
}

/// An absolute IRI.
///
/// Validation is purely syntactic: a scheme must be present and the text may
/// not contain whitespace, control characters or any of `<>"{}|^`\`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(text: impl Into<String>) -> Result<Self, TermError> {
        let text = text.into();
        match check_iri(&text) {
            Ok(()) => Ok(Iri(text)),
            Err(reason) => Err(TermError::MalformedIri { iri: text, reason }),
        }
    }

    /// Builds an IRI from a compile-time constant. Panics on malformed input,
    /// so only use it for literals in source code.
    pub fn from_static(text: &'static str) -> Self {
        Self::new(text).unwrap_or_else(|e| panic!("invalid static IRI: {e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Splits the IRI after the last `#` or `/`, returning the local part.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/']).map_or(0, |i| i + 1);
        &self.0[cut..]
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Iri::new(text).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<&str> for Iri {
    type Error = TermError;
    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

fn check_iri(text: &str) -> Result<(), &'static str> {
    if text.is_empty() {
        return Err("empty");
    }
    if let Some(c) = text.chars().find(|&c| is_forbidden_iri_char(c)) {
        return Err(if c.is_whitespace() {
            "contains whitespace"
        } else {
            "contains an illegal character"
        });
    }
    let Some(colon) = text.find(':') else {
        return Err("no scheme");
    };
    let scheme = &text[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return Err("no scheme"),
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
        return Err("no scheme");
    }
    Ok(())
}

pub(crate) fn is_forbidden_iri_char(c: char) -> bool {
    c <= ' ' || c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// A blank node, identified by a graph-scoped label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(TermError::MalformedBlankNode(label));
        }
        Ok(BlankNode(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// An RDF literal. Language-tagged literals always carry `rdf:langString`
/// as datatype; every other literal has no language tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    /// An `xsd:string` literal.
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::from_static(xsd::STRING),
            language: None,
        }
    }

    /// A typed literal. Passing `rdf:langString` without a tag is rejected
    /// by routing through [`Literal::lang_string`] instead.
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    /// Language tags are compared case-insensitively, so they are stored lowercased.
    pub fn lang_string(lexical: impl Into<String>, language: impl Into<String>) -> Result<Self, TermError> {
        let language = language.into().to_ascii_lowercase();
        if !is_language_tag(&language) {
            return Err(TermError::MalformedLanguageTag(language));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: Iri::from_static(rdf::LANG_STRING),
            language: Some(language),
        })
    }

    pub fn boolean(value: bool) -> Self {
        Self::typed(value.to_string(), Iri::from_static(xsd::BOOLEAN))
    }

    pub fn integer(value: i64) -> Self {
        Self::typed(value.to_string(), Iri::from_static(xsd::INTEGER))
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_plain_string(&self) -> bool {
        self.language.is_none() && self.datatype.as_str() == xsd::STRING
    }
}

pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let Some(primary) = parts.next() else {
        return false;
    };
    !primary.is_empty()
        && primary.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        f.write_str(&crate::io::escape::escape_string(&self.lexical))?;
        f.write_str("\"")?;
        match &self.language {
            Some(lang) => write!(f, "@{lang}"),
            None if self.datatype.as_str() == xsd::STRING => Ok(()),
            None => write!(f, "^^<{}>", self.datatype),
        }
    }
}

/// Any RDF term. The derived ordering puts IRIs before blank nodes before
/// literals, which is the order serializers rely on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn iri(text: impl Into<String>) -> Result<Self, TermError> {
        Iri::new(text).map(Term::Iri)
    }

    pub fn blank(label: impl Into<String>) -> Result<Self, TermError> {
        BlankNode::new(label).map(Term::Blank)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNode> {
        match self {
            Term::Blank(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(b) => b.fmt(f),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An RDF triple. The subject is never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, TermError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(TermError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }

    pub fn is_ground(&self) -> bool {
        !self.subject.is_blank() && !self.object.is_blank()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.subject, self.predicate, self.object)
    }
}
