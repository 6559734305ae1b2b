use std::collections::BTreeSet;
use std::fmt;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::rdf::ns::sh;
use crate::rdf::{Iri, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Info,
    Warning,
    Violation,
}

impl Severity {
    pub fn iri(self) -> Iri {
        Iri::from_static(match self {
            Severity::Info => sh::INFO,
            Severity::Warning => sh::WARNING,
            Severity::Violation => sh::VIOLATION,
        })
    }

    pub fn from_iri(iri: &Iri) -> Option<Self> {
        match iri.as_str() {
            sh::INFO => Some(Severity::Info),
            sh::WARNING => Some(Severity::Warning),
            sh::VIOLATION => Some(Severity::Violation),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "Info",
            Severity::Warning => "Warning",
            Severity::Violation => "Violation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Iri,
    BlankNode,
    Literal,
    BlankNodeOrIri,
    BlankNodeOrLiteral,
    IriOrLiteral,
}

impl NodeKind {
    pub fn from_iri(iri: &Iri) -> Option<Self> {
        Some(match iri.as_str() {
            sh::IRI => NodeKind::Iri,
            sh::BLANK_NODE => NodeKind::BlankNode,
            sh::LITERAL => NodeKind::Literal,
            sh::BLANK_NODE_OR_IRI => NodeKind::BlankNodeOrIri,
            sh::BLANK_NODE_OR_LITERAL => NodeKind::BlankNodeOrLiteral,
            sh::IRI_OR_LITERAL => NodeKind::IriOrLiteral,
            _ => return None,
        })
    }

    pub fn iri(self) -> Iri {
        Iri::from_static(match self {
            NodeKind::Iri => sh::IRI,
            NodeKind::BlankNode => sh::BLANK_NODE,
            NodeKind::Literal => sh::LITERAL,
            NodeKind::BlankNodeOrIri => sh::BLANK_NODE_OR_IRI,
            NodeKind::BlankNodeOrLiteral => sh::BLANK_NODE_OR_LITERAL,
            NodeKind::IriOrLiteral => sh::IRI_OR_LITERAL,
        })
    }

    pub fn admits(self, term: &Term) -> bool {
        matches!(
            (self, term),
            (NodeKind::Iri | NodeKind::BlankNodeOrIri | NodeKind::IriOrLiteral, Term::Iri(_))
                | (NodeKind::BlankNode | NodeKind::BlankNodeOrIri | NodeKind::BlankNodeOrLiteral, Term::Blank(_))
                | (NodeKind::Literal | NodeKind::BlankNodeOrLiteral | NodeKind::IriOrLiteral, Term::Literal(_))
        )
    }
}

/// A compiled `sh:pattern` with its `sh:flags`.
#[derive(Debug, Clone)]
pub struct Pattern {
    source: String,
    flags: Option<String>,
    regex: Regex,
}

impl Pattern {
    /// Supported flags are `i`, `m`, `s` and `x`.
    pub fn new(source: impl Into<String>, flags: Option<String>) -> Result<Self, String> {
        let source = source.into();
        let mut inline = String::new();
        if let Some(flags) = &flags {
            for c in flags.chars() {
                match c {
                    'i' | 'm' | 's' | 'x' => inline.push(c),
                    'q' => return Err("flag 'q' is not supported".into()),
                    other => return Err(format!("unknown regex flag '{other}'")),
                }
            }
        }
        let full = if inline.is_empty() {
            source.clone()
        } else {
            format!("(?{inline}){source}")
        };
        let regex = Regex::new(&full).map_err(|e| e.to_string())?;
        Ok(Pattern { source, flags, regex })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn flags(&self) -> Option<&str> {
        self.flags.as_deref()
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.regex.is_match(text)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.flags == other.flags
    }
}

impl Eq for Pattern {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyShape {
    pub id: Term,
    pub path: Iri,
    pub min_count: Option<u64>,
    pub max_count: Option<u64>,
    pub node_kind: Option<NodeKind>,
    pub datatype: Option<Iri>,
    pub class: Option<Iri>,
    pub allowed_values: Option<Vec<Term>>,
    pub has_value: Option<Term>,
    pub required_scheme: Option<Iri>,
    pub pattern: Option<Pattern>,
    pub severity: Severity,
    pub message: Option<String>,
    pub deactivated: bool,
}

impl PropertyShape {
    pub fn new(id: Term, path: Iri) -> Self {
        PropertyShape {
            id,
            path,
            min_count: None,
            max_count: None,
            node_kind: None,
            datatype: None,
            class: None,
            allowed_values: None,
            has_value: None,
            required_scheme: None,
            pattern: None,
            severity: Severity::Violation,
            message: None,
            deactivated: false,
        }
    }

    /// Number of constraint parameters set on this shape.
    pub fn constraint_count(&self) -> usize {
        [
            self.min_count.is_some(),
            self.max_count.is_some(),
            self.node_kind.is_some(),
            self.datatype.is_some(),
            self.class.is_some(),
            self.allowed_values.is_some(),
            self.has_value.is_some(),
            self.required_scheme.is_some(),
            self.pattern.is_some(),
        ]
        .iter()
        .filter(|set| **set)
        .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeShape {
    pub id: Term,
    pub target_classes: BTreeSet<Iri>,
    pub properties: Vec<PropertyShape>,
    pub closed: bool,
    pub deactivated: bool,
}

impl NodeShape {
    pub fn new(id: Term) -> Self {
        NodeShape {
            id,
            target_classes: BTreeSet::new(),
            properties: Vec::new(),
            closed: false,
            deactivated: false,
        }
    }
}

/// Shapes extracted from a shapes graph, with the subclass axioms found
/// alongside them and any load warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapeSet {
    pub shapes: Vec<NodeShape>,
    pub subclass_of: BTreeSet<(Iri, Iri)>,
    pub warnings: Vec<String>,
}

impl ShapeSet {
    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn shape(&self, id: &Term) -> Option<&NodeShape> {
        self.shapes.iter().find(|s| &s.id == id)
    }

    pub fn targeting<'a>(&'a self, class: &'a Iri) -> impl Iterator<Item = &'a NodeShape> {
        self.shapes.iter().filter(move |s| s.target_classes.contains(class))
    }
}
