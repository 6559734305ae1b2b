//! Parsing and serialization of RDF graphs.

mod chars;
mod cursor;
pub(crate) mod escape;
mod format;
mod jsonld;
mod jsonld_read;
mod list;
mod ntriples;
mod order;
mod turtle;
mod writer;

use thiserror::Error;

pub use format::{PrefixMap, SerializationFormat};
pub use jsonld::write_jsonld;
pub use jsonld_read::parse_jsonld;
pub use list::read_rdf_list;
pub use ntriples::{parse_ntriples, write_ntriples};
pub use turtle::parse_turtle;
pub use writer::write_turtle;

use crate::rdf::{Graph, Iri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },
    #[error("unknown prefix '{prefix}:' at line {line}, column {column}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
        offset: usize,
    },
    #[error("malformed IRI <{iri}> at line {line}, column {column}: {reason}")]
    MalformedIri {
        iri: String,
        reason: String,
        line: usize,
        column: usize,
        offset: usize,
    },
}

impl ParseError {
    /// One-based line and column.
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownPrefix { line, column, .. }
            | ParseError::MalformedIri { line, column, .. } => (*line, *column),
        }
    }

    /// Byte offset into the input.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownPrefix { offset, .. }
            | ParseError::MalformedIri { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("invalid prefix label: {0}")]
    InvalidPrefix(String),
    #[error("malformed RDF list: {0}")]
    MalformedList(String),
    #[error("JSON-LD: {0}")]
    JsonLd(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Serializes `graph` in `format`.
pub fn serialize(graph: &Graph, format: SerializationFormat, prefixes: &PrefixMap) -> String {
    match format {
        SerializationFormat::Turtle => write_turtle(graph, prefixes),
        SerializationFormat::NTriples => write_ntriples(graph),
        SerializationFormat::JsonLd => write_jsonld(graph, prefixes),
    }
}

/// Parses `text` in `format`. JSON-LD documents yield no prefixes.
pub fn parse(text: &str, format: SerializationFormat, base: Option<&Iri>) -> Result<(Graph, PrefixMap), IoError> {
    match format {
        SerializationFormat::Turtle => Ok(parse_turtle(text, base)?),
        SerializationFormat::NTriples => Ok((parse_ntriples(text)?, PrefixMap::new())),
        SerializationFormat::JsonLd => Ok((parse_jsonld(text, base)?, PrefixMap::new())),
    }
}
