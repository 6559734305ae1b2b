//! Publication: content negotiation, versioned specification routes and the
//! request-level operations behind the portal service.

mod conneg;
mod draft;
mod html;
mod versions;

use thiserror::Error;

use crate::io::{PrefixMap, SerializationFormat, parse, serialize};
use crate::rdf::Graph;
use crate::shacl::{ConceptLookup, ShapeSet, ValidationReport, validate_with};

pub use conneg::{AcceptEntry, AcceptPreference, Representation, negotiate};
pub use draft::{StructuredRecord, StructuredResource, StructuredValue, record_to_graph};
pub use html::render_html;
pub use versions::{
    PUBLISHED_VERSIONS, SPEC_IRI, SPEC_PATH, VersionRoute, bundled_version_is_latest, latest_version, resolve_version_route,
    version_graph,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PublishError {
    #[error("no acceptable representation")]
    NotAcceptable,
    #[error("malformed Accept header: {0}")]
    MalformedAcceptHeader(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("unparseable {format:?} document: {message}")]
    ParseFailed { format: SerializationFormat, message: String },
    #[error("invalid record: {0}")]
    InvalidRecord(String),
}

impl PublishError {
    /// The HTTP status this error maps to.
    pub fn status(&self) -> u16 {
        match self {
            PublishError::NotAcceptable => 406,
            PublishError::MalformedAcceptHeader(_) | PublishError::InvalidRecord(_) => 400,
            PublishError::NotFound(_) => 404,
            PublishError::ParseFailed { .. } => 422,
        }
    }
}

/// Parses `body` and validates it against `shapes`.
pub fn validate_document(
    body: &str,
    format: SerializationFormat,
    shapes: &ShapeSet,
    concepts: &dyn ConceptLookup,
) -> Result<ValidationReport, PublishError> {
    let (graph, _) = parse(body, format, None).map_err(|e| PublishError::ParseFailed {
        format,
        message: e.to_string(),
    })?;
    Ok(validate_with(&graph, shapes, concepts))
}

/// Writes `graph` in the chosen representation.
pub fn render(graph: &Graph, representation: Representation, title: &str, prefixes: &PrefixMap) -> String {
    match representation {
        Representation::Rdf(format) => serialize(graph, format, prefixes),
        Representation::Html => render_html(graph, title, prefixes),
    }
}
