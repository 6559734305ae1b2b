//! SHACL subset: shape loading with import resolution, validation and reports.

mod bundled;
mod datatypes;
mod load;
mod model;
mod report;
mod validate;
mod write;

use thiserror::Error;

pub use bundled::{BASE_SHAPES_IRI, BundledShapes, MOBILITY_SHAPES_IRI, base_shapes_graph, mobility_shapes, mobility_shapes_graph};
pub use load::{ImportResolver, NoImports, load_shapes, resolve_imports, shapes_from_graph};
pub use model::{NodeKind, NodeShape, Pattern, PropertyShape, Severity, ShapeSet};
pub use report::report_to_graph;
pub use write::shapes_to_graph;
pub use validate::{ConceptLookup, GraphConcepts, ValidationReport, ValidationResult, validate, validate_with};

use crate::rdf::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShaclError {
    #[error("cannot resolve import <{0}>")]
    UnresolvableImport(Iri),
    #[error("malformed shape {shape}: {reason}")]
    MalformedShape { shape: String, reason: String },
}
