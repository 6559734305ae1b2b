//! SKOS controlled vocabularies and their tabular source format.

mod model;
mod registry;
mod table;

use thiserror::Error;

use crate::rdf::Iri;

pub use model::{Concept, ConceptScheme};
pub use registry::{Vocabularies, load_bundled_vocabularies, slug};
pub use table::{scheme_to_graph, scheme_to_table, tabular_to_scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("concept <{0}> appears twice")]
    DuplicateConceptIri(Iri),
    #[error("concept <{concept}> has broader <{broader}>, which is not in the scheme")]
    DanglingBroader { concept: Iri, broader: Iri },
    #[error("concept <{0}> has no preferred label")]
    MissingLabel(Iri),
    #[error("broader cycle through {}", .0.iter().map(|i| format!("<{i}>")).collect::<Vec<_>>().join(" -> "))]
    BroaderCycle(Vec<Iri>),
    #[error("table line {line}: {message}")]
    TableSyntax { line: u64, message: String },
    #[error("unknown concept <{0}>")]
    UnknownConcept(Iri),
    #[error("bundled vocabulary '{name}' is corrupt: {reason}")]
    BundleCorrupt { name: String, reason: String },
}
