//! RDF terms, triples and indexed graphs.

mod graph;
mod iso;
pub mod ns;
pub(crate) mod term;

pub use graph::{Graph, merge_graphs};
pub use iso::{canonical_blank_order, find_blank_bijection, is_isomorphic};
pub use term::{BlankNode, Iri, Literal, Term, TermError, Triple};

/// Parses `text` as an absolute IRI term.
pub fn make_iri(text: &str) -> Result<Term, TermError> {
    Term::iri(text)
}
