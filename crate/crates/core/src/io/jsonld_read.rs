use std::collections::HashMap;

use oxjsonld::JsonLdParser;

use super::IoError;
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};

/// Reads a JSON-LD document into one graph; named graphs are merged into it.
/// Remote contexts are not fetched.
pub fn parse_jsonld(text: &str, base: Option<&Iri>) -> Result<Graph, IoError> {
    let mut parser = JsonLdParser::new();
    if let Some(base) = base {
        parser = parser.with_base_iri(base.as_str()).map_err(|e| IoError::JsonLd(e.to_string()))?;
    }
    let mut blanks: HashMap<String, BlankNode> = HashMap::new();
    let mut blank = |b: &oxrdf::BlankNode| -> BlankNode {
        let next = blanks.len();
        blanks
            .entry(b.as_str().to_owned())
            .or_insert_with(|| BlankNode::new(format!("j{next}")).expect("generated label"))
            .clone()
    };
    let mut graph = Graph::new();
    for quad in parser.for_slice(text.as_bytes()) {
        let quad = quad.map_err(|e| IoError::JsonLd(e.to_string()))?;
        let subject = match &quad.subject {
            oxrdf::NamedOrBlankNode::NamedNode(n) => Term::Iri(iri(n)?),
            oxrdf::NamedOrBlankNode::BlankNode(b) => Term::Blank(blank(b)),
        };
        let object = match &quad.object {
            oxrdf::Term::NamedNode(n) => Term::Iri(iri(n)?),
            oxrdf::Term::BlankNode(b) => Term::Blank(blank(b)),
            oxrdf::Term::Literal(l) => Term::Literal(match l.language() {
                Some(lang) => Literal::lang_string(l.value(), lang).map_err(|e| IoError::JsonLd(e.to_string()))?,
                None => Literal::typed(l.value(), Iri::new(l.datatype().as_str()).map_err(|e| IoError::JsonLd(e.to_string()))?),
            }),
        };
        let triple = Triple::new(subject, iri(&quad.predicate)?, object).map_err(|e| IoError::JsonLd(e.to_string()))?;
        graph.insert(triple);
    }
    Ok(graph)
}

fn iri(n: &oxrdf::NamedNode) -> Result<Iri, IoError> {
    Iri::new(n.as_str()).map_err(|e| IoError::JsonLd(e.to_string()))
}
