use std::collections::HashSet;

use super::IoError;
use crate::rdf::ns::rdf;
use crate::rdf::{Graph, Iri, Term};

/// Reads the RDF collection starting at `head` by following `rdf:first` /
/// `rdf:rest` to `rdf:nil`.
pub fn read_rdf_list(graph: &Graph, head: &Term) -> Result<Vec<Term>, IoError> {
    let first = Iri::from_static(rdf::FIRST);
    let rest = Iri::from_static(rdf::REST);
    let nil = Term::Iri(Iri::from_static(rdf::NIL));

    let mut items = Vec::new();
    let mut seen = HashSet::new();
    let mut node = head.clone();
    while node != nil {
        if !seen.insert(node.clone()) {
            return Err(IoError::MalformedList(format!("cycle at {node}")));
        }
        let firsts = graph.objects(&node, &first);
        let rests = graph.objects(&node, &rest);
        match (firsts.as_slice(), rests.as_slice()) {
            ([item], [next]) => {
                items.push((*item).clone());
                node = (*next).clone();
            }
            ([], _) | (_, []) => {
                return Err(IoError::MalformedList(format!("{node} lacks rdf:first or rdf:rest")));
            }
            _ => return Err(IoError::MalformedList(format!("{node} branches"))),
        }
    }
    Ok(items)
}
