//! The total term order used by every serializer: IRIs lexicographically,
//! then blank nodes by canonical position, then literals.

use std::collections::HashMap;

use crate::rdf::{BlankNode, Graph, Literal, Term, Triple, canonical_blank_order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum TermKey<'a> {
    Iri(&'a str),
    Blank(usize),
    Literal(&'a str, &'a str, Option<&'a str>),
}

pub(crate) struct CanonicalLabels<'g> {
    index: HashMap<&'g BlankNode, usize>,
}

impl<'g> CanonicalLabels<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let order = canonical_blank_order(graph);
        let all = graph.blank_nodes();
        let index = order
            .iter()
            .enumerate()
            .map(|(i, b)| (*all.get(b).expect("ordered node belongs to graph"), i))
            .collect();
        CanonicalLabels { index }
    }

    pub fn position(&self, blank: &BlankNode) -> usize {
        self.index[blank]
    }

    pub fn label(&self, blank: &BlankNode) -> String {
        format!("b{}", self.position(blank))
    }

    pub fn key<'t>(&self, term: &'t Term) -> TermKey<'t> {
        match term {
            Term::Iri(iri) => TermKey::Iri(iri.as_str()),
            Term::Blank(b) => TermKey::Blank(self.position(b)),
            Term::Literal(l) => literal_key(l),
        }
    }

    pub fn sorted<'t>(&self, graph: &'t Graph) -> Vec<&'t Triple> {
        let mut triples: Vec<&Triple> = graph.iter().collect();
        triples.sort_by(|a, b| {
            (self.key(a.subject()), a.predicate().as_str(), self.key(a.object())).cmp(&(
                self.key(b.subject()),
                b.predicate().as_str(),
                self.key(b.object()),
            ))
        });
        triples
    }
}

fn literal_key(l: &Literal) -> TermKey<'_> {
    TermKey::Literal(l.lexical(), l.datatype().as_str(), l.language())
}
