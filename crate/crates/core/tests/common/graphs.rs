//! Random graphs and brute-force oracles.

use std::collections::BTreeSet;

use rand::prelude::*;

use mdcat_core::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};

const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

fn iri(s: impl Into<String>) -> Iri {
    Iri::new(s).unwrap()
}

/// IRIs chosen to hit prefixed names, unsafe local names and bare IRIs.
fn random_iri(rng: &mut StdRng) -> Iri {
    const LOCALS: [&str; 12] = ["a", "Dataset", "x-1", "a.b", "1abc", "end.", "", "ü", "with%20space", "q_z", "t~", "p(1)"];
    const NAMESPACES: [&str; 5] = [
        "http://www.w3.org/ns/dcat#",
        "http://purl.org/dc/terms/",
        "https://w3id.org/mobilitydcat-ap#",
        "https://ex.org/ns/",
        "urn:x-test:",
    ];
    iri(format!("{}{}", NAMESPACES.choose(rng).unwrap(), LOCALS.choose(rng).unwrap()))
}

fn random_literal(rng: &mut StdRng) -> Literal {
    const TEXT: [&str; 10] = ["", "plain", "quote \" inside", "line\nbreak", "tab\there", "back\\slash", "'''", "\"\"\"", "Straße", "emoji 🚲"];
    match rng.random_range(0..6) {
        0 | 1 => Literal::string(*TEXT.choose(rng).unwrap()),
        2 => Literal::lang_string(*TEXT.choose(rng).unwrap(), *["en", "de-AT", "fr"].choose(rng).unwrap()).unwrap(),
        3 => {
            let (lex, dt) = *[("42", "integer"), ("-7", "integer"), ("01", "integer"), ("1.50", "decimal"), ("true", "boolean"), ("1e3", "double")]
                .choose(rng)
                .unwrap();
            Literal::typed(lex, iri(format!("{XSD}{dt}")))
        }
        4 => Literal::typed("2024-05-01", iri(format!("{XSD}date"))),
        _ => Literal::typed(*TEXT.choose(rng).unwrap(), iri("https://ex.org/dt")),
    }
}

/// A graph with at most `max_triples` triples over at most `max_blanks` blank nodes.
pub fn random_graph(rng: &mut StdRng, max_triples: usize, max_blanks: usize) -> Graph {
    let blanks: Vec<Term> = (0..rng.random_range(0..=max_blanks)).map(|i| Term::blank(format!("b{i}")).unwrap()).collect();
    let subjects: Vec<Term> = (0..4).map(|_| Term::Iri(random_iri(rng))).collect();
    let mut g = Graph::new();
    for _ in 0..rng.random_range(0..=max_triples) {
        let subject = if !blanks.is_empty() && rng.random_bool(0.4) {
            blanks.choose(rng).unwrap().clone()
        } else {
            subjects.choose(rng).unwrap().clone()
        };
        let predicate = if rng.random_bool(0.15) {
            iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        } else {
            random_iri(rng)
        };
        let object = match rng.random_range(0..3) {
            0 if !blanks.is_empty() => blanks.choose(rng).unwrap().clone(),
            0 | 1 => subjects.choose(rng).unwrap().clone(),
            _ => Term::Literal(random_literal(rng)),
        };
        g.add(subject, predicate, object);
    }
    g
}

/// Renames every blank node through `f`.
pub fn relabel(g: &Graph, f: impl Fn(&BlankNode) -> BlankNode) -> Graph {
    let map = |t: &Term| match t {
        Term::Blank(b) => Term::Blank(f(b)),
        other => other.clone(),
    };
    let mut out = Graph::new();
    for t in g.iter() {
        out.insert(Triple::new(map(t.subject()), t.predicate().clone(), map(t.object())).unwrap());
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tries every bijection between the two graphs' blank nodes.
pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    let left: Vec<BlankNode> = a.blank_nodes().into_iter().cloned().collect();
    let right: Vec<BlankNode> = b.blank_nodes().into_iter().cloned().collect();
    if left.len() != right.len() || a.len() != b.len() {
        return false;
    }
    let target: BTreeSet<&Triple> = b.iter().collect();
    permutations(left.len()).into_iter().any(|perm| {
        let mapped = relabel(a, |x| right[perm[left.iter().position(|l| l == x).unwrap()]].clone());
        mapped.iter().all(|t| target.contains(t))
    })
}

/// Converts oxttl's output into the toolkit's graph type.
pub fn from_oxrdf(triples: impl IntoIterator<Item = oxrdf::Triple>) -> Graph {
    let mut g = Graph::new();
    for t in triples {
        let subject = match &t.subject {
            oxrdf::NamedOrBlankNode::NamedNode(n) => Term::Iri(iri(n.as_str())),
            oxrdf::NamedOrBlankNode::BlankNode(b) => Term::blank(format!("o{}", b.as_str())).unwrap(),
        };
        let object = match &t.object {
            oxrdf::Term::NamedNode(n) => Term::Iri(iri(n.as_str())),
            oxrdf::Term::BlankNode(b) => Term::blank(format!("o{}", b.as_str())).unwrap(),
            oxrdf::Term::Literal(l) => Term::Literal(match l.language() {
                Some(lang) => Literal::lang_string(l.value(), lang).unwrap(),
                None => Literal::typed(l.value(), iri(l.datatype().as_str())),
            }),
        };
        g.add(subject, iri(t.predicate.as_str()), object);
    }
    g
}
