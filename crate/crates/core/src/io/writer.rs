//! Turtle serialization.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::chars::is_plain_local_name;
use super::format::PrefixMap;
use super::order::CanonicalLabels;
use crate::rdf::ns::{rdf, xsd};
use crate::rdf::{BlankNode, Graph, Term, Triple};

/// Writes `graph` as Turtle.
///
/// Subjects appear in canonical term order with their predicates and objects
/// sorted. A blank node referenced by exactly one triple is written inline as
/// `[ ... ]`; all other blank nodes get canonical `_:bN` labels.
pub fn write_turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let labels = CanonicalLabels::new(graph);
    let writer = TurtleWriter {
        graph,
        prefixes,
        inline: inline_blank_nodes(graph, &labels),
        labels,
    };
    writer.write()
}

struct TurtleWriter<'g> {
    graph: &'g Graph,
    prefixes: &'g PrefixMap,
    labels: CanonicalLabels<'g>,
    inline: BTreeSet<&'g BlankNode>,
}

impl<'g> TurtleWriter<'g> {
    fn write(&self) -> String {
        let mut out = String::new();
        if let Some(base) = self.prefixes.base() {
            out.push_str(&format!("@base <{base}> .\n"));
        }
        for (label, ns) in self.prefixes.iter() {
            out.push_str(&format!("@prefix {label}: <{ns}> .\n"));
        }
        let mut roots: Vec<&Term> = self
            .graph
            .subject_terms()
            .into_iter()
            .filter(|s| s.as_blank().is_none_or(|b| !self.inline.contains(b)))
            .collect();
        roots.sort_by_key(|s| self.labels.key(s));
        for subject in roots {
            if !out.is_empty() {
                out.push('\n');
            }
            self.write_term(&mut out, subject);
            out.push(' ');
            self.write_predicate_objects(&mut out, subject, " ;\n    ");
            out.push_str(" .\n");
        }
        out
    }

    fn grouped(&self, subject: &Term) -> BTreeMap<&'g str, Vec<&'g Term>> {
        let mut groups: BTreeMap<&str, Vec<&Term>> = BTreeMap::new();
        for t in self.graph.outgoing(subject) {
            groups.entry(t.predicate().as_str()).or_default().push(t.object());
        }
        for objects in groups.values_mut() {
            objects.sort_by_key(|o| self.labels.key(o));
        }
        groups
    }

    fn write_predicate_objects(&self, out: &mut String, subject: &Term, separator: &str) {
        let groups = self.grouped(subject);
        for (i, (predicate, objects)) in groups.iter().enumerate() {
            if i > 0 {
                out.push_str(separator);
            }
            if *predicate == rdf::TYPE {
                out.push('a');
            } else {
                self.write_iri(out, predicate);
            }
            out.push(' ');
            for (j, object) in objects.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                self.write_object(out, object);
            }
        }
    }

    fn write_object(&self, out: &mut String, object: &Term) {
        match object {
            Term::Blank(b) if self.inline.contains(b) => {
                let has_properties = self.graph.outgoing(object).next().is_some();
                if has_properties {
                    out.push_str("[ ");
                    self.write_predicate_objects(out, object, " ; ");
                    out.push_str(" ]");
                } else {
                    out.push_str("[]");
                }
            }
            other => self.write_term(out, other),
        }
    }

    fn write_term(&self, out: &mut String, term: &Term) {
        match term {
            Term::Iri(iri) => self.write_iri(out, iri.as_str()),
            Term::Blank(b) => {
                out.push_str("_:");
                out.push_str(&self.labels.label(b));
            }
            Term::Literal(l) => {
                out.push('"');
                out.push_str(&super::escape::escape_string(l.lexical()));
                out.push('"');
                if let Some(lang) = l.language() {
                    out.push('@');
                    out.push_str(lang);
                } else if l.datatype().as_str() != xsd::STRING {
                    out.push_str("^^");
                    self.write_iri(out, l.datatype().as_str());
                }
            }
        }
    }

    fn write_iri(&self, out: &mut String, iri: &str) {
        match self.prefixes.longest_match(iri) {
            Some((label, local)) if is_plain_local_name(local) => {
                out.push_str(label);
                out.push(':');
                out.push_str(local);
            }
            _ => {
                out.push('<');
                out.push_str(iri);
                out.push('>');
            }
        }
    }
}

/// Blank nodes that can be nested inside their single referencing triple.
///
/// Nodes referenced once are candidates. Candidates only reachable from other
/// candidates (a cycle of singly-referenced nodes) would never be printed, so
/// the smallest unreached one is demoted to a labelled node until everything
/// is reachable from a printed subject.
fn inline_blank_nodes<'g>(graph: &'g Graph, labels: &CanonicalLabels<'g>) -> BTreeSet<&'g BlankNode> {
    let mut incoming: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
    for t in graph.iter() {
        if let Term::Blank(b) = t.object() {
            incoming.entry(b).or_default().push(t);
        }
    }
    let mut inline: BTreeSet<&BlankNode> = incoming
        .iter()
        .filter(|(b, refs)| refs.len() == 1 && refs[0].subject().as_blank() != Some(**b))
        .map(|(b, _)| *b)
        .collect();
    loop {
        let mut reached: BTreeSet<&BlankNode> = BTreeSet::new();
        let mut stack: Vec<&Term> = graph
            .subject_terms()
            .into_iter()
            .filter(|s| s.as_blank().is_none_or(|b| !inline.contains(b)))
            .collect();
        while let Some(node) = stack.pop() {
            for t in graph.outgoing(node) {
                if let Term::Blank(b) = t.object()
                    && inline.contains(b)
                    && reached.insert(b)
                {
                    stack.push(t.object());
                }
            }
        }
        let unreached = inline
            .iter()
            .filter(|b| !reached.contains(*b))
            .min_by_key(|b| labels.position(b));
        match unreached {
            Some(&b) => {
                inline.remove(b);
            }
            None => return inline,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_turtle;
    use crate::rdf::{Iri, Literal, is_isomorphic};

    fn prefixes() -> PrefixMap {
        let mut p = PrefixMap::new();
        p.insert("ex", Iri::from_static("http://ex.org/")).unwrap();
        p
    }

    fn round_trip(text: &str) -> (Graph, String) {
        let (g, _) = parse_turtle(text, None).unwrap();
        let out = write_turtle(&g, &prefixes());
        let (back, _) = parse_turtle(&out, None).unwrap_or_else(|e| panic!("{e}\n{out}"));
        assert!(is_isomorphic(&g, &back), "{out}");
        (g, out)
    }

    #[test]
    fn empty_graph_has_only_prefixes() {
        assert_eq!(write_turtle(&Graph::new(), &prefixes()), "@prefix ex: <http://ex.org/> .\n");
        assert_eq!(write_turtle(&Graph::new(), &PrefixMap::new()), "");
    }

    #[test]
    fn groups_predicates_and_objects() {
        let (_, out) = round_trip(
            "@prefix ex: <http://ex.org/> . ex:s ex:q \"b\", \"a\"; a ex:C . ex:r ex:p ex:s .",
        );
        assert_eq!(
            out,
            "@prefix ex: <http://ex.org/> .\n\nex:r ex:p ex:s .\n\nex:s ex:q \"a\", \"b\" ;\n    a ex:C .\n"
        );
    }

    #[test]
    fn single_reference_blank_nodes_inline() {
        let (_, out) = round_trip("@prefix ex: <http://ex.org/> . ex:s ex:p [ ex:q [ ex:r 1 ] ; ex:t [] ] .");
        assert!(out.contains("[ ex:q [ ex:r 1 ] ; ex:t [] ]") || out.contains("[ ex:q [ ex:r \"1\""), "{out}");
        assert!(!out.contains("_:"));
    }

    #[test]
    fn shared_and_cyclic_blank_nodes_are_labelled() {
        round_trip("@prefix ex: <http://ex.org/> . ex:a ex:p _:x . ex:b ex:p _:x . _:x ex:q 1 .");
        let (_, out) = round_trip("@prefix ex: <http://ex.org/> . _:a ex:p _:b . _:b ex:p _:a .");
        assert!(out.contains("_:b0"), "{out}");
        round_trip("@prefix ex: <http://ex.org/> . _:a ex:p _:a .");
    }

    #[test]
    fn unsafe_local_names_use_full_iris() {
        let mut g = Graph::new();
        g.add(
            Iri::from_static("http://ex.org/a/b"),
            Iri::from_static("http://ex.org/p."),
            Literal::typed("x", Iri::from_static("http://ex.org/%20")),
        );
        let out = write_turtle(&g, &prefixes());
        assert!(out.contains("<http://ex.org/a/b> <http://ex.org/p.> \"x\"^^<http://ex.org/%20>"), "{out}");
    }

    #[test]
    fn output_is_deterministic() {
        let (g, out) = round_trip("@prefix ex: <http://ex.org/> . _:z ex:p _:y . _:y ex:p _:z . _:q ex:p \"x\"@en .");
        assert_eq!(write_turtle(&g, &prefixes()), out);
    }
}
