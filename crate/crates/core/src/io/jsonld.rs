//! Flattened JSON-LD output.

use std::collections::BTreeSet;

use serde_json::{Map, Value, json};

use super::chars::is_plain_local_name;
use super::format::PrefixMap;
use super::order::CanonicalLabels;
use crate::rdf::ns::{rdf, xsd};
use crate::rdf::{Graph, Term};

/// Writes `graph` as a flattened JSON-LD document: one `@graph` entry per
/// subject and a `@context` holding the prefix bindings.
pub fn write_jsonld(graph: &Graph, prefixes: &PrefixMap) -> String {
    let labels = CanonicalLabels::new(graph);
    let context = JsonLdContext::new(graph, prefixes);

    let mut subjects: Vec<&Term> = graph.subject_terms().into_iter().collect();
    subjects.sort_by_key(|s| labels.key(s));

    let mut nodes = Vec::with_capacity(subjects.len());
    for subject in subjects {
        let mut node = Map::new();
        node.insert("@id".into(), Value::String(context.node_id(subject, &labels)));
        let mut types = Vec::new();
        let mut triples: Vec<_> = graph.outgoing(subject).collect();
        triples.sort_by_key(|t| (t.predicate().as_str(), labels.key(t.object())));
        for t in triples {
            if t.predicate().as_str() == rdf::TYPE
                && let Term::Iri(class) = t.object()
            {
                types.push(Value::String(context.compact(class.as_str())));
                continue;
            }
            let key = if t.predicate().as_str() == rdf::TYPE {
                rdf::TYPE.to_owned()
            } else {
                context.compact(t.predicate().as_str())
            };
            let value = context.value(t.object(), &labels);
            match node.entry(key).or_insert_with(|| Value::Array(Vec::new())) {
                Value::Array(values) => values.push(value),
                _ => unreachable!("property values are always arrays"),
            }
        }
        if !types.is_empty() {
            node.insert("@type".into(), Value::Array(types));
        }
        nodes.push(Value::Object(node));
    }

    let mut doc = Map::new();
    if !context.bindings.is_empty() {
        doc.insert("@context".into(), Value::Object(context.bindings.clone()));
    }
    doc.insert("@graph".into(), Value::Array(nodes));
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
    text.push('\n');
    text
}

struct JsonLdContext<'p> {
    prefixes: &'p PrefixMap,
    bindings: Map<String, Value>,
    usable: BTreeSet<&'p str>,
}

impl<'p> JsonLdContext<'p> {
    fn new(graph: &Graph, prefixes: &'p PrefixMap) -> Self {
        // A prefix named like a URI scheme would hijack absolute IRIs.
        let schemes: BTreeSet<String> = graph
            .iter()
            .flat_map(|t| [t.subject(), t.object()].into_iter().filter_map(Term::as_iri).chain([t.predicate()]))
            .filter_map(|iri| iri.as_str().split(':').next().map(str::to_owned))
            .collect();
        let usable: BTreeSet<&str> = prefixes
            .iter()
            .map(|(label, _)| label)
            .filter(|label| !label.is_empty() && !schemes.contains(*label))
            .collect();
        let bindings = prefixes
            .iter()
            .filter(|(label, _)| usable.contains(label))
            .map(|(label, ns)| (label.to_owned(), Value::String(ns.as_str().to_owned())))
            .collect();
        JsonLdContext {
            prefixes,
            bindings,
            usable,
        }
    }

    fn compact(&self, iri: &str) -> String {
        let best = self
            .prefixes
            .iter()
            .filter(|(label, ns)| self.usable.contains(label) && iri.starts_with(ns.as_str()))
            .max_by_key(|(label, ns)| (ns.as_str().len(), std::cmp::Reverse(*label)));
        match best {
            Some((label, ns)) => {
                let local = &iri[ns.as_str().len()..];
                if is_plain_local_name(local) && !local.is_empty() {
                    format!("{label}:{local}")
                } else {
                    iri.to_owned()
                }
            }
            None => iri.to_owned(),
        }
    }

    fn node_id(&self, term: &Term, labels: &CanonicalLabels<'_>) -> String {
        match term {
            Term::Iri(iri) => self.compact(iri.as_str()),
            Term::Blank(b) => format!("_:{}", labels.label(b)),
            Term::Literal(_) => unreachable!("literals never identify nodes"),
        }
    }

    fn value(&self, term: &Term, labels: &CanonicalLabels<'_>) -> Value {
        match term {
            Term::Literal(l) => match l.language() {
                Some(lang) => json!({ "@value": l.lexical(), "@language": lang }),
                None if l.datatype().as_str() == xsd::STRING => json!({ "@value": l.lexical() }),
                None => json!({ "@value": l.lexical(), "@type": self.compact(l.datatype().as_str()) }),
            },
            other => json!({ "@id": self.node_id(other, labels) }),
        }
    }
}
