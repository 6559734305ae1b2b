use std::fmt::Write;

use crate::io::PrefixMap;
use crate::rdf::{Graph, Term};

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

fn cell(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => {
            let shown = prefixes
                .iter()
                .filter_map(|(label, ns)| iri.as_str().strip_prefix(ns.as_str()).map(|local| format!("{label}:{local}")))
                .min_by_key(String::len)
                .unwrap_or_else(|| iri.to_string());
            format!("<a href=\"{}\">{}</a>", escape(iri.as_str()), escape(&shown))
        }
        Term::Blank(b) => format!("_:{}", escape(b.label())),
        Term::Literal(l) => match l.language() {
            Some(lang) => format!("{} <small>@{}</small>", escape(l.lexical()), escape(lang)),
            None => escape(l.lexical()),
        },
    }
}

/// A minimal page listing the graph's triples.
pub fn render_html(graph: &Graph, title: &str, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    writeln!(out, "<!DOCTYPE html>\n<html lang=\"en\">\n<head><meta charset=\"utf-8\"><title>{0}</title></head>\n<body>\n<h1>{0}</h1>", escape(title)).unwrap();
    out.push_str("<table>\n<tr><th>Subject</th><th>Predicate</th><th>Object</th></tr>\n");
    for t in graph.iter() {
        writeln!(
            out,
            "<tr><td>{}</td><td>{}</td><td>{}</td></tr>",
            cell(t.subject(), prefixes),
            cell(&Term::Iri(t.predicate().clone()), prefixes),
            cell(t.object(), prefixes)
        )
        .unwrap();
    }
    out.push_str("</table>\n</body>\n</html>\n");
    out
}
