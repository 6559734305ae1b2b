//! N-Triples reading and writing.

use std::collections::HashMap;

use super::ParseError;
use super::cursor::Cursor;
use super::order::CanonicalLabels;
use crate::rdf::ns::rdf;
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};

/// Parses an N-Triples document. Duplicate lines collapse into one triple.
pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut cur = Cursor::new(text);
    let mut graph = Graph::new();
    let mut labels: HashMap<String, BlankNode> = HashMap::new();
    loop {
        skip_blanks(&mut cur);
        match cur.peek() {
            None => return Ok(graph),
            Some('\n' | '\r') => {
                cur.bump();
                continue;
            }
            Some('#') => {
                skip_to_eol(&mut cur);
                continue;
            }
            _ => {}
        }
        let subject = match cur.peek() {
            Some('<') => Term::Iri(absolute_iri(&mut cur)?),
            Some('_') => Term::Blank(blank(&mut cur, &mut labels)?),
            _ => return Err(cur.unexpected("subject IRI or blank node")),
        };
        skip_blanks(&mut cur);
        if cur.peek() != Some('<') {
            return Err(cur.unexpected("predicate IRI"));
        }
        let predicate = absolute_iri(&mut cur)?;
        skip_blanks(&mut cur);
        let object = match cur.peek() {
            Some('<') => Term::Iri(absolute_iri(&mut cur)?),
            Some('_') => Term::Blank(blank(&mut cur, &mut labels)?),
            Some('"') => literal(&mut cur)?,
            _ => return Err(cur.unexpected("object")),
        };
        skip_blanks(&mut cur);
        cur.expect('.')?;
        skip_blanks(&mut cur);
        match cur.peek() {
            None | Some('\n' | '\r') => {}
            Some('#') => skip_to_eol(&mut cur),
            _ => return Err(cur.unexpected("end of line")),
        }
        graph.insert(Triple::new(subject, predicate, object).expect("subject is never a literal here"));
    }
}

fn skip_blanks(cur: &mut Cursor) {
    while matches!(cur.peek(), Some(' ' | '\t')) {
        cur.bump();
    }
}

fn skip_to_eol(cur: &mut Cursor) {
    while let Some(c) = cur.peek() {
        if c == '\n' {
            break;
        }
        cur.bump();
    }
}

fn absolute_iri(cur: &mut Cursor) -> Result<Iri, ParseError> {
    let mark = cur.mark();
    let raw = cur.iri_ref()?;
    Iri::new(raw.clone()).map_err(|e| cur.malformed_iri(mark, &raw, e.to_string()))
}

fn blank(cur: &mut Cursor, labels: &mut HashMap<String, BlankNode>) -> Result<BlankNode, ParseError> {
    let label = cur.blank_label()?;
    Ok(labels
        .entry(label.clone())
        .or_insert_with(|| BlankNode::new(label).expect("grammar guarantees a valid label"))
        .clone())
}

fn literal(cur: &mut Cursor) -> Result<Term, ParseError> {
    let lexical = cur.string(false)?;
    match cur.peek() {
        Some('@') => {
            let tag = cur.language_tag()?;
            Ok(Term::Literal(Literal::lang_string(lexical, tag).map_err(|e| cur.error(e.to_string()))?))
        }
        Some('^') => {
            cur.bump();
            cur.expect('^')?;
            let datatype = absolute_iri(cur)?;
            if datatype.as_str() == rdf::LANG_STRING {
                return Err(cur.error("rdf:langString requires a language tag"));
            }
            Ok(Term::Literal(Literal::typed(lexical, datatype)))
        }
        _ => Ok(Term::Literal(Literal::string(lexical))),
    }
}

/// Writes one line per triple in canonical order, with canonical blank labels.
pub fn write_ntriples(graph: &Graph) -> String {
    let labels = CanonicalLabels::new(graph);
    let mut out = String::new();
    for t in labels.sorted(graph) {
        write_term(&mut out, t.subject(), &labels);
        out.push_str(" <");
        out.push_str(t.predicate().as_str());
        out.push_str("> ");
        write_term(&mut out, t.object(), &labels);
        out.push_str(" .\n");
    }
    out
}

fn write_term(out: &mut String, term: &Term, labels: &CanonicalLabels<'_>) {
    match term {
        Term::Iri(iri) => {
            out.push('<');
            out.push_str(iri.as_str());
            out.push('>');
        }
        Term::Blank(b) => {
            out.push_str("_:");
            out.push_str(&labels.label(b));
        }
        Term::Literal(l) => out.push_str(&l.to_string()),
    }
}
