//! Turtle parser.

use std::collections::HashMap;

use super::ParseError;
use super::chars::{is_pn_chars, is_pn_chars_u, is_pn_local_escapable};
use super::cursor::{Cursor, Mark};
use super::format::{PrefixMap, is_prefix_label};
use crate::rdf::ns::{rdf, xsd};
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};

/// Parses a Turtle document into a graph and the prefixes it declared.
///
/// `base` seeds relative IRI resolution; `@base`/`BASE` directives override it.
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<(Graph, PrefixMap), ParseError> {
    let mut parser = TurtleParser {
        cur: Cursor::new(text),
        prefixes: PrefixMap::new(),
        base: base.map(|b| oxiri::Iri::parse(b.as_str().to_owned())).transpose().ok().flatten(),
        graph: Graph::new(),
        labels: HashMap::new(),
        anon: 0,
    };
    if let Some(b) = base {
        parser.prefixes.set_base(Some(b.clone()));
    }
    parser.document()?;
    Ok((parser.graph, parser.prefixes))
}

struct TurtleParser {
    cur: Cursor,
    prefixes: PrefixMap,
    base: Option<oxiri::Iri<String>>,
    graph: Graph,
    labels: HashMap<String, BlankNode>,
    anon: usize,
}

impl TurtleParser {
    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            if self.cur.at_end() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.cur.peek() {
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    self.cur.bump();
                }
                '#' => {
                    while let Some(c) = self.cur.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        if self.cur.peek() == Some('@') {
            let mark = self.cur.mark();
            self.cur.bump();
            if self.cur.looking_at_keyword("prefix") {
                self.skip_word(6);
                self.prefix_declaration()?;
            } else if self.cur.looking_at_keyword("base") {
                self.skip_word(4);
                self.base_declaration()?;
            } else {
                return Err(self.cur.error_at(mark, "unknown directive"));
            }
            self.skip_ws();
            return self.cur.expect('.');
        }
        if self.cur.looking_at_keyword("PREFIX") {
            self.skip_word(6);
            return self.prefix_declaration();
        }
        if self.cur.looking_at_keyword("BASE") {
            self.skip_word(4);
            return self.base_declaration();
        }
        self.triples()?;
        self.skip_ws();
        self.cur.expect('.')
    }

    fn skip_word(&mut self, n: usize) {
        for _ in 0..n {
            self.cur.bump();
        }
    }

    fn prefix_declaration(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let mark = self.cur.mark();
        let mut label = String::new();
        while let Some(c) = self.cur.peek() {
            if c == ':' {
                break;
            }
            if !(is_pn_chars(c) || c == '.') {
                return Err(self.cur.unexpected("prefix name followed by ':'"));
            }
            label.push(c);
            self.cur.bump();
        }
        if !is_prefix_label(&label) {
            return Err(self.cur.error_at(mark, format!("invalid prefix label {label:?}")));
        }
        self.cur.expect(':')?;
        self.skip_ws();
        let namespace = self.iri_ref()?;
        self.prefixes
            .insert(&label, namespace)
            .map_err(|e| self.cur.error_at(mark, e.to_string()))
    }

    fn base_declaration(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let mark = self.cur.mark();
        let base = self.iri_ref()?;
        let parsed = oxiri::Iri::parse(base.as_str().to_owned())
            .map_err(|e| self.cur.malformed_iri(mark, base.as_str(), e.to_string()))?;
        self.base = Some(parsed);
        self.prefixes.set_base(Some(base));
        Ok(())
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        match self.cur.peek() {
            Some('[') => {
                let (node, had_properties) = self.blank_node_property_list()?;
                self.skip_ws();
                if had_properties && matches!(self.cur.peek(), Some('.') | None) {
                    return Ok(());
                }
                self.predicate_object_list(&node)
            }
            _ => {
                let subject = self.subject()?;
                self.skip_ws();
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') => Ok(Term::Blank(self.labelled_blank()?)),
            Some('(') => self.collection(),
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.cur.unexpected("subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if !self.cur.eat(';') {
                return Ok(());
            }
            loop {
                self.skip_ws();
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, ParseError> {
        if self.cur.peek() == Some('a')
            && self.cur.peek_at(1).is_none_or(|c| !(is_pn_chars(c) || c == ':' || c == '.'))
        {
            self.cur.bump();
            return Ok(Iri::from_static(rdf::TYPE));
        }
        self.iri()
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object)?;
            self.skip_ws();
            if !self.cur.eat(',') {
                return Ok(());
            }
        }
    }

    fn emit(&mut self, subject: Term, predicate: Iri, object: Term) -> Result<(), ParseError> {
        let triple = Triple::new(subject, predicate, object).map_err(|e| self.cur.error(e.to_string()))?;
        self.graph.insert(triple);
        Ok(())
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') => Ok(Term::Blank(self.labelled_blank()?)),
            Some('[') => Ok(self.blank_node_property_list()?.0),
            Some('(') => self.collection(),
            Some('"' | '\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.numeric_literal(),
            Some(_) if self.cur.looking_at_keyword("true") && self.is_exact_keyword("true") => {
                self.skip_word(4);
                Ok(Term::Literal(Literal::boolean(true)))
            }
            Some(_) if self.cur.looking_at_keyword("false") && self.is_exact_keyword("false") => {
                self.skip_word(5);
                Ok(Term::Literal(Literal::boolean(false)))
            }
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.cur.unexpected("object")),
        }
    }

    /// Boolean keywords are case-sensitive, unlike SPARQL-style directives.
    fn is_exact_keyword(&self, word: &str) -> bool {
        word.chars().enumerate().all(|(i, w)| self.cur.peek_at(i) == Some(w))
    }

    fn fresh_blank(&mut self) -> BlankNode {
        let label = format!("-a{}", self.anon);
        self.anon += 1;
        BlankNode::new(label).expect("generated label is valid")
    }

    fn labelled_blank(&mut self) -> Result<BlankNode, ParseError> {
        let label = self.cur.blank_label()?;
        Ok(self
            .labels
            .entry(label.clone())
            .or_insert_with(|| BlankNode::new(label).expect("grammar guarantees a valid label"))
            .clone())
    }

    /// Parses `[ ... ]`, returning the node and whether it had properties.
    fn blank_node_property_list(&mut self) -> Result<(Term, bool), ParseError> {
        self.cur.expect('[')?;
        self.skip_ws();
        let node = Term::Blank(self.fresh_blank());
        if self.cur.eat(']') {
            return Ok((node, false));
        }
        self.predicate_object_list(&node)?;
        self.skip_ws();
        self.cur.expect(']')?;
        Ok((node, true))
    }

    fn collection(&mut self) -> Result<Term, ParseError> {
        self.cur.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            if self.cur.eat(')') {
                break;
            }
            if self.cur.at_end() {
                return Err(self.cur.unexpected("')'"));
            }
            items.push(self.object()?);
        }
        let nil = Term::Iri(Iri::from_static(rdf::NIL));
        if items.is_empty() {
            return Ok(nil);
        }
        let nodes: Vec<Term> = items.iter().map(|_| Term::Blank(self.fresh_blank())).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.emit(nodes[i].clone(), Iri::from_static(rdf::FIRST), item)?;
            let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
            self.emit(nodes[i].clone(), Iri::from_static(rdf::REST), rest)?;
        }
        Ok(nodes[0].clone())
    }

    fn iri(&mut self) -> Result<Iri, ParseError> {
        match self.cur.peek() {
            Some('<') => self.iri_ref(),
            _ => self.prefixed_name(),
        }
    }

    fn iri_ref(&mut self) -> Result<Iri, ParseError> {
        let mark = self.cur.mark();
        let raw = self.cur.iri_ref()?;
        self.resolve(mark, &raw)
    }

    fn resolve(&self, mark: Mark, raw: &str) -> Result<Iri, ParseError> {
        if let Ok(iri) = Iri::new(raw) {
            return Ok(iri);
        }
        let Some(base) = &self.base else {
            return Err(self.cur.malformed_iri(mark, raw, "relative IRI without a base"));
        };
        let reference = oxiri::IriRef::parse(raw).map_err(|e| self.cur.malformed_iri(mark, raw, e.to_string()))?;
        let resolved = base
            .resolve(&reference)
            .map_err(|e| self.cur.malformed_iri(mark, raw, e.to_string()))?;
        Iri::new(resolved.into_inner()).map_err(|e| self.cur.malformed_iri(mark, raw, e.to_string()))
    }

    fn prefixed_name(&mut self) -> Result<Iri, ParseError> {
        let mark = self.cur.mark();
        let mut prefix = String::new();
        while let Some(c) = self.cur.peek() {
            if c == ':' {
                break;
            }
            if !(is_pn_chars(c) || c == '.') {
                break;
            }
            prefix.push(c);
            self.cur.bump();
        }
        if self.cur.peek() != Some(':') || !is_prefix_label(&prefix) {
            self.cur.reset(mark);
            return Err(self.cur.unexpected("IRI, prefixed name or literal"));
        }
        self.cur.bump();
        let local = self.local_name()?;
        let Some(namespace) = self.prefixes.get(&prefix) else {
            return Err(self.cur.unknown_prefix(mark, &prefix));
        };
        let full = format!("{namespace}{local}");
        Iri::new(full.clone()).map_err(|e| self.cur.malformed_iri(mark, &full, e.to_string()))
    }

    fn local_name(&mut self) -> Result<String, ParseError> {
        let mut local = String::new();
        // Characters that came from an escape can never be trimmed as a trailing dot.
        let mut escaped_len = 0;
        let mut first = true;
        while let Some(c) = self.cur.peek() {
            let ok = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\'
            } else {
                is_pn_chars(c) || c == '.' || c == ':' || c == '%' || c == '\\'
            };
            if !ok {
                break;
            }
            first = false;
            match c {
                '%' => {
                    self.cur.bump();
                    local.push('%');
                    for _ in 0..2 {
                        match self.cur.peek() {
                            Some(h) if h.is_ascii_hexdigit() => {
                                local.push(h);
                                self.cur.bump();
                            }
                            _ => return Err(self.cur.error("expected two hex digits after '%'")),
                        }
                    }
                    escaped_len = local.len();
                }
                '\\' => {
                    self.cur.bump();
                    match self.cur.peek() {
                        Some(e) if is_pn_local_escapable(e) => {
                            local.push(e);
                            self.cur.bump();
                            escaped_len = local.len();
                        }
                        _ => return Err(self.cur.error("invalid escape in local name")),
                    }
                }
                _ => {
                    local.push(c);
                    self.cur.bump();
                }
            }
        }
        // A trailing '.' terminates the statement rather than the name.
        while local.ends_with('.') && local.len() > escaped_len {
            local.pop();
            self.cur.retreat_one();
        }
        Ok(local)
    }

    fn rdf_literal(&mut self) -> Result<Term, ParseError> {
        let lexical = self.cur.string(true)?;
        match self.cur.peek() {
            Some('@') => {
                let tag = self.cur.language_tag()?;
                let lit = Literal::lang_string(lexical, tag).map_err(|e| self.cur.error(e.to_string()))?;
                Ok(Term::Literal(lit))
            }
            Some('^') if self.cur.peek_at(1) == Some('^') => {
                self.cur.bump();
                self.cur.bump();
                let datatype = self.iri()?;
                if datatype.as_str() == rdf::LANG_STRING {
                    return Err(self.cur.error("rdf:langString requires a language tag"));
                }
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn numeric_literal(&mut self) -> Result<Term, ParseError> {
        let mark = self.cur.mark();
        let mut lexical = String::new();
        if let Some(sign @ ('+' | '-')) = self.cur.peek() {
            lexical.push(sign);
            self.cur.bump();
        }
        let int_digits = self.digits(&mut lexical);
        let mut datatype = xsd::INTEGER;
        if self.cur.peek() == Some('.') {
            let mut ahead = 1;
            while self.cur.peek_at(ahead).is_some_and(|c| c.is_ascii_digit()) {
                ahead += 1;
            }
            let frac_digits = ahead - 1;
            let exp_follows = matches!(self.cur.peek_at(ahead), Some('e' | 'E'));
            if frac_digits > 0 || (exp_follows && int_digits > 0) {
                self.cur.bump();
                lexical.push('.');
                self.digits(&mut lexical);
                datatype = xsd::DECIMAL;
            }
        }
        if matches!(self.cur.peek(), Some('e' | 'E')) && (int_digits > 0 || datatype == xsd::DECIMAL) {
            lexical.push(self.cur.bump().expect("peeked"));
            if let Some(sign @ ('+' | '-')) = self.cur.peek() {
                lexical.push(sign);
                self.cur.bump();
            }
            if self.digits(&mut lexical) == 0 {
                return Err(self.cur.error("expected exponent digits"));
            }
            datatype = xsd::DOUBLE;
        }
        if int_digits == 0 && datatype == xsd::INTEGER {
            return Err(self.cur.error_at(mark, "malformed numeric literal"));
        }
        Ok(Term::Literal(Literal::typed(lexical, Iri::from_static(datatype))))
    }

    fn digits(&mut self, out: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.cur.peek() {
            if c.is_ascii_digit() {
                out.push(c);
                self.cur.bump();
                n += 1;
            } else {
                break;
            }
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "@prefix ex: <http://ex.org/> .\n";

    fn parse(body: &str) -> Graph {
        parse_turtle(&format!("{EX}{body}"), None).unwrap().0
    }

    fn ex(local: &str) -> Term {
        Term::iri(format!("http://ex.org/{local}")).unwrap()
    }

    #[test]
    fn single_triple() {
        let (g, prefixes) = parse_turtle("@prefix ex: <http://ex.org/> . ex:s ex:p ex:o .", None).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(prefixes.get("ex").unwrap().as_str(), "http://ex.org/");
    }

    #[test]
    fn collection_expands_to_first_rest_chain() {
        let g = parse("ex:s ex:p (1 2 3) .");
        assert_eq!(g.len(), 7);
        let firsts = g.matches(None, Some(&Iri::from_static(rdf::FIRST)), None);
        assert_eq!(firsts.len(), 3);
        let nil = Term::Iri(Iri::from_static(rdf::NIL));
        assert_eq!(g.matches(None, Some(&Iri::from_static(rdf::REST)), Some(&nil)).len(), 1);
    }

    #[test]
    fn unknown_prefix_reported() {
        let err = parse_turtle("ex:s ex:p ex:o .", None).unwrap_err();
        assert!(matches!(err, ParseError::UnknownPrefix { ref prefix, line: 1, column: 1, .. } if prefix == "ex"));
    }

    #[test]
    fn sparql_style_directives() {
        let g = parse_turtle("PREFIX ex: <http://ex.org/>\nBASE <http://base.org/>\nex:s ex:p <rel> .", None)
            .unwrap()
            .0;
        let t = g.iter().next().unwrap();
        assert_eq!(t.object(), &Term::iri("http://base.org/rel").unwrap());
    }

    #[test]
    fn relative_iri_needs_base() {
        let err = parse_turtle("<s> <http://ex.org/p> <o> .", None).unwrap_err();
        assert!(matches!(err, ParseError::MalformedIri { .. }));
        let base = Iri::from_static("http://ex.org/dir/");
        let g = parse_turtle("<s> <http://ex.org/p> <../o> .", Some(&base)).unwrap().0;
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject(), &Term::iri("http://ex.org/dir/s").unwrap());
        assert_eq!(t.object(), &Term::iri("http://ex.org/o").unwrap());
    }

    #[test]
    fn literals_of_every_shape() {
        let g = parse(concat!(
            "ex:s ex:p \"plain\", 'single', \"\"\"long\n\"quoted\" \"\"\", \"hi\"@en-GB, \"5\"^^ex:t, ",
            "42, -3.5, 1e3, .5, true, false, \"esc\\t\\u00E9\\U0001F600\" ."
        ));
        let objects: Vec<Term> = g.iter().map(|t| t.object().clone()).collect();
        let has = |lit: Literal| objects.contains(&Term::Literal(lit));
        assert!(has(Literal::string("plain")));
        assert!(has(Literal::string("single")));
        assert!(has(Literal::string("long\n\"quoted\" ")));
        assert!(has(Literal::lang_string("hi", "en-GB").unwrap()));
        assert!(has(Literal::typed("5", Iri::from_static("http://ex.org/t"))));
        assert!(has(Literal::typed("42", Iri::from_static(xsd::INTEGER))));
        assert!(has(Literal::typed("-3.5", Iri::from_static(xsd::DECIMAL))));
        assert!(has(Literal::typed("1e3", Iri::from_static(xsd::DOUBLE))));
        assert!(has(Literal::typed(".5", Iri::from_static(xsd::DECIMAL))));
        assert!(has(Literal::boolean(true)));
        assert!(has(Literal::boolean(false)));
        assert!(has(Literal::string("esc\t\u{e9}\u{1F600}")));
        assert_eq!(g.len(), 12);
    }

    #[test]
    fn integer_before_statement_dot() {
        let g = parse("ex:s ex:p 1.");
        assert_eq!(
            g.iter().next().unwrap().object(),
            &Term::Literal(Literal::typed("1", Iri::from_static(xsd::INTEGER)))
        );
    }

    #[test]
    fn blank_nodes_and_property_lists() {
        let g = parse("_:x ex:p [ ex:q ex:o ; ex:r [] ] .\n[ ex:p ex:o ] .\n[] ex:p _:x .");
        assert_eq!(g.len(), 5);
        assert_eq!(g.blank_nodes().len(), 5);
    }

    #[test]
    fn predicate_and_object_lists() {
        let g = parse("ex:s a ex:C ; ex:p ex:a , ex:b ;; ex:q ex:c ; .");
        assert_eq!(g.len(), 4);
        assert!(g.contains(&Triple::new(ex("s"), Iri::from_static(rdf::TYPE), ex("C")).unwrap()));
    }

    #[test]
    fn prefixed_names_with_dots_and_escapes() {
        let g = parse("ex:a.b ex:p ex:c\\/d, ex:e%20f, ex:1.0.0 .");
        let objects: Vec<&Term> = g.iter().map(Triple::object).collect();
        assert!(objects.contains(&&ex("c/d")));
        assert!(objects.contains(&&ex("e%20f")));
        assert!(objects.contains(&&ex("1.0.0")));
        assert_eq!(g.iter().next().unwrap().subject(), &ex("a.b"));
    }

    #[test]
    fn comments_are_ignored() {
        let g = parse("# leading\nex:s ex:p ex:o . # trailing\n# end");
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = format!("{EX}ex:s ex:p ex:o");
        let err = parse_turtle(&text, None).unwrap_err();
        let (line, column) = err.position();
        assert_eq!((line, column), (2, 15));
        assert!(err.offset() <= text.chars().count());
        assert!(matches!(
            parse_turtle(&format!("{EX}ex:s ex:p \"open ."), None),
            Err(ParseError::Syntax { .. })
        ));
        assert!(parse_turtle(&format!("{EX}ex:s ex:p \"x\"@ ."), None).is_err());
        assert!(parse_turtle(&format!("{EX}\"lit\" ex:p ex:o ."), None).is_err());
    }

    #[test]
    fn keyword_a_is_not_a_prefix() {
        let g = parse_turtle("@prefix a: <http://a.org/> . a:s a a:C .", None).unwrap().0;
        let t = g.iter().next().unwrap();
        assert_eq!(t.predicate().as_str(), rdf::TYPE);
        assert_eq!(t.subject(), &Term::iri("http://a.org/s").unwrap());
    }

    #[test]
    fn empty_prefix() {
        let g = parse_turtle("@prefix : <http://e/> . :s :p :o .", None).unwrap().0;
        assert_eq!(g.len(), 1);
    }
}
