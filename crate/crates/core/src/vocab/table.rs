//! The tabular vocabulary format.
//!
//! ```text
//! #meta:scheme,https://w3id.org/mobilitydcat-ap/update-frequency
//! #meta:title,Update Frequency
//! #meta:version,1.0.0
//! iri,prefLabel@en,prefLabel@de,definition@en,broader
//! https://w3id.org/mobilitydcat-ap/update-frequency/daily,Daily,Täglich,Updated once a day,
//! ```
//!
//! Other lines starting with `#` are comments. Columns after `iri` may come
//! in any order; empty cells are absent values.

use std::collections::{BTreeMap, BTreeSet};

use super::VocabError;
use super::model::{Concept, ConceptScheme};
use crate::profile::Version;
use crate::rdf::ns::{dct, owl, rdf, skos};
use crate::rdf::{Graph, Iri, Literal, Term};

enum Column {
    Iri,
    PrefLabel(String),
    Definition(String),
    Broader,
}

/// Parses a vocabulary table into a scheme and its SKOS graph.
pub fn tabular_to_scheme(table: &str) -> Result<(ConceptScheme, Graph), VocabError> {
    let scheme = parse_table(table)?;
    let graph = scheme_to_graph(&scheme);
    Ok((scheme, graph))
}

fn syntax(line: u64, message: impl Into<String>) -> VocabError {
    VocabError::TableSyntax {
        line,
        message: message.into(),
    }
}

fn parse_table(table: &str) -> Result<ConceptScheme, VocabError> {
    let table = table.strip_prefix('\u{feff}').unwrap_or(table);
    let mut meta = BTreeMap::new();
    for (n, line) in table.lines().enumerate() {
        let Some(rest) = line.strip_prefix("#meta:") else { continue };
        let line_no = n as u64 + 1;
        let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(rest.as_bytes());
        let record = reader
            .records()
            .next()
            .transpose()
            .map_err(|e| syntax(line_no, e.to_string()))?
            .ok_or_else(|| syntax(line_no, "empty #meta line"))?;
        let (Some(key), Some(value), None) = (record.get(0), record.get(1), record.get(2)) else {
            return Err(syntax(line_no, "#meta lines hold exactly a key and a value"));
        };
        if meta.insert(key.trim().to_owned(), (line_no, value.trim().to_owned())).is_some() {
            return Err(syntax(line_no, format!("#meta:{} given twice", key.trim())));
        }
    }
    let header = |key: &str| meta.get(key).ok_or_else(|| syntax(0, format!("missing #meta:{key}")));
    let (line, scheme_text) = header("scheme")?;
    let scheme_iri = Iri::new(scheme_text.as_str()).map_err(|e| syntax(*line, e.to_string()))?;
    let title = header("title")?.1.clone();
    let (line, version_text) = header("version")?;
    let version: Version = version_text.parse().map_err(|e: String| syntax(*line, e))?;
    if let Some((line, key)) = meta
        .iter()
        .find(|(k, _)| !["scheme", "title", "version", "note"].contains(&k.as_str()))
        .map(|(k, (line, _))| (*line, k))
    {
        return Err(syntax(line, format!("unknown #meta:{key}")));
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(table.as_bytes());
    let header_line = reader.position().line();
    let headers = reader.headers().map_err(|e| syntax(header_line, e.to_string()))?.clone();
    let header_line = reader.position().line().saturating_sub(1).max(1);
    let mut columns = Vec::new();
    let mut seen = BTreeSet::new();
    for name in &headers {
        if !seen.insert(name.to_owned()) {
            return Err(syntax(header_line, format!("column '{name}' given twice")));
        }
        columns.push(match name {
            "iri" => Column::Iri,
            "broader" => Column::Broader,
            _ => match name.split_once('@') {
                Some(("prefLabel", lang)) if !lang.is_empty() => Column::PrefLabel(lang.to_owned()),
                Some(("definition", lang)) if !lang.is_empty() => Column::Definition(lang.to_owned()),
                _ => return Err(syntax(header_line, format!("unknown column '{name}'"))),
            },
        });
    }
    if !matches!(columns.first(), Some(Column::Iri)) {
        return Err(syntax(header_line, "first column must be 'iri'"));
    }

    let mut concepts = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            syntax(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut iri = None;
        let mut concept_labels = BTreeMap::new();
        let mut definitions = BTreeMap::new();
        let mut broader = None;
        for (column, cell) in columns.iter().zip(record.iter()) {
            if cell.is_empty() {
                continue;
            }
            let parse_iri = |text: &str| Iri::new(text).map_err(|e| syntax(line, e.to_string()));
            match column {
                Column::Iri => iri = Some(parse_iri(cell)?),
                Column::Broader => broader = Some(parse_iri(cell)?),
                Column::PrefLabel(lang) => {
                    concept_labels.insert(lang.clone(), cell.to_owned());
                }
                Column::Definition(lang) => {
                    definitions.insert(lang.clone(), cell.to_owned());
                }
            }
        }
        let iri = iri.ok_or_else(|| syntax(line, "row without a concept IRI"))?;
        concepts.push(Concept {
            iri,
            pref_labels: concept_labels,
            definitions,
            broader,
        });
    }
    let mut scheme = ConceptScheme::new(scheme_iri, title, version, concepts)?;
    scheme.note = meta.get("note").map(|(_, v)| v.clone());
    Ok(scheme)
}

/// Renders a scheme back to the tabular format.
pub fn scheme_to_table(scheme: &ConceptScheme) -> String {
    let label_langs: BTreeSet<&str> = scheme.concepts().iter().flat_map(|c| c.pref_labels.keys()).map(String::as_str).collect();
    let definition_langs: BTreeSet<&str> =
        scheme.concepts().iter().flat_map(|c| c.definitions.keys()).map(String::as_str).collect();
    let has_broader = scheme.concepts().iter().any(|c| c.broader.is_some());

    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut meta = vec![
        ("scheme", scheme.iri.to_string()),
        ("title", scheme.title.clone()),
        ("version", scheme.version.to_string()),
    ];
    if let Some(note) = &scheme.note {
        meta.push(("note", note.clone()));
    }
    let mut out = String::new();
    for (key, value) in meta {
        let mut line = csv::WriterBuilder::new().from_writer(Vec::new());
        line.write_record([format!("#meta:{key}"), value]).expect("write to memory");
        out.push_str(&String::from_utf8(line.into_inner().expect("flush to memory")).expect("utf-8 input"));
    }

    let mut header = vec!["iri".to_owned()];
    header.extend(label_langs.iter().map(|l| format!("prefLabel@{l}")));
    header.extend(definition_langs.iter().map(|l| format!("definition@{l}")));
    if has_broader {
        header.push("broader".to_owned());
    }
    writer.write_record(&header).expect("write to memory");
    for c in scheme.concepts() {
        let mut row = vec![c.iri.to_string()];
        row.extend(label_langs.iter().map(|l| c.pref_labels.get(*l).cloned().unwrap_or_default()));
        row.extend(definition_langs.iter().map(|l| c.definitions.get(*l).cloned().unwrap_or_default()));
        if has_broader {
            row.push(c.broader.as_ref().map(Iri::to_string).unwrap_or_default());
        }
        writer.write_record(&row).expect("write to memory");
    }
    out.push_str(&String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 input"));
    out
}

/// The SKOS rendering of a scheme.
pub fn scheme_to_graph(scheme: &ConceptScheme) -> Graph {
    let mut g = Graph::new();
    let s = Term::Iri(scheme.iri.clone());
    let p = Iri::from_static;
    g.add(s.clone(), p(rdf::TYPE), Term::Iri(p(skos::CONCEPT_SCHEME)));
    g.add(s.clone(), p(dct::TITLE), Term::Literal(Literal::string(&scheme.title)));
    g.add(s.clone(), p(owl::VERSION_INFO), Term::Literal(Literal::string(scheme.version.to_string())));
    for c in scheme.concepts() {
        let ct = Term::Iri(c.iri.clone());
        g.add(ct.clone(), p(rdf::TYPE), Term::Iri(p(skos::CONCEPT)));
        g.add(ct.clone(), p(skos::IN_SCHEME), s.clone());
        for (lang, label) in &c.pref_labels {
            g.add(ct.clone(), p(skos::PREF_LABEL), lang_literal(label, lang));
        }
        for (lang, text) in &c.definitions {
            g.add(ct.clone(), p(skos::DEFINITION), lang_literal(text, lang));
        }
        if let Some(b) = &c.broader {
            g.add(ct.clone(), p(skos::BROADER), Term::Iri(b.clone()));
        }
    }
    g
}

fn lang_literal(text: &str, lang: &str) -> Term {
    Term::Literal(Literal::lang_string(text, lang).unwrap_or_else(|_| Literal::string(text)))
}
