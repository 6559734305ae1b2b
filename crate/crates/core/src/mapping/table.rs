//! The mapping table format.
//!
//! ```text
//! #meta:targetClass,dcat:Dataset
//! #meta:idTemplate,https://data.example.org/dataset/{recordId}
//! kind,field,value,target
//! field,supplier,,dct:publisher
//! field,frequency,,dct:accrualPeriodicity
//! value,frequency,daily,http://publications.europa.eu/resource/authority/frequency/DAILY
//! ```
//!
//! Targets are absolute IRIs or names under the toolkit's common prefixes.

use std::collections::BTreeMap;

use super::{MappingError, MappingTable};
use crate::io::PrefixMap;
use crate::rdf::Iri;

fn syntax(line: u64, message: impl Into<String>) -> MappingError {
    MappingError::TableSyntax {
        line,
        message: message.into(),
    }
}

fn expand(prefixes: &PrefixMap, text: &str, line: u64) -> Result<Iri, MappingError> {
    let text = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')).unwrap_or(text);
    Iri::new(prefixes.expand(text).unwrap_or_else(|| text.to_owned())).map_err(|e| syntax(line, e.to_string()))
}

pub fn load_mapping_table(document: &str) -> Result<MappingTable, MappingError> {
    let document = document.strip_prefix('\u{feff}').unwrap_or(document);
    let prefixes = PrefixMap::common();
    let mut target_class = None;
    let mut id_template = None;
    for (n, line) in document.lines().enumerate() {
        let Some(rest) = line.strip_prefix("#meta:") else { continue };
        let line_no = n as u64 + 1;
        let (key, value) = rest.split_once(',').ok_or_else(|| syntax(line_no, "#meta line needs a key and a value"))?;
        match key.trim() {
            "targetClass" => target_class = Some(expand(&prefixes, value.trim(), line_no)?),
            "idTemplate" => {
                let template = value.trim();
                if !template.contains("{recordId}") {
                    return Err(syntax(line_no, "idTemplate lacks the {recordId} placeholder"));
                }
                Iri::new(template.replace("{recordId}", "x")).map_err(|e| syntax(line_no, e.to_string()))?;
                id_template = Some(template.to_owned());
            }
            other => return Err(syntax(line_no, format!("unknown #meta:{other}"))),
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(document.as_bytes());
    let headers = reader.headers().map_err(|e| syntax(0, e.to_string()))?.clone();
    let header_line = reader.position().line().saturating_sub(1).max(1);
    if headers.iter().collect::<Vec<_>>() != ["kind", "field", "value", "target"] {
        return Err(syntax(header_line, "header must be kind,field,value,target"));
    }
    let mut field_mappings = BTreeMap::new();
    let mut value_rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| syntax(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let (kind, field, value, target) = (&record[0], &record[1], &record[2], &record[3]);
        if field.is_empty() {
            return Err(syntax(line, "empty field name"));
        }
        let target = expand(&prefixes, target, line)?;
        match kind {
            "field" => {
                if field_mappings.insert(field.to_owned(), target).is_some() {
                    return Err(syntax(line, format!("field '{field}' mapped twice")));
                }
            }
            "value" => value_rows.push((line, field.to_owned(), value.to_owned(), target)),
            other => return Err(syntax(line, format!("unknown row kind '{other}'"))),
        }
    }
    let mut value_mappings = BTreeMap::new();
    for (line, field, value, target) in value_rows {
        if !field_mappings.contains_key(&field) {
            return Err(MappingError::OrphanValueMapping { field, value });
        }
        if value_mappings.insert((field.clone(), value.clone()), target).is_some() {
            return Err(syntax(line, format!("value '{value}' of '{field}' mapped twice")));
        }
    }
    Ok(MappingTable {
        target_class: target_class.ok_or_else(|| syntax(0, "missing #meta:targetClass"))?,
        id_template: id_template.ok_or_else(|| syntax(0, "missing #meta:idTemplate"))?,
        field_mappings,
        value_mappings,
    })
}

pub fn render_mapping_table(table: &MappingTable) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(["kind", "field", "value", "target"]).expect("write to memory");
    for (field, target) in &table.field_mappings {
        w.write_record(["field", field, "", target.as_str()]).expect("write to memory");
    }
    for ((field, value), target) in &table.value_mappings {
        w.write_record(["value", field, value, target.as_str()]).expect("write to memory");
    }
    let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input");
    format!("#meta:targetClass,{}\n#meta:idTemplate,{}\n{body}", table.target_class, table.id_template)
}
