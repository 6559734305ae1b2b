use serde_json::Value;

use super::{LegacyRecord, MappingError};

/// Reads one record per CSV row. `id_column` names the record-id column;
/// other cells split on `|` into multiple values.
pub fn records_from_csv(text: &str, id_column: &str) -> Result<Vec<LegacyRecord>, MappingError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| MappingError::LegacySyntax(e.to_string()))?.clone();
    let id_index = headers
        .iter()
        .position(|h| h == id_column)
        .ok_or_else(|| MappingError::LegacySyntax(format!("no '{id_column}' column")))?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| MappingError::LegacySyntax(e.to_string()))?;
        let mut record = LegacyRecord::new(&row[id_index])?;
        for (i, (name, cell)) in headers.iter().zip(row.iter()).enumerate() {
            if i == id_index {
                continue;
            }
            if cell.is_empty() {
                record.fields.entry(name.to_owned()).or_default();
                continue;
            }
            for value in cell.split('|') {
                record.push(name, value.trim())?;
            }
        }
        records.push(record);
    }
    Ok(records)
}

/// Reads `{"<recordId>": {"<field>": "value" | ["value", ...]}}`.
pub fn records_from_json(text: &str) -> Result<Vec<LegacyRecord>, MappingError> {
    let root: Value = serde_json::from_str(text).map_err(|e| MappingError::LegacySyntax(e.to_string()))?;
    let Value::Object(records) = root else {
        return Err(MappingError::LegacySyntax("top level must be an object keyed by record id".into()));
    };
    let mut out = Vec::new();
    for (id, fields) in records {
        let Value::Object(fields) = fields else {
            return Err(MappingError::LegacySyntax(format!("record '{id}' is not an object")));
        };
        let mut record = LegacyRecord::new(id.as_str())?;
        for (name, value) in fields {
            let values = match value {
                Value::Array(items) => items,
                other => vec![other],
            };
            record.fields.entry(name.clone()).or_default();
            for v in values {
                let text = match v {
                    Value::String(s) => s,
                    Value::Number(n) => n.to_string(),
                    Value::Bool(b) => b.to_string(),
                    Value::Null => String::new(),
                    _ => return Err(MappingError::LegacySyntax(format!("record '{id}', field '{name}': nested value"))),
                };
                record.push(&name, text)?;
            }
        }
        out.push(record);
    }
    Ok(out)
}
