use serde_json::Value;

use crate::args::Format;

/// One result in every output format.
pub struct Doc {
    pub json: Value,
    /// Header first.
    pub csv: Vec<Vec<String>>,
    pub text: String,
}

impl Doc {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory writer");
                }
                String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Header and one row from the scalar fields of a JSON object, in order.
pub fn flat_csv(value: &Value, keys: &[&str]) -> Vec<Vec<String>> {
    let header = keys.iter().map(|k| k.to_string()).collect();
    let row = keys.iter().map(|k| scalar(&value[*k])).collect();
    vec![header, row]
}

/// `key: value` lines for the scalar fields of a JSON object.
pub fn flat_text(value: &Value, keys: &[&str]) -> String {
    keys.iter()
        .map(|k| format!("{k}: {}", scalar(&value[*k])))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `1-2-3` style label for an edge given as a JSON vertex list.
pub fn edge_label(edge: &Value) -> String {
    edge.as_array()
        .map(|vs| vs.iter().map(scalar).collect::<Vec<_>>().join("-"))
        .unwrap_or_default()
}
