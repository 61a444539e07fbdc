//! Record-oriented output: human-readable text or line-delimited JSON.

use crate::Format;

pub struct Output {
    format: Format,
}

/// One key/value record; text mode prints `key = value` lines grouped
/// under the record name, JSON mode prints one object per line.
pub struct Record<'a> {
    name: &'a str,
    fields: Vec<(String, serde_json::Value)>,
}

impl<'a> Record<'a> {
    pub fn new(name: &'a str) -> Self {
        Record {
            name,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format }
    }

    pub fn is_json(&self) -> bool {
        self.format == Format::Json
    }

    pub fn emit(&self, record: Record) {
        match self.format {
            Format::Json => {
                let mut map = serde_json::Map::new();
                map.insert("record".into(), record.name.into());
                for (k, v) in record.fields {
                    map.insert(k, v);
                }
                println!("{}", serde_json::Value::Object(map));
            }
            Format::Text => {
                for (k, v) in &record.fields {
                    let shown = match v {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    println!("{}.{} = {}", record.name, k, shown);
                }
            }
        }
    }

    /// Free-form line, text mode only (JSON consumers get records).
    pub fn note(&self, line: &str) {
        if self.format == Format::Text {
            println!("{line}");
        }
    }
}
