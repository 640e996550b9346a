//! Command results as ordered fields, rendered either as `key: value` text
//! or as a JSON document with the same values.

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Text(String),
    Int(i64),
    Flag(bool),
    /// One item per line.
    Lines(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Show {
    Keyed,
    /// Value only, without the key.
    Bare,
    /// JSON only.
    Hidden,
}

#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(String, Field, Show)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn text(mut self, key: &str, v: impl ToString) -> Self {
        self.fields
            .push((key.into(), Field::Text(v.to_string()), Show::Keyed));
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.into(), Field::Int(v), Show::Keyed));
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Field::Flag(v), Show::Keyed));
        self
    }

    pub fn lines(mut self, key: &str, v: Vec<String>) -> Self {
        self.fields.push((key.into(), Field::Lines(v), Show::Keyed));
        self
    }

    pub fn bare(mut self, key: &str, v: impl ToString) -> Self {
        self.fields
            .push((key.into(), Field::Text(v.to_string()), Show::Bare));
        self
    }

    pub fn hidden(mut self, key: &str, v: impl ToString) -> Self {
        self.fields
            .push((key.into(), Field::Text(v.to_string()), Show::Hidden));
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = Vec::new();
        for (key, field, show) in &self.fields {
            match (show, field) {
                (Show::Hidden, _) => {}
                (Show::Bare, f) => out.push(scalar(f)),
                (Show::Keyed, Field::Lines(items)) => {
                    out.push(format!("{key}:"));
                    out.extend(items.iter().map(|i| format!("  {i}")));
                }
                (Show::Keyed, f) => {
                    let v = scalar(f);
                    out.push(if v.is_empty() {
                        format!("{key}:")
                    } else {
                        format!("{key}: {v}")
                    });
                }
            }
        }
        out.join("\n")
    }

    /// Dotted keys become nested objects.
    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        for (key, field, _) in &self.fields {
            let value = match field {
                Field::Text(s) => Value::String(s.clone()),
                Field::Int(i) => Value::from(*i),
                Field::Flag(b) => Value::Bool(*b),
                Field::Lines(v) => Value::Array(v.iter().cloned().map(Value::String).collect()),
            };
            let mut parts: Vec<&str> = key.split('.').collect();
            let last = parts.pop().expect("nonempty key");
            let mut obj = &mut root;
            for p in parts {
                obj = obj
                    .entry(p)
                    .or_insert_with(|| Value::Object(Map::new()))
                    .as_object_mut()
                    .expect("dotted key prefix is an object");
            }
            obj.insert(last.to_string(), value);
        }
        Value::Object(root)
    }
}

fn scalar(f: &Field) -> String {
    match f {
        Field::Text(s) => s.clone(),
        Field::Int(i) => i.to_string(),
        Field::Flag(b) => if *b { "yes" } else { "no" }.to_string(),
        Field::Lines(v) => v.join("\n"),
    }
}
