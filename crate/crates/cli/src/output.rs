use num_complex::Complex64;
use serde_json::{Map, Number, Value};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Kv,
    Doc,
    Csv,
}

#[derive(Debug, Clone)]
pub enum Field {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

/// Seventeen significant digits.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Str(s) => s.clone(),
            Field::Int(i) => i.to_string(),
            Field::Float(x) => float(*x),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Str(s) => Value::String(s.clone()),
            Field::Int(i) => Value::from(*i),
            Field::Bool(b) => Value::Bool(*b),
            Field::Float(x) if x.is_finite() => {
                Value::Number(float(*x).parse::<Number>().expect("finite float"))
            }
            Field::Float(x) => Value::String(x.to_string()),
        }
    }
}

/// An ordered list of named fields.
#[derive(Debug, Clone)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Vec<(String, Field)>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record {
            kind,
            fields: Vec::new(),
        }
    }

    pub fn str(mut self, key: &str, v: impl Into<String>) -> Self {
        self.fields.push((key.into(), Field::Str(v.into())));
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.into(), Field::Int(v)));
        self
    }

    pub fn float(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.into(), Field::Float(v)));
        self
    }

    pub fn bool(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Field::Bool(v)));
        self
    }

    pub fn complex(self, key: &str, z: Complex64) -> Self {
        self.float(&format!("{key}_re"), z.re)
            .float(&format!("{key}_im"), z.im)
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn kv_line(&self) -> String {
        let mut line = format!("record={}", self.kind);
        for (k, v) in &self.fields {
            let text = v.text();
            if text.is_empty() || text.contains([' ', '"', '=']) {
                write!(line, " {k}={}", Value::String(text)).unwrap();
            } else {
                write!(line, " {k}={text}").unwrap();
            }
        }
        line
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("record".into(), Value::String(self.kind.into()));
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.json());
        }
        Value::Object(m)
    }
}

pub const CSV_HEADER: &str = "z_re,z_im,R_re,R_im,abs_err_vs_oracle";

/// Renders records; CSV keeps only records of kind `value`.
pub fn render(command: &str, records: &[Record], format: Format) -> String {
    match format {
        Format::Kv => records.iter().map(|r| r.kv_line() + "\n").collect(),
        Format::Doc => {
            let mut doc = Map::new();
            doc.insert("command".into(), Value::String(command.into()));
            doc.insert(
                "records".into(),
                Value::Array(records.iter().map(Record::json).collect()),
            );
            serde_json::to_string_pretty(&Value::Object(doc)).unwrap() + "\n"
        }
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records.iter().filter(|r| r.kind == "value") {
                let cols: Vec<String> = ["z_re", "z_im", "R_re", "R_im", "abs_err_vs_oracle"]
                    .iter()
                    .map(|k| r.get(k).map(Field::text).unwrap_or_default())
                    .collect();
                out.push_str(&cols.join(","));
                out.push('\n');
            }
            out
        }
    }
}
