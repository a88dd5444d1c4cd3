//! Tabular output shared by all subcommands.
//!
//! CSV: each section starts with a `# key=value,...` line carrying the
//! subcommand, its parameters and the seed, then a header row and the data.
//! Sections are separated by a blank line. JSON: one object with `meta` and
//! a `sections` map whose columns are arrays.

use std::io::Write;

use anyhow::Result;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Section {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Section {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Section {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub struct Report {
    pub meta: Vec<(String, Value)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Report {
            meta: vec![
                ("subcommand".into(), json!(subcommand)),
                ("seed".into(), json!(seed)),
            ],
            sections: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn section(mut self, s: Section) -> Self {
        self.sections.push(s);
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let meta: Vec<String> = self
            .meta
            .iter()
            .map(|(k, v)| match cell(v) {
                c if c.contains(',') => format!("{k}=\"{c}\""),
                c => format!("{k}={c}"),
            })
            .collect();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            writeln!(out, "# {},section={}", meta.join(","), s.name)?;
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&s.columns)?;
            for row in &s.rows {
                w.write_record(row.iter().map(cell))?;
            }
            w.flush()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().cloned().collect();
        let sections: Map<String, Value> = self
            .sections
            .iter()
            .map(|s| {
                let cols: Map<String, Value> = s
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        (
                            c.clone(),
                            Value::Array(s.rows.iter().map(|r| r[j].clone()).collect()),
                        )
                    })
                    .collect();
                (s.name.clone(), Value::Object(cols))
            })
            .collect();
        json!({ "meta": meta, "sections": sections })
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// JSON number for finite floats, `null` otherwise.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
