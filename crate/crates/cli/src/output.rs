//! Report assembly and rendering as JSON, CSV or aligned text.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    ClaimFailed = 1,
    Resource = 2,
    Internal = 3,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ClaimFailed => "fail",
            Status::Resource => "resource",
            Status::Internal => "mismatch",
        }
    }
}

/// A command result: summary fields plus an optional table of rows.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub status: Status,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            fields: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn field(mut self, name: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((name, value.into()));
        self
    }

    pub fn columns(mut self, columns: &[&'static str]) -> Self {
        self.columns = columns.to_vec();
        self
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("command".into(), self.command.clone().into());
        obj.insert("status".into(), self.status.label().into());
        for (k, v) in &self.fields {
            obj.insert((*k).into(), v.clone());
        }
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| ((*c).to_string(), v.clone()))
                        .collect();
                    Value::Object(m)
                })
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON value");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let (columns, rows): (Vec<&str>, Vec<Vec<Value>>) = if self.columns.is_empty() {
            (
                self.fields.iter().map(|(k, _)| *k).collect(),
                vec![self.fields.iter().map(|(_, v)| v.clone()).collect()],
            )
        } else {
            (self.columns.clone(), self.rows.clone())
        };
        let mut out = String::new();
        let header: Vec<String> = columns.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in rows {
            let cells: Vec<String> = r.iter().map(|v| csv_escape(&plain(v))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.command, self.status.label());
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "  {k:<width$}  {}", plain(v));
        }
        if self.columns.is_empty() {
            return out;
        }
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| -> String {
            let parts: Vec<String> =
                items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            format!("  {}", parts.join("  ").trim_end())
        };
        let _ = writeln!(out, "{}", line(self.columns.clone()));
        for r in &cells {
            let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

/// Unquoted rendering: strings as-is, arrays space-separated, null empty.
fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
