//! Rendering of command results in the three output formats.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A finished command: its JSON body, a text rendering, an optional table
/// for CSV, and whether every check it carries passed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub table: Option<Table>,
    pub ok: bool,
}

impl Report {
    pub fn new<T: Serialize>(body: &T, text: String, ok: bool) -> Self {
        Report { json: serde_json::to_value(body).expect("reports serialize"), text, table: None, ok }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    /// The rendered output, or `None` when the format does not apply.
    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(serde_json::to_string_pretty(&self.json).expect("json") + "\n"),
            Format::Text => Some(self.text.clone()),
            Format::Csv => self.table.as_ref().map(Table::to_csv),
        }
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}
