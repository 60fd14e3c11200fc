//! Report rendering. JSON reports are flat objects tagged with the schema
//! version; CSV reports are plain header-plus-rows tables.

use ising_exact::numerics::float_string;
use ising_exact::series::{RationalSeries, SeriesDoc, SCHEMA};
use rug::{Float, Rational};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub table: Table,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            table: Table::default(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        self.fields.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        );
        self
    }

    pub fn table(mut self, table: Table) -> Self {
        self.table = table;
        self
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("schema".into(), json!(SCHEMA));
        top.insert("command".into(), json!(self.command));
        for (k, v) in &self.fields {
            top.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.table.to_csv(),
        }
    }
}

/// A computed real together with the working precision it carries.
pub fn real(x: &Float) -> Value {
    json!({ "value": float_string(x), "precision_bits": x.prec() })
}

pub fn real_f64(x: f64) -> Value {
    json!({ "value": format!("{x:e}"), "precision_bits": 53 })
}

pub fn exact(r: &Rational) -> Value {
    json!({ "value": r.to_string(), "exact": true })
}

/// The series interchange document fields, for flattening into a report.
pub fn series_fields(report: Report, s: &RationalSeries) -> Report {
    let doc = SeriesDoc::from(s);
    let mut table = Table::new(&["exponent", "coeff"]);
    for (k, c) in s.coeffs.iter().enumerate() {
        table.push(vec![
            Rational::from(&s.offset + k as u64).to_string(),
            c.to_string(),
        ]);
    }
    report
        .field("variable", doc.variable)
        .field("offset", doc.offset)
        .field("order", doc.order)
        .field("coeffs", doc.coeffs)
        .table(table)
}
