use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for the CSV form of a result.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a subcommand produced; `ok = false` means a violation was found.
pub struct Outcome {
    pub json: Value,
    pub table: Table,
    pub ok: bool,
}

impl Outcome {
    pub fn new(data: &impl Serialize, table: Table, ok: bool) -> Self {
        Self { json: serde_json::to_value(data).expect("report types serialize"), table, ok }
    }
}

pub fn emit_report(outcome: &Outcome, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&outcome.json).expect("values serialize");
            bytes.push(b'\n');
            bytes
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.table.header).expect("in-memory write");
            for row in &outcome.table.rows {
                w.write_record(row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
    }
}

pub fn write_out(bytes: &[u8], out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}
