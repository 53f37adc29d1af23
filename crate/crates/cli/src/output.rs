//! Result serialization: CSV for sweeps, JSON for single instances.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

/// A row tagged with the task and matrix it came from.
pub fn record<T: Serialize>(task: &str, matrix: &str, row: &T) -> io::Result<Map<String, Value>> {
    let mut out = Map::new();
    out.insert("task".into(), Value::from(task));
    out.insert("matrix".into(), Value::from(matrix));
    match serde_json::to_value(row).map_err(io::Error::other)? {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("value".into(), other);
        }
    }
    Ok(out)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        _ => v.to_string(),
    }
}

fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes rows as CSV (columns from the first row) or as a JSON array.
pub fn write_rows(rows: &[Map<String, Value>], format: OutFormat, out: Option<&Path>) -> io::Result<()> {
    let mut w = open(out)?;
    match format {
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut w, rows).map_err(io::Error::other)?;
            writeln!(w)?;
        }
        OutFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            if let Some(first) = rows.first() {
                csv.write_record(first.keys())?;
            }
            for row in rows {
                csv.write_record(row.values().map(cell))?;
            }
            csv.flush()?;
        }
    }
    w.flush()
}

/// Writes one record as a JSON object, or as a one-row CSV.
pub fn write_single(row: Map<String, Value>, format: OutFormat, out: Option<&Path>) -> io::Result<()> {
    match format {
        OutFormat::Csv => write_rows(&[row], format, out),
        OutFormat::Json => {
            let mut w = open(out)?;
            serde_json::to_writer_pretty(&mut w, &row).map_err(io::Error::other)?;
            writeln!(w)?;
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        b: u32,
        a: Vec<usize>,
        c: Option<String>,
    }

    #[test]
    fn records_keep_field_order() {
        let r = record("t", "m", &Row { b: 1, a: vec![2, 3], c: None }).unwrap();
        let keys: Vec<&str> = r.keys().map(String::as_str).collect();
        assert_eq!(keys, ["task", "matrix", "b", "a", "c"]);
        let cells: Vec<String> = r.values().map(cell).collect();
        assert_eq!(cells, ["t", "m", "1", "2 3", ""]);
    }
}
