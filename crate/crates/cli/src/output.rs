//! Machine-readable output: CSV (data rows only) and JSON (full record).

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub p: u64,
    pub q: u64,
}

/// Named columns and string cells. Cells are strings so exact fractions and
/// long decimals survive serialization untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Cell `column` of row `row`.
    pub fn get(&self, row: usize, column: &str) -> Option<&str> {
        let i = self.columns.iter().position(|c| c == column)?;
        self.rows.get(row).map(|r| r[i].as_str())
    }
}

/// One command's output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub command: String,
    pub params: Option<ParamsRecord>,
    pub oracle_digits: Option<u64>,
    /// `None` when timing is suppressed.
    pub timing_ms: Option<u64>,
    /// Scalar results that are not per-row (fitted slopes, argmax, ...).
    pub summary: Vec<(String, String)>,
    pub table: Table,
}

impl OutputRecord {
    pub fn new(command: &str, table: Table) -> Self {
        Self {
            command: command.to_string(),
            params: None,
            oracle_digits: None,
            timing_ms: None,
            summary: Vec::new(),
            table,
        }
    }

    pub fn summarize(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .table
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .table
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().cloned().map(Value::String))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = Map::new();
        out.insert("schema_version".into(), SCHEMA_VERSION.into());
        out.insert("command".into(), self.command.clone().into());
        out.insert(
            "params".into(),
            serde_json::to_value(self.params).expect("plain struct"),
        );
        out.insert("oracle_digits".into(), self.oracle_digits.into());
        if let Some(ms) = self.timing_ms {
            out.insert("timing_ms".into(), ms.into());
        }
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        out.insert("summary".into(), Value::Object(summary));
        out.insert(
            "columns".into(),
            Value::Array(
                self.table
                    .columns
                    .iter()
                    .cloned()
                    .map(Value::String)
                    .collect(),
            ),
        );
        out.insert("rows".into(), Value::Array(rows));
        Value::Object(out)
    }
}

pub fn to_csv(table: &Table) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&table.columns).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
}

/// Renders `record` in `format`.
pub fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Csv => to_csv(&record.table),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&record.to_json()).expect("valid JSON");
            s.push('\n');
            s
        }
    }
}

#[derive(Debug)]
pub struct EmitError {
    pub path: Option<PathBuf>,
    pub source: io::Error,
}

impl fmt::Display for EmitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "cannot write {}: {}", p.display(), self.source),
            None => write!(f, "cannot write to standard output: {}", self.source),
        }
    }
}

impl std::error::Error for EmitError {}

/// Writes `record` to `destination`, or to standard output when `None`.
pub fn emit(
    record: &OutputRecord,
    format: Format,
    destination: Option<&Path>,
) -> Result<(), EmitError> {
    let text = render(record, format);
    match destination {
        Some(path) => fs::write(path, text).map_err(|source| EmitError {
            path: Some(path.to_path_buf()),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| EmitError { path: None, source })
        }
    }
}

pub fn parse_csv(text: &str) -> Result<Table, csv::Error> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok(Table { columns, rows })
}

pub fn parse_json(text: &str) -> Result<OutputRecord, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let field = |k: &str| v.get(k).ok_or_else(|| format!("missing field {k:?}"));
    if field("schema_version")?.as_str() != Some(SCHEMA_VERSION) {
        return Err("unsupported schema_version".into());
    }
    let strings = |val: &Value| -> Result<Vec<String>, String> {
        val.as_array()
            .ok_or("expected an array")?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| "expected a string".to_string())
            })
            .collect()
    };
    let columns = strings(field("columns")?)?;
    let rows = field("rows")?
        .as_array()
        .ok_or("rows must be an array")?
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| {
                    row.get(c)
                        .and_then(Value::as_str)
                        .map(str::to_string)
                        .ok_or_else(|| format!("row is missing column {c:?}"))
                })
                .collect()
        })
        .collect::<Result<_, String>>()?;
    let summary = field("summary")?
        .as_object()
        .ok_or("summary must be an object")?
        .iter()
        .map(|(k, val)| {
            Ok((
                k.clone(),
                val.as_str()
                    .ok_or("summary values are strings")?
                    .to_string(),
            ))
        })
        .collect::<Result<_, String>>()?;
    Ok(OutputRecord {
        command: field("command")?
            .as_str()
            .ok_or("command must be a string")?
            .to_string(),
        params: serde_json::from_value(field("params")?.clone()).map_err(|e| e.to_string())?,
        oracle_digits: field("oracle_digits")?.as_u64(),
        timing_ms: v.get("timing_ms").and_then(Value::as_u64),
        summary,
        table: Table { columns, rows },
    })
}
