//! JSON and CSV artifacts.

use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use pseudofermion::{CheckReport, Error, SystemParams};
use serde::Serialize;

use crate::commands::CliError;
use crate::Common;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct JsonCheck<'a> {
    pub id: &'a str,
    pub description: &'a str,
    pub paper_ref: &'a str,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub version: &'static str,
    pub timestamp: String,
    pub params: SystemParams,
    pub pass: bool,
    pub checks: Vec<JsonCheck<'a>>,
}

impl<'a> JsonReport<'a> {
    pub fn new(common: &Common, report: &'a CheckReport) -> Self {
        Self {
            version: VERSION,
            timestamp: timestamp(common),
            params: report.params_echo,
            pass: report.all_pass(),
            checks: report
                .entries
                .iter()
                .map(|e| JsonCheck {
                    id: &e.id,
                    description: &e.description,
                    paper_ref: &e.relation,
                    residual: e.residual,
                    tol: e.tol,
                    pass: e.pass,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorObject {
    kind: &'static str,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorReport {
    version: &'static str,
    timestamp: String,
    params: SystemParams,
    error: ErrorObject,
}

/// A table cell. Numbers become full-precision scientific notation in CSV.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Serialize)]
struct TableReport<'a> {
    version: &'static str,
    timestamp: String,
    params: SystemParams,
    #[serde(flatten)]
    table: &'a Table,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `--fixed-timestamp` if given, otherwise seconds since the Unix epoch.
pub fn timestamp(common: &Common) -> String {
    match &common.fixed_timestamp {
        Some(s) => s.clone(),
        None => SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn emit_table(common: &Common, table: &Table) -> Result<(), CliError> {
    if common.json {
        let report = TableReport {
            version: VERSION,
            timestamp: timestamp(common),
            params: common.params(),
            table,
        };
        emit(common, &to_json(&report))
    } else {
        emit(common, &table.to_csv())
    }
}

pub fn emit_error(common: &Common, err: &Error) -> Result<(), CliError> {
    let report = ErrorReport {
        version: VERSION,
        timestamp: timestamp(common),
        params: common.params(),
        error: ErrorObject {
            kind: err.kind(),
            message: err.to_string(),
        },
    };
    emit(common, &to_json(&report))
}

/// Writes to `--out`, or to stdout.
pub fn emit(common: &Common, content: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}
