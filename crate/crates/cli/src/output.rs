//! Output records and their JSON / CSV renderings.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), so both formats
//! carry the same decimal strings. A column holding a value outside the
//! floating range is written in log space for every row: `{"log10_mag", "sign"}`
//! in JSON, `<name>_log10_mag` and `<name>_sign` in CSV.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qdeform_core::LogReal;
use serde_json::{Map, Number, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A real that may leave the floating range.
    Real(LogReal),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<LogReal> for Cell {
    fn from(v: LogReal) -> Self {
        Cell::Real(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_owned(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for table {}",
            self.name
        );
        self.rows.push(row);
    }

    /// Columns that must be written in log space.
    fn log_columns(&self) -> Vec<bool> {
        (0..self.columns.len())
            .map(|j| {
                self.rows.iter().any(|r| match &r[j] {
                    Cell::Real(v) => !v.is_zero() && !v.to_f64().is_finite(),
                    _ => false,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub command: String,
    pub params: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record {
            command: command.to_owned(),
            params: Vec::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Cell>) {
        self.params.push((key.to_owned(), value.into()));
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    /// Adds a one-row table.
    pub fn summary(&mut self, name: &str, fields: Vec<(&str, Cell)>) {
        let cols: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
        let mut t = Table::new(name, &cols);
        t.push(fields.into_iter().map(|(_, v)| v).collect());
        self.tables.push(t);
    }
}

/// 17 significant digits with a signed exponent (`1.0000000000000000e+0`),
/// the form the JSON writer keeps verbatim.
pub fn fmt_real(v: f64) -> String {
    let s = format!("{v:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// `(log10|v|, sign)`; zero has no magnitude.
fn log_parts(v: LogReal) -> (Option<f64>, i64) {
    if v.is_zero() {
        (None, 0)
    } else {
        (Some(v.log10_abs()), i64::from(v.sign()))
    }
}

fn as_log(c: &Cell) -> Option<LogReal> {
    match c {
        Cell::Real(v) => Some(*v),
        Cell::Num(v) if v.is_finite() => Some(LogReal::from_f64(*v)),
        _ => None,
    }
}

fn json_num(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(
            fmt_real(v)
                .parse::<Number>()
                .expect("formatted float parses as a JSON number"),
        )
    } else {
        Value::Null
    }
}

fn json_cell(c: &Cell, log: bool) -> Value {
    if log {
        if let Some(v) = as_log(c) {
            let (mag, sign) = log_parts(v);
            let mut m = Map::new();
            m.insert("log10_mag".into(), mag.map_or(Value::Null, json_num));
            m.insert("sign".into(), Value::from(sign));
            return Value::Object(m);
        }
    }
    match c {
        Cell::Num(v) => json_num(*v),
        Cell::Real(v) => json_num(v.to_f64()),
        Cell::Int(v) => Value::from(*v),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Null => Value::Null,
    }
}

fn csv_plain(c: &Cell) -> String {
    match c {
        Cell::Num(v) if v.is_finite() => fmt_real(*v),
        Cell::Real(v) if v.to_f64().is_finite() => fmt_real(v.to_f64()),
        Cell::Num(_) | Cell::Real(_) | Cell::Null => String::new(),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

pub fn to_json(rec: &Record) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), Value::String(rec.command.clone()));
    let params: Map<String, Value> = rec
        .params
        .iter()
        .map(|(k, v)| (k.clone(), json_cell(v, false)))
        .collect();
    doc.insert("params".into(), Value::Object(params));
    let mut tables = Map::new();
    for t in &rec.tables {
        let logs = t.log_columns();
        let rows: Vec<Value> = t
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = t
                    .columns
                    .iter()
                    .zip(r)
                    .zip(&logs)
                    .map(|((k, c), &log)| (k.clone(), json_cell(c, log)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        tables.insert(t.name.clone(), Value::Array(rows));
    }
    doc.insert("tables".into(), Value::Object(tables));
    doc.insert(
        "warnings".into(),
        Value::Array(rec.warnings.iter().cloned().map(Value::String).collect()),
    );
    Value::Object(doc)
}

pub fn render_json(rec: &Record) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(rec)).expect("records serialize");
    s.push('\n');
    s
}

/// The CSV tables of a record: `params` (key, value), every data table, and
/// `warnings` (message).
pub fn csv_tables(rec: &Record) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    let mut params = Table::new("params", &["key", "value"]);
    for (k, v) in &rec.params {
        params.push(vec![Cell::Text(k.clone()), v.clone()]);
    }
    out.push(("params".to_owned(), table_csv(&params)?));
    for t in &rec.tables {
        out.push((t.name.clone(), table_csv(t)?));
    }
    let mut warnings = Table::new("warnings", &["message"]);
    for w in &rec.warnings {
        warnings.push(vec![Cell::Text(w.clone())]);
    }
    out.push(("warnings".to_owned(), table_csv(&warnings)?));
    Ok(out)
}

fn table_csv(t: &Table) -> Result<String, CliError> {
    let logs = t.log_columns();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = Vec::new();
    for (name, &log) in t.columns.iter().zip(&logs) {
        if log {
            header.push(format!("{name}_log10_mag"));
            header.push(format!("{name}_sign"));
        } else {
            header.push(name.clone());
        }
    }
    w.write_record(&header)?;
    for r in &t.rows {
        let mut fields = Vec::new();
        for (c, &log) in r.iter().zip(&logs) {
            match (log, as_log(c)) {
                (true, Some(v)) => {
                    let (mag, sign) = log_parts(v);
                    fields.push(mag.map(fmt_real).unwrap_or_default());
                    fields.push(sign.to_string());
                }
                (true, None) => {
                    fields.push(String::new());
                    fields.push(String::new());
                }
                (false, _) => fields.push(csv_plain(c)),
            }
        }
        w.write_record(&fields)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// CSV on a stream: each table preceded by a `# <name>` line, tables
/// separated by a blank line.
pub fn render_csv_stream(rec: &Record) -> Result<String, CliError> {
    let mut s = String::new();
    for (i, (name, body)) in csv_tables(rec)?.into_iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        s.push_str(&format!("# {name}\n"));
        s.push_str(&body);
    }
    Ok(s)
}

/// `dir/stem.csv` + `name` → `dir/stem.name.csv`.
pub fn csv_path(base: &Path, name: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_owned());
    base.with_file_name(format!("{stem}.{name}.csv"))
}

pub fn write_csv_files(rec: &Record, base: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut paths = Vec::new();
    for (name, body) in csv_tables(rec)? {
        let path = csv_path(base, &name);
        fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn write_json_file(rec: &Record, path: &Path) -> Result<(), CliError> {
    let mut f = fs::File::create(path)?;
    f.write_all(render_json(rec).as_bytes())?;
    Ok(())
}
