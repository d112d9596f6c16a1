//! Tagged result tables and their CSV / JSON encodings.
//!
//! CSV output starts with `# key: value` metadata lines, then a header row.
//! Reals are written in the shortest decimal form that parses back to the
//! same `f64`, so a written table can be read back exactly.

use std::fmt;
use std::io::Write;

use serde_json::{json, Map, Value as Json};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Real,
    Int,
    Text,
}

impl ColumnType {
    fn name(self) -> &'static str {
        match self {
            ColumnType::Real => "real",
            ColumnType::Int => "int",
            ColumnType::Text => "string",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "real" => Some(ColumnType::Real),
            "int" => Some(ColumnType::Int),
            "string" => Some(ColumnType::Text),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Cell::Real(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Cell::Real(v) if v.is_finite() => json!(v),
            Cell::Real(v) => json!(format_real(*v)),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Real(v) => f.write_str(&format_real(*v)),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Shortest round-trip decimal; `inf`, `-inf` and `NaN` for non-finite values.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_owned()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{v:?}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnType,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    /// Ordered `(key, value)` pairs.
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl ResultTable {
    pub fn new(columns: &[(&str, ColumnType)]) -> Self {
        ResultTable {
            metadata: Vec::new(),
            columns: columns
                .iter()
                .map(|&(name, kind)| Column {
                    name: name.to_owned(),
                    kind,
                })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.set_meta(key, value);
        self
    }

    pub fn set_meta(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_owned(), value)),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Real values of one column, by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_real()).collect()
    }

    fn types_line(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.kind.name())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "# types: {}", self.types_line())?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.columns.iter().map(|c| c.name.as_str()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), json!(v));
        }
        let columns: Vec<Json> = self
            .columns
            .iter()
            .map(|c| json!({"name": c.name, "type": c.kind.name()}))
            .collect();
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| Json::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({"metadata": meta, "columns": columns, "rows": rows});
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("tables are UTF-8")
    }

    /// Parses a table written by [`ResultTable::write_csv`].
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut metadata = Vec::new();
        let mut body_start = 0;
        for line in text.lines() {
            let Some(rest) = line.strip_prefix("# ") else {
                break;
            };
            body_start += line.len() + 1;
            let (k, v) = rest
                .split_once(": ")
                .ok_or_else(|| CliError::Parse(format!("bad metadata line: {line}")))?;
            metadata.push((k.to_owned(), v.to_owned()));
        }
        let types_pos = metadata
            .iter()
            .position(|(k, _)| k == "types")
            .ok_or_else(|| CliError::Parse("missing types line".into()))?;
        let (_, types) = metadata.remove(types_pos);
        let kinds = types
            .split(',')
            .map(|s| ColumnType::parse(s).ok_or_else(|| CliError::Parse(format!("bad type {s}"))))
            .collect::<Result<Vec<_>, _>>()?;

        let mut reader = csv::Reader::from_reader(&text.as_bytes()[body_start.min(text.len())..]);
        let headers = reader.headers()?.clone();
        if headers.len() != kinds.len() {
            return Err(CliError::Parse("header and types disagree".into()));
        }
        let columns = headers
            .iter()
            .zip(&kinds)
            .map(|(name, &kind)| Column {
                name: name.to_owned(),
                kind,
            })
            .collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .zip(&kinds)
                .map(|(s, kind)| parse_cell(s, *kind))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(ResultTable {
            metadata,
            columns,
            rows,
        })
    }
}

fn parse_cell(s: &str, kind: ColumnType) -> Result<Cell, CliError> {
    let bad = || CliError::Parse(format!("cannot parse {s:?} as {}", kind.name()));
    Ok(match kind {
        ColumnType::Real => Cell::Real(s.parse().map_err(|_| bad())?),
        ColumnType::Int => Cell::Int(s.parse().map_err(|_| bad())?),
        ColumnType::Text => Cell::Text(s.to_owned()),
    })
}
