//! Tabular output shared by every subcommand.
//!
//! Numbers are rendered by hand (shortest round-trip, lowercase `e`) so the
//! bytes never depend on locale or on serializer defaults.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};
use crate::numbers::sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => sci(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> CliResult<Value> {
        Ok(match self {
            Cell::Num(x) => {
                let n = serde_json::Number::from_f64(*x)
                    .ok_or_else(|| CliError::Numerical(format!("non-finite value {x}")))?;
                Value::Number(n)
            }
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Null => Value::Null,
        })
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<isize> for Cell {
    fn from(n: isize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// A header plus rows of equal width.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric value at `(row, column name)`, if present.
    pub fn num(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    /// Rejects NaN and infinities before anything is written.
    pub fn check_finite(&self) -> CliResult<()> {
        for row in &self.rows {
            for (cell, name) in row.iter().zip(&self.header) {
                if let Cell::Num(x) = cell {
                    if !x.is_finite() {
                        return Err(CliError::Numerical(format!("non-finite value in column {name}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    fn object(&self, row: &[Cell]) -> CliResult<Value> {
        let mut map = Map::new();
        for (name, cell) in self.header.iter().zip(row) {
            map.insert(name.clone(), cell.json()?);
        }
        Ok(Value::Object(map))
    }

    /// A single row prints as one object, anything else as an array.
    pub fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        let value = if self.rows.len() == 1 {
            self.object(&self.rows[0])?
        } else {
            Value::Array(self.rows.iter().map(|r| self.object(r)).collect::<CliResult<_>>()?)
        };
        serde_json::to_writer(&mut out, &value).map_err(std::io::Error::other)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> CliResult<()> {
        self.check_finite()?;
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn to_string(&self, format: Format) -> CliResult<String> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(String::from_utf8(buf).expect("output is ASCII"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["nu", "n", "err", "tag"]);
        t.push(vec![1000.0.into(), 3usize.into(), Some(4.7e-12).into(), "asymptotic".into()]);
        t.push(vec![100.0.into(), 2usize.into(), Cell::Null, "asymptotic".into()]);
        t
    }

    #[test]
    fn csv_uses_scientific_notation() {
        let s = sample().to_string(Format::Csv).unwrap();
        assert_eq!(s, "nu,n,err,tag\n1e3,3,4.7e-12,asymptotic\n1e2,2,,asymptotic\n");
    }

    #[test]
    fn json_rows() {
        let s = sample().to_string(Format::Json).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v[0]["err"].as_f64(), Some(4.7e-12));
        assert!(v[1]["err"].is_null());
        let mut one = Table::new(["x"]);
        one.push(vec![1.5.into()]);
        assert_eq!(one.to_string(Format::Json).unwrap(), "{\"x\":1.5}\n");
    }

    #[test]
    fn non_finite_is_a_numerical_failure() {
        let mut t = Table::new(["x"]);
        t.push(vec![f64::NAN.into()]);
        assert_eq!(t.to_string(Format::Csv).unwrap_err().exit_code(), 3);
    }
}
