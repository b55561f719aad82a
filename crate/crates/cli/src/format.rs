//! Output encodings: JSON documents with fixed-precision floats, and CSV.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use galois_quantum::{Complex64, Operator, StateVector};

use crate::CliError;

/// Scientific notation with 17 significant digits. Negative zero prints as
/// zero so that sign noise never changes the bytes.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// A float serialized through [`fmt_float`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        RawValue::from_string(fmt_float(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

/// A complex number as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cplx(pub Complex64);

impl Serialize for Cplx {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&Num(self.0.re))?;
        seq.serialize_element(&Num(self.0.im))?;
        seq.end()
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// Square matrix, entries row-major as `[re, im]` pairs.
#[derive(Serialize, Debug)]
pub struct MatrixDoc {
    pub operator: String,
    pub dim: usize,
    pub entries: Vec<Cplx>,
}

impl MatrixDoc {
    pub fn new(name: impl Into<String>, op: &Operator) -> Self {
        MatrixDoc {
            operator: name.into(),
            dim: op.dim(),
            entries: op.entries().iter().copied().map(Cplx).collect(),
        }
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["row", "col", "re", "im"]);
        for (i, c) in self.entries.iter().enumerate() {
            t.push(vec![
                Cell::Int((i / self.dim) as i64),
                Cell::Int((i % self.dim) as i64),
                Cell::Float(c.0.re),
                Cell::Float(c.0.im),
            ]);
        }
        t
    }
}

/// State vector in the position basis.
#[derive(Serialize, Debug)]
pub struct StateDoc {
    pub dim: usize,
    pub amplitudes: Vec<Cplx>,
}

impl StateDoc {
    pub fn new(state: &StateVector) -> Self {
        StateDoc {
            dim: state.dim(),
            amplitudes: state.amplitudes().iter().copied().map(Cplx).collect(),
        }
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["index", "re", "im"]);
        for (i, c) in self.amplitudes.iter().enumerate() {
            t.push(vec![
                Cell::Int(i as i64),
                Cell::Float(c.0.re),
                Cell::Float(c.0.im),
            ]);
        }
        t
    }
}

/// The input form of a state; `dim` is optional and checked when present.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct StateInput {
    #[serde(default)]
    pub dim: Option<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateInput {
    pub fn parse(what: &str, text: &str) -> Result<StateVector, CliError> {
        let input: StateInput = serde_json::from_str(text).map_err(|e| CliError::Input {
            what: what.to_string(),
            message: e.to_string(),
        })?;
        if let Some(dim) = input.dim {
            if dim != input.amplitudes.len() {
                return Err(CliError::Input {
                    what: what.to_string(),
                    message: format!("dim {dim} but {} amplitudes", input.amplitudes.len()),
                });
            }
        }
        Ok(StateVector::from_amplitudes(
            input
                .amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(n) => serializer.serialize_i64(*n),
            Cell::Float(x) => Num(*x).serialize(serializer),
            Cell::Text(s) => serializer.serialize_str(s),
        }
    }
}

/// Rows with named columns, rendered as CSV or as a JSON array of objects
/// whose keys follow the column order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

struct Row<'a>(&'a [String], &'a [Cell]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()?;
            Ok(())
        };
        write(&mut w).expect("writing to memory");
        String::from_utf8(w.into_inner().expect("flushed")).expect("cells are UTF-8")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Row<'_>> = self.rows.iter().map(|r| Row(&self.columns, r)).collect();
        to_json(&rows)
    }
}
