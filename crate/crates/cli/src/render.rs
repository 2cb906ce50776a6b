use clap::ValueEnum;
use nondegen::{RatVector, Rational};
use num_traits::ToPrimitive;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Flat result of a command: one record per row, every field an exact
/// rational token or label. CSV and JSON are both rendered from this.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    /// An array with one object per row, keyed by column name.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("strings serialize");
        s.push('\n');
        s
    }
}

/// Field encoding shared by CSV and JSON: tokens joined by `;`.
pub fn field(v: &RatVector) -> String {
    v.tokens(";")
}

pub fn opt_field(v: Option<&RatVector>) -> String {
    v.map(field).unwrap_or_default()
}

fn approx(x: &Rational) -> String {
    match x.to_f64() {
        Some(f) => format!("{f}"),
        None => "?".into(),
    }
}

/// `  # ≈ (0.5, -1)` when hints are on, empty otherwise.
pub fn hint(on: bool, v: &RatVector) -> String {
    if !on {
        return String::new();
    }
    let parts: Vec<String> = v.iter().map(approx).collect();
    format!("  # ≈ ({})", parts.join(", "))
}

pub fn hint_scalar(on: bool, x: &Rational) -> String {
    if on {
        format!("  # ≈ {}", approx(x))
    } else {
        String::new()
    }
}
