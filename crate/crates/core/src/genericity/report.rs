//! CSV encoding of per-trial records.
//!
//! One row per trial: `trial_index,v,outcome,minimizer,min_witness_coeff`.
//! Vectors are rational tokens joined by `;`; absent values are empty.

use serde::Serializer;

use super::{TrialOutcome, TrialRecord};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, parse_rational_list, Rational};

pub(crate) const TRIAL_HEADER: [&str; 5] = ["trial_index", "v", "outcome", "minimizer", "min_witness_coeff"];

pub(crate) fn optional_token<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn write_rows<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub(crate) fn trials_to_csv(records: &[TrialRecord]) -> String {
    write_rows(
        &TRIAL_HEADER,
        records.iter().map(|r| {
            vec![
                r.trial_index.to_string(),
                r.v.tokens(";"),
                r.outcome.as_str().to_string(),
                r.minimizer.as_ref().map(|x| x.tokens(";")).unwrap_or_default(),
                r.min_witness_coeff.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            ]
        }),
    )
}

/// Reads trial rows back, so that reports can be replayed.
pub fn parse_trial_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let line = k + 2;
        let perr = |message: String| Error::Parse { line, message };
        let row = row.map_err(|e| perr(e.to_string()))?;
        if row.len() != TRIAL_HEADER.len() {
            return Err(perr(format!("expected {} fields, found {}", TRIAL_HEADER.len(), row.len())));
        }
        let vector = |s: &str| -> Result<Option<_>> {
            if s.is_empty() {
                Ok(None)
            } else {
                parse_rational_list(s, ';').map(Some)
            }
        };
        out.push(TrialRecord {
            trial_index: row[0].parse().map_err(|_| perr("bad trial index".into()))?,
            v: vector(&row[1])?.ok_or_else(|| perr("missing objective".into()))?,
            outcome: TrialOutcome::parse(&row[2]).ok_or_else(|| perr(format!("unknown outcome {:?}", &row[2])))?,
            minimizer: vector(&row[3])?,
            min_witness_coeff: if row[4].is_empty() {
                None
            } else {
                Some(parse_rational(&row[4])?)
            },
        });
    }
    Ok(out)
}
