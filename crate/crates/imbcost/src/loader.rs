//! Confusion-matrix ingestion.
//!
//! CSV input has the header `tn,fp,fn,tp` and one matrix per row. JSON
//! input is an array of objects with the same four keys. Entries may be
//! fractional.

use std::fmt;

use imbcost_core::{ConfusionError, ConfusionMatrix};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Csv => "csv",
            InputFormat::Json => "json",
        })
    }
}

/// Where in the input a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(u64),
    Record(usize),
    LineColumn(usize, usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Record(r) => write!(f, "record {r}"),
            Location::LineColumn(l, c) => write!(f, "line {l}, column {c}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("no records")]
    NoRecords,
    #[error("{at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("{at}: {source}")]
    Invalid {
        at: Location,
        #[source]
        source: ConfusionError,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    tn: f64,
    fp: f64,
    #[serde(rename = "fn")]
    fn_: f64,
    tp: f64,
}

impl RawMatrix {
    fn into_matrix(self, at: Location) -> Result<ConfusionMatrix, LoadError> {
        ConfusionMatrix::new(self.tn, self.fp, self.fn_, self.tp)
            .map_err(|source| LoadError::Invalid { at, source })
    }
}

/// One parsed matrix and the place it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadedMatrix {
    pub at: Location,
    pub matrix: ConfusionMatrix,
}

pub fn load_matrices(text: &str, format: InputFormat) -> Result<Vec<LoadedMatrix>, LoadError> {
    let loaded = match format {
        InputFormat::Csv => load_csv(text)?,
        InputFormat::Json => load_json(text)?,
    };
    if loaded.is_empty() {
        return Err(LoadError::NoRecords);
    }
    Ok(loaded)
}

fn load_csv(text: &str) -> Result<Vec<LoadedMatrix>, LoadError> {
    if text.trim().is_empty() {
        return Err(LoadError::NoRecords);
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader.headers().map_err(|e| csv_syntax(&e, 1))?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names != ["tn", "fp", "fn", "tp"] {
        return Err(LoadError::Syntax {
            at: Location::Line(1),
            message: format!("expected header `tn,fp,fn,tp`, found `{}`", names.join(",")),
        });
    }

    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_syntax(&e, 0))?;
        let line = record.position().map_or(0, |p| p.line());
        let at = Location::Line(line);
        let raw: RawMatrix = record
            .deserialize(Some(&headers))
            .map_err(|e| LoadError::Syntax {
                at,
                message: e.to_string(),
            })?;
        out.push(LoadedMatrix {
            at,
            matrix: raw.into_matrix(at)?,
        });
    }
    Ok(out)
}

fn csv_syntax(e: &csv::Error, fallback_line: u64) -> LoadError {
    let line = e.position().map_or(fallback_line, |p| p.line());
    LoadError::Syntax {
        at: Location::Line(line),
        message: e.to_string(),
    }
}

fn load_json(text: &str) -> Result<Vec<LoadedMatrix>, LoadError> {
    if text.trim().is_empty() {
        return Err(LoadError::NoRecords);
    }
    let raw: Vec<RawMatrix> = serde_json::from_str(text).map_err(|e| LoadError::Syntax {
        at: Location::LineColumn(e.line(), e.column()),
        message: e.to_string(),
    })?;
    raw.into_iter()
        .enumerate()
        .map(|(i, m)| {
            let at = Location::Record(i + 1);
            Ok(LoadedMatrix {
                at,
                matrix: m.into_matrix(at)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let m = load_matrices(
            "tn,fp,fn,tp\n8000,1000,500,500\n40, 10, 10, 40\n",
            InputFormat::Csv,
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].matrix.tn(), 8000.0);
        assert_eq!(m[1].at, Location::Line(3));
        assert_eq!(m[1].matrix.tp(), 40.0);
    }

    #[test]
    fn csv_fractional_entries() {
        let m = load_matrices("tn,fp,fn,tp\n0.4,0.1,0.1,0.4\n", InputFormat::Csv).unwrap();
        assert_eq!(m[0].matrix.total(), 1.0);
    }

    #[test]
    fn csv_errors_carry_lines() {
        let err = load_matrices("tn,fp,fn,tp\n1,2,3,4\n1,x,3,4\n", InputFormat::Csv).unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");

        let err = load_matrices("tn,fp,fn,tp\n1,2,3,4\n1,-2,3,4\n", InputFormat::Csv).unwrap_err();
        assert!(
            matches!(
                err,
                LoadError::Invalid {
                    at: Location::Line(3),
                    ..
                }
            ),
            "{err}"
        );

        let err = load_matrices("a,b,c,d\n1,2,3,4\n", InputFormat::Csv).unwrap_err();
        assert!(err.to_string().starts_with("line 1:"));

        let err = load_matrices("tn,fp,fn,tp\n1,2,3\n", InputFormat::Csv).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
    }

    #[test]
    fn empty_inputs() {
        for (text, format) in [
            ("", InputFormat::Csv),
            ("tn,fp,fn,tp\n", InputFormat::Csv),
            ("  \n", InputFormat::Json),
            ("[]", InputFormat::Json),
        ] {
            let err = load_matrices(text, format).unwrap_err();
            assert!(matches!(err, LoadError::NoRecords), "{text:?}: {err}");
            assert_eq!(err.to_string(), "no records");
        }
    }

    #[test]
    fn json_records() {
        let text =
            r#"[{"tn": 40, "fp": 10, "fn": 10, "tp": 40}, {"tn": 1, "fp": 0, "fn": 0, "tp": 1}]"#;
        let m = load_matrices(text, InputFormat::Json).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1].at, Location::Record(2));

        let err = load_matrices(r#"[{"tn": 1, "fp": 0, "fn": 0}]"#, InputFormat::Json).unwrap_err();
        assert!(matches!(err, LoadError::Syntax { .. }));
        let err = load_matrices(
            r#"[{"tn": 0, "fp": 0, "fn": 0, "tp": 0}]"#,
            InputFormat::Json,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("record 1:"), "{err}");
        let err = load_matrices(
            "[{\"tn\": 1,\n \"fp\": 0, \"fn\": 0, \"tp\": 1, \"x\": 2}]",
            InputFormat::Json,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("line 2"), "{err}");
    }
}
