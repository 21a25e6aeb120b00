use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One invocation's output. Every number that is not a small count is a
/// decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Term {
        rows: Vec<TermRow>,
    },
    Sequence {
        name: String,
        oeis: String,
        digits_only: bool,
        /// Set when the digit budget stopped the run early.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        last_complete: Option<u32>,
        rows: Vec<SeqRow>,
    },
    Residues {
        name: String,
        modulus: String,
        stabilization: StabilizationRow,
        rows: Vec<ResidueRow>,
    },
    Trajectory {
        a: String,
        class: String,
        precision_used: u32,
        iterations_used: usize,
        witness: WitnessRow,
        fixed_point: Option<FixedPointRow>,
        notes: Vec<String>,
        rows: Vec<IterateRow>,
    },
    TwoCycle {
        a: String,
        rows: Vec<CycleRow>,
    },
    Scan {
        rows: Vec<ScanRow>,
    },
    Cobweb {
        a: String,
        x0: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        written_to: Option<String>,
        rows: Vec<SegmentRow>,
        curve: Vec<PointRow>,
    },
    Verify {
        suite: String,
        passed: bool,
        checks: usize,
        failures: usize,
        rows: Vec<CheckRow>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRow {
    pub a: String,
    pub b: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqRow {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub digits: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<String>,
    /// Display only, e.g. `3.6053e80`.
    pub sci: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub n: u32,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizationRow {
    pub stabilized: bool,
    pub n0: Option<u32>,
    pub residue: Option<String>,
    pub window: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessRow {
    Fixed {
        omega: String,
        exact: Option<String>,
    },
    Cycle {
        u: String,
        v: String,
        exact: Option<(String, String)>,
    },
    Divergence {
        min_low: String,
        max_high: String,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointRow {
    pub omega: String,
    pub exact: Option<String>,
    pub derivative: String,
    pub local_class: String,
    pub numerically_neutral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateRow {
    pub n: usize,
    pub x: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleRow {
    pub u: String,
    pub v: String,
    pub exact: Option<(String, String)>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: String,
    pub class: String,
    pub omega: Option<String>,
    pub derivative: Option<String>,
    pub local_class: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRow {
    pub x1: String,
    pub y1: String,
    pub x2: String,
    pub y2: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRow {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// A header and string rows; CSV output is one or more of these separated
/// by blank lines.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn opt(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

impl Payload {
    fn tables(&self) -> Vec<Table> {
        match self {
            Payload::Term { rows } => vec![Table {
                header: vec!["a", "b", "value"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.a.clone(), r.b.clone(), r.value.clone()])
                    .collect(),
            }],
            Payload::Sequence {
                rows, digits_only, ..
            } => {
                let (header, rows) = if *digits_only {
                    (
                        vec!["n", "digits", "leading"],
                        rows.iter()
                            .map(|r| vec![r.n.to_string(), r.digits.to_string(), opt(&r.leading)])
                            .collect(),
                    )
                } else {
                    (
                        vec!["n", "value"],
                        rows.iter().map(|r| vec![r.n.to_string(), opt(&r.value)]).collect(),
                    )
                };
                vec![Table { header, rows }]
            }
            Payload::Residues { rows, .. } => vec![Table {
                header: vec!["n", "residue"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.n.to_string(), r.residue.clone()])
                    .collect(),
            }],
            Payload::Trajectory { rows, .. } => vec![Table {
                header: vec!["n", "x"],
                rows: rows.iter().map(|r| vec![r.n.to_string(), r.x.clone()]).collect(),
            }],
            Payload::TwoCycle { rows, .. } => vec![Table {
                header: vec!["u", "v", "exact_u", "exact_v", "residual"],
                rows: rows
                    .iter()
                    .map(|r| {
                        let (eu, ev) = r.exact.clone().unwrap_or_default();
                        vec![r.u.clone(), r.v.clone(), eu, ev, r.residual.clone()]
                    })
                    .collect(),
            }],
            Payload::Scan { rows } => vec![Table {
                header: vec!["a", "class", "omega", "derivative", "local_class", "error"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.a.clone(),
                            r.class.clone(),
                            opt(&r.omega),
                            opt(&r.derivative),
                            r.local_class.clone(),
                            opt(&r.error),
                        ]
                    })
                    .collect(),
            }],
            Payload::Cobweb { rows, curve, .. } => vec![
                Table {
                    header: vec!["x1", "y1", "x2", "y2"],
                    rows: rows
                        .iter()
                        .map(|r| vec![r.x1.clone(), r.y1.clone(), r.x2.clone(), r.y2.clone()])
                        .collect(),
                },
                Table {
                    header: vec!["x", "y"],
                    rows: curve.iter().map(|p| vec![p.x.clone(), p.y.clone()]).collect(),
                },
            ],
            Payload::Verify { rows, .. } => vec![Table {
                header: vec!["check", "passed", "detail"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.check.clone(), r.passed.to_string(), r.detail.clone()])
                    .collect(),
            }],
        }
    }
}

/// RFC 4180 CSV of the payload's tables.
pub fn to_csv(payload: &Payload) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for (i, table) in payload.tables().into_iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.header).map_err(csv_err)?;
        for row in &table.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        out.extend(w.into_inner().map_err(|e| Error::Io(e.to_string()))?);
    }
    Ok(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

impl OutputRecord {
    pub fn new(command: Vec<String>, payload: Payload) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command,
            payload,
            warnings: Vec::new(),
        }
    }

    /// JSON goes out as a single object. CSV carries only the rows, so the
    /// warnings are sent to stderr instead.
    pub fn emit(&self, format: Format, out: &mut impl Write, err: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)
                    .map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out)?;
            }
            Format::Csv => {
                out.write_all(&to_csv(&self.payload)?)?;
                for w in &self.warnings {
                    writeln!(err, "warning: {w}")?;
                }
            }
        }
        Ok(())
    }
}

/// `d.dddde<exp>` from a decimal string, five significant digits, truncated.
pub fn sci_echo(decimal: &str) -> String {
    let exp = decimal.len() - 1;
    let head = &decimal[..1];
    let tail = &decimal[1..decimal.len().min(5)];
    if tail.is_empty() {
        format!("{head}e{exp}")
    } else {
        format!("{head}.{tail}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci() {
        assert_eq!(sci_echo("7"), "7e0");
        assert_eq!(sci_echo("943"), "9.43e2");
        assert_eq!(sci_echo("360539999"), "3.6053e8");
    }

    #[test]
    fn csv_quoting_and_sections() {
        let p = Payload::Cobweb {
            a: "1.1".into(),
            x0: "10".into(),
            written_to: None,
            rows: vec![SegmentRow {
                x1: "1".into(),
                y1: "2".into(),
                x2: "3".into(),
                y2: "4".into(),
            }],
            curve: vec![PointRow {
                x: "a,b".into(),
                y: "5".into(),
            }],
        };
        let text = String::from_utf8(to_csv(&p).unwrap()).unwrap();
        assert_eq!(text, "x1,y1,x2,y2\n1,2,3,4\n\nx,y\n\"a,b\",5\n");
    }

    #[test]
    fn json_round_trip() {
        let r = OutputRecord::new(
            vec!["seq".into()],
            Payload::Sequence {
                name: "beta".into(),
                oeis: "A121265".into(),
                digits_only: false,
                last_complete: None,
                rows: vec![SeqRow {
                    n: 25,
                    value: Some("19563802363305".into()),
                    digits: 14,
                    leading: None,
                    sci: "1.9563e13".into(),
                }],
            },
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<OutputRecord>(&text).unwrap(), r);
    }
}
