// SPDX-License-Identifier: Apache-2.0
//! Metric report records, written as JSON lines or CSV.
//!
//! Numbers are rounded to 6 significant digits before rendering and fields
//! always appear in the same order, so identical inputs give identical bytes.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::ccns::CcnsMatrix;
use crate::error::{GamError, Result};
use crate::homophily::HomophilyResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    JsonLines,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = GamError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "json-lines" => Ok(ReportFormat::JsonLines),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(GamError::input(format!("unknown report format {other:?}"))),
        }
    }
}

/// Round to 6 significant digits.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

/// One report line. Absent fields are omitted from JSON and left empty in CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub metric: String,
    pub k: usize,
    pub split: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub performance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_ccns: Option<f64>,
    /// `Some(None)` renders as `null`: a correlation that is undefined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pearson: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
}

impl Record {
    fn base(metric: &str, k: usize, split: &str) -> Self {
        Self {
            metric: metric.to_string(),
            k,
            split: split.to_string(),
            step: None,
            performance: None,
            mean: None,
            std: None,
            excluded: None,
            num_classes: None,
            matrix: None,
            d_ccns: None,
            pearson: None,
            direction: None,
        }
    }

    pub fn homophily(metric: &str, k: usize, split: &str, result: &HomophilyResult) -> Self {
        Self {
            mean: Some(round_sig6(result.mean)),
            std: Some(round_sig6(result.std)),
            excluded: Some(result.num_excluded),
            ..Self::base(metric, k, split)
        }
    }

    /// CCNS matrix (row-major) with its distance; `excluded` counts zero histograms.
    pub fn ccns(metric: &str, split: &str, matrix: &CcnsMatrix) -> Self {
        Self {
            excluded: Some(matrix.zero_histograms),
            num_classes: Some(matrix.num_classes()),
            matrix: Some(matrix.row_major().iter().map(|&x| round_sig6(x)).collect()),
            d_ccns: Some(round_sig6(matrix.distance())),
            ..Self::base(metric, matrix.hops(), split)
        }
    }

    /// Per-step summary of a trajectory.
    pub fn step_summary(
        metric: &str,
        k: usize,
        split: &str,
        step: u64,
        performance: Option<f64>,
        mean: f64,
        std: Option<f64>,
    ) -> Self {
        Self {
            step: Some(step),
            performance: performance.map(round_sig6),
            mean: Some(round_sig6(mean)),
            std: std.map(round_sig6),
            ..Self::base(metric, k, split)
        }
    }

    pub fn correlation(metric: &str, k: usize, split: &str, pearson: Option<f64>) -> Self {
        let direction = match pearson {
            Some(p) if p > 0.0 => "positive",
            Some(p) if p < 0.0 => "negative",
            Some(_) => "none",
            None => "undefined",
        };
        Self {
            pearson: Some(pearson.map(round_sig6)),
            direction: Some(direction.to_string()),
            ..Self::base(metric, k, split)
        }
    }
}

const CSV_HEADER: [&str; 13] = [
    "metric",
    "k",
    "split",
    "step",
    "performance",
    "mean",
    "std",
    "excluded",
    "num_classes",
    "d_ccns",
    "pearson",
    "direction",
    "matrix",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Streams records in one format; the CSV header is emitted once, before the first record.
pub struct ReportWriter<W: Write> {
    format: ReportFormat,
    out: W,
    header_written: bool,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(out: W, format: ReportFormat) -> Self {
        Self { format, out, header_written: false }
    }

    pub fn write(&mut self, record: &Record) -> std::io::Result<()> {
        match self.format {
            ReportFormat::JsonLines => {
                serde_json::to_writer(&mut self.out, record)?;
                self.out.write_all(b"\n")
            }
            ReportFormat::Csv => {
                let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.out);
                if !self.header_written {
                    csv.write_record(CSV_HEADER)?;
                    self.header_written = true;
                }
                let matrix = record
                    .matrix
                    .as_ref()
                    .map(|m| m.iter().map(f64::to_string).collect::<Vec<_>>().join(";"))
                    .unwrap_or_default();
                csv.write_record([
                    record.metric.clone(),
                    record.k.to_string(),
                    record.split.clone(),
                    opt(&record.step),
                    opt(&record.performance),
                    opt(&record.mean),
                    opt(&record.std),
                    opt(&record.excluded),
                    opt(&record.num_classes),
                    opt(&record.d_ccns),
                    record.pearson.flatten().map(|p| p.to_string()).unwrap_or_default(),
                    opt(&record.direction),
                    matrix,
                ])?;
                csv.flush()
            }
        }
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Render a batch of records.
pub fn write_report(records: &[Record], format: ReportFormat, out: impl Write) -> std::io::Result<()> {
    let mut writer = ReportWriter::new(out, format);
    for r in records {
        writer.write(r)?;
    }
    writer.flush()
}
