use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    LiftAnalytic,
    LiftChebyshev,
    LiftFd,
    Corollary,
    Catalog,
}

/// One row of output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub r: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub error_estimate: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("format `{s}` must be csv or json")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn write_records<W: Write>(records: &[OutputRecord], format: Format, mut out: W) -> Result<(), RecordError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for rec in records {
                w.serialize(rec)?;
            }
            if records.is_empty() {
                w.write_record(["r", "value_re", "value_im", "error_estimate", "method"])?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn read_records<R: Read>(input: R, format: Format) -> Result<Vec<OutputRecord>, RecordError> {
    match format {
        Format::Csv => csv::Reader::from_reader(input)
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(RecordError::from),
        Format::Json => Ok(serde_json::from_reader(input)?),
    }
}
