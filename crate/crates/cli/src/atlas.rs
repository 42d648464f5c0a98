//! Atlas generation: enumerate isogeny classes for a list of prime powers,
//! compute their records in parallel, and stream them out in a canonical
//! order that does not depend on the parallelism degree.

use crate::record::AtlasRecord;
use basicav_core::weil::{enumerate_weil, PrimePower, WeilError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Jsonl,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "jsonl" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (json | jsonl | csv)")),
        }
    }
}

/// Validated atlas configuration.
#[derive(Debug, Clone)]
pub struct AtlasConfig {
    pub q_values: Vec<u64>,
    pub g: u32,
    pub format: OutputFormat,
    pub jobs: usize,
}

#[derive(Debug)]
pub enum AtlasError {
    Weil(WeilError),
    Slope(basicav_core::slopes::SlopeError),
    Io(std::io::Error),
}

impl std::fmt::Display for AtlasError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AtlasError::Weil(e) => write!(f, "{e}"),
            AtlasError::Slope(e) => write!(f, "{e}"),
            AtlasError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AtlasError {}

impl From<std::io::Error> for AtlasError {
    fn from(e: std::io::Error) -> Self {
        AtlasError::Io(e)
    }
}

/// Counts reported after an atlas run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasSummary {
    pub total: usize,
    pub ordinary: usize,
    pub supersingular: usize,
    pub basic: usize,
}

impl AtlasConfig {
    pub fn validate(&self) -> Result<Vec<PrimePower>, WeilError> {
        self.q_values.iter().map(|&q| PrimePower::from_q(q)).collect()
    }
}

/// Compute all atlas records for the configuration, in canonical order
/// (ascending q, then the coefficient order of the enumeration).
pub fn compute_records(cfg: &AtlasConfig) -> Result<Vec<AtlasRecord>, AtlasError> {
    let mut qs = cfg.validate().map_err(AtlasError::Weil)?;
    qs.sort_by_key(|q| q.q());
    qs.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut out = Vec::new();
    for q in qs {
        let polys = enumerate_weil(q, cfg.g).map_err(AtlasError::Weil)?;
        // Parallel map with an index key; the collect + sort makes the
        // result independent of scheduling.
        let mut records: Vec<(usize, AtlasRecord)> = pool.install(|| {
            polys
                .par_iter()
                .enumerate()
                .map(|(i, w)| AtlasRecord::build(w).map(|r| (i, r)))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(AtlasError::Slope)?;
        records.sort_by_key(|(i, _)| *i);
        out.extend(records.into_iter().map(|(_, r)| r));
    }
    Ok(out)
}

/// Run the atlas and write it to `sink`. Returns the summary counts.
pub fn write_atlas<W: Write>(cfg: &AtlasConfig, sink: &mut W) -> Result<AtlasSummary, AtlasError> {
    let records = compute_records(cfg)?;
    let summary = AtlasSummary {
        total: records.len(),
        ordinary: records.iter().filter(|r| r.is_ordinary).count(),
        supersingular: records.iter().filter(|r| r.is_supersingular).count(),
        basic: records.iter().filter(|r| r.is_basic).count(),
    };
    match cfg.format {
        OutputFormat::Jsonl => {
            for r in &records {
                serde_json::to_writer(&mut *sink, r).map_err(io_err)?;
                sink.write_all(b"\n")?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, &records).map_err(io_err)?;
            sink.write_all(b"\n")?;
        }
        OutputFormat::Csv => {
            writeln!(sink, "{}", AtlasRecord::csv_header())?;
            for r in &records {
                writeln!(sink, "{}", r.csv_row())?;
            }
        }
    }
    Ok(summary)
}

fn io_err(e: serde_json::Error) -> AtlasError {
    AtlasError::Io(std::io::Error::new(std::io::ErrorKind::Other, e))
}
