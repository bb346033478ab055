use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A command result that can be written as CSV rows or as a JSON document.
pub trait Report: Serialize {
    fn csv_header(&self) -> Vec<&'static str>;

    fn csv_rows(&self) -> Vec<Vec<String>>;

    fn default_format(&self) -> Format;
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(report)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(report.csv_header())?;
            for row in report.csv_rows() {
                w.write_record(&row)?;
            }
            Ok(w.into_inner().map_err(|e| e.into_error())?)
        }
    }
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            f.write_all(bytes)
                .with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            Ok(out.flush()?)
        }
    }
}

pub(crate) fn num(v: f64) -> String {
    v.to_string()
}
