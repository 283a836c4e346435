use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::io(p.display().to_string(), e))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut out = open(path)?;
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::usage(format!("serializing output: {e}")))?;
    finish(writeln!(out, "{text}").and_then(|_| out.flush()))
}

/// A closed pipe downstream (`| head`) is not an error.
fn finish(res: io::Result<()>) -> Result<()> {
    match res {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::io("output", e)),
        _ => Ok(()),
    }
}

/// Header plus rows, all cells already formatted.
pub fn write_csv(header: &[String], rows: &[Vec<String>], path: Option<&Path>) -> Result<()> {
    let mut writer = csv::Writer::from_writer(open(path)?);
    let written = std::iter::once(header)
        .chain(rows.iter().map(Vec::as_slice))
        .try_for_each(|record| writer.write_record(record));
    match written {
        Err(e) => match e.into_kind() {
            csv::ErrorKind::Io(io) => finish(Err(io)),
            kind => Err(CliError::usage(format!("csv output: {kind:?}"))),
        },
        Ok(()) => finish(writer.flush()),
    }
}
