use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Rounds to 12 significant digits so that output is stable across
/// platforms and re-parses to the same text.
pub fn sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn sig_opt(x: Option<f64>) -> Option<f64> {
    x.map(sig)
}

/// Writes records as JSON lines or as CSV with a header row.
pub fn emit<T: Serialize>(config: &RunConfig, rows: &[T]) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match &config.output {
        Some(path) => Box::new(File::create(path).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    match config.format {
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(|e| CliError::Io(e.to_string()))?;
                out.write_all(b"\n").map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in rows {
                w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    out.flush().map_err(|e| CliError::Io(e.to_string()))
}
