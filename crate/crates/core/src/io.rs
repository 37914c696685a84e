//! Text encodings of snapshots and reports.
//!
//! Numbers are written with 17 significant digits so every `f64` survives a
//! round trip through the text form bit for bit. Output is UTF-8 with LF line
//! endings.

use std::fmt::Write;

use crate::doppler::DopplerReport;
use crate::field::{FieldSnapshot, Frame};

pub const SNAPSHOT_HEADER: &str = "x,re,im,density,current";
pub const REPORT_HEADER: &str = "v,k_predicted,k_measured,relative_error,regime,skipped_reason";

/// Scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `snap_{frame}_{index:06}.csv`
pub fn snapshot_file_name(frame: Frame, index: usize) -> String {
    format!("snap_{}_{index:06}.csv", frame.name())
}

/// One row per node: position, real and imaginary part, `|ψ|²` and the
/// supplied current.
pub fn snapshot_csv(snapshot: &FieldSnapshot, current: &[f64]) -> String {
    assert_eq!(current.len(), snapshot.values.len());
    let mut out = String::with_capacity(snapshot.values.len() * 120);
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    for ((x, z), j) in snapshot.grid.nodes().zip(&snapshot.values).zip(current) {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(x),
            fmt_f64(z.re),
            fmt_f64(z.im),
            fmt_f64(z.norm_sqr()),
            fmt_f64(*j)
        )
        .expect("writing to a String");
    }
    out
}

fn csv_text(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

/// Flat CSV form of a Doppler report; empty cells stand for missing values.
pub fn report_csv(report: &DopplerReport) -> String {
    let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(row.v),
            fmt_f64(row.k_predicted),
            opt(row.k_measured),
            opt(row.relative_error),
            row.regime,
            csv_text(row.skipped_reason.as_deref().unwrap_or(""))
        )
        .expect("writing to a String");
    }
    out
}
