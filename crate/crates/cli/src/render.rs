use clap::ValueEnum;
use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::Value;

use nonlinear_sl2::verifier::Summary;
use nonlinear_sl2::{Check, VerificationReport};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    version: &'static str,
    spec: &'a Value,
    checks: &'a [Check],
    summary: Summary,
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        let mut s = parts.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn residual_cell(c: &Check) -> String {
    match (&c.residual, &c.exact_discrepancy) {
        (Some(r), _) => format!("{r:.3e}"),
        (None, Some(d)) => format!("off by {d}"),
        (None, None) => "exact".into(),
    }
}

const CHECK_HEADER: [&str; 5] = ["status", "check", "kind", "residual", "context"];

fn check_rows(report: &VerificationReport) -> Vec<Vec<String>> {
    report
        .checks
        .iter()
        .map(|c| {
            vec![
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.name.clone(),
                match c.kind {
                    nonlinear_sl2::CheckKind::Exact => "exact",
                    nonlinear_sl2::CheckKind::Numeric => "numeric",
                }
                .to_string(),
                residual_cell(c),
                c.context.clone(),
            ]
        })
        .collect()
}

pub fn report(spec: &Value, report: &VerificationReport, format: Format) -> Result<String, CliError> {
    let summary = report.summary();
    match format {
        Format::Json => json(&ReportDoc { version: env!("CARGO_PKG_VERSION"), spec, checks: &report.checks, summary }),
        Format::Csv => csv_text(&CHECK_HEADER, &check_rows(report)),
        Format::Table => {
            let mut s = table(&CHECK_HEADER, &check_rows(report));
            s.push_str(&format!("{} checks, {} passed, {} failed\n", summary.total, summary.passed, summary.failed));
            Ok(s)
        }
    }
}

pub fn matrix_rows(name: &str, m: &DMatrix<f64>, rows: &mut Vec<Vec<String>>) {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            rows.push(vec![name.to_string(), r.to_string(), c.to_string(), m[(r, c)].to_string()]);
        }
    }
}

pub fn matrix_block(name: &str, m: &DMatrix<f64>) -> String {
    let cells: Vec<Vec<String>> =
        (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| format!("{:.12}", m[(r, c)])).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut s = format!("{name}:\n");
    for row in cells {
        let parts: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str("  ");
        s.push_str(&parts.join("  "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
