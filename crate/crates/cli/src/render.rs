use std::fmt::Display;
use std::fmt::Write;

use braidrep::matrix::Matrix;
use braidrep::report::CheckReport;
use braidrep::ring::{LaurentPoly, RingElem};

/// Rows of a matrix with every column padded to its widest entry.
pub fn matrix_text<R: RingElem + Display, L: Display>(labels: &[L], m: &Matrix<R>) -> String {
    let header: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect();
    let label_width = header.iter().map(|h| h.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].chars().count())
                .chain(header.get(c).map(|h| h.chars().count()))
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    if header.len() == m.cols() {
        let _ = write!(out, "{:label_width$}  ", "");
        let cols: Vec<String> = header.iter().zip(&widths).map(|(h, w)| pad(h, *w)).collect();
        let _ = writeln!(out, "{}", cols.join("  ").trim_end());
    }
    for (r, row) in cells.iter().enumerate() {
        if header.len() == m.rows() {
            let _ = write!(out, "{}  ", pad(&header[r], label_width));
        }
        let cols: Vec<String> = row.iter().zip(&widths).map(|(x, w)| pad(x, *w)).collect();
        let _ = writeln!(out, "{}", cols.join("  ").trim_end());
    }
    out
}

fn pad(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(width.saturating_sub(n)))
}

pub fn report_text(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", r.check, if r.pass { "PASS" } else { "FAIL" });
    for item in &r.items {
        let _ = write!(out, "  {} {}", if item.pass { "ok  " } else { "FAIL" }, item.name);
        if let Some(m) = &item.mismatch {
            let diff = serde_json::from_value::<LaurentPoly>(m.diff.clone())
                .map_or_else(|_| m.diff.to_string(), |p| p.to_string());
            let _ = write!(
                out,
                " (first mismatch at row {}, col {}: difference {diff})",
                m.row, m.col
            );
        }
        out.push('\n');
    }
    out
}
