//! Rendering of result rows and verification reports.

use serde::Serialize;

use crate::models::{Convergence, ResultRow};
use crate::verify::VerifyReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

fn row_cells(r: &ResultRow) -> Vec<String> {
    vec![r.word.clone(), r.model.clone(), opt(&r.m), r.value.clone(), opt(&r.stabilized)]
}

const ROW_HEADER: [&str; 5] = ["word", "model", "m", "value", "stabilized"];

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut text = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                text.push_str("  ");
            }
            text.push_str(cell);
            text.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Rows from `eval`. The `stabilized` column is dropped in table form.
pub fn render_rows(rows: &[ResultRow], format: Format) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(row_cells).collect();
    match format {
        Format::Table => {
            let trimmed: Vec<Vec<String>> = cells
                .into_iter()
                .map(|mut r| {
                    r.pop();
                    r
                })
                .collect();
            table(&ROW_HEADER[..4], &trimmed)
        }
        Format::Csv => csv(&ROW_HEADER, &cells),
        Format::Json => json(&rows),
    }
}

pub fn render_convergence(c: &Convergence, format: Format) -> String {
    let cells: Vec<Vec<String>> = c.rows.iter().map(row_cells).collect();
    match format {
        Format::Table => {
            let mut out = table(&ROW_HEADER, &cells);
            match c.stable_from {
                Some(m) => out.push_str(&format!("stable from m = {m}\n")),
                None => out.push_str("not stable within the computed levels\n"),
            }
            out
        }
        Format::Csv => csv(&ROW_HEADER, &cells),
        Format::Json => json(c),
    }
}

pub fn render_verify(r: &VerifyReport, format: Format) -> String {
    match format {
        Format::Table => {
            let cells: Vec<Vec<String>> = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.clone(),
                        c.name.clone(),
                        c.cases.to_string(),
                        if c.passed { "pass" } else { "FAIL" }.to_owned(),
                        opt(&c.counterexample),
                    ]
                })
                .collect();
            let mut out = format!("seed {}  n-max {}  m-max {}\n", r.seed, r.n_max, r.m_max);
            out.push_str(&table(&["suite", "check", "cases", "result", "counterexample"], &cells));
            let failed = r.checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!("{} checks, {failed} failed\n", r.checks.len()));
            out
        }
        Format::Csv => {
            let cells: Vec<Vec<String>> = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        r.seed.to_string(),
                        c.suite.clone(),
                        c.name.clone(),
                        c.cases.to_string(),
                        c.passed.to_string(),
                        opt(&c.counterexample),
                    ]
                })
                .collect();
            csv(&["seed", "suite", "check", "cases", "passed", "counterexample"], &cells)
        }
        Format::Json => json(r),
    }
}
