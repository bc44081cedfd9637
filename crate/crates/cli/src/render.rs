use std::fmt::Write as _;
use std::io::IsTerminal;

use serde_json::json;
use tristate_kofn::document::System;
use tristate_kofn::{Method, Outcome, StateDistribution};

pub const COLUMNS: [&str; 5] = ["r0", "r1", "r2", "R1", "R2"];
pub const CSV_HEADER: &str = "n,k1,k2,r0,r1,r2,R1,R2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// ANSI styling, on only for terminals without `NO_COLOR`.
pub fn styled() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

pub fn bold(text: &str) -> String {
    if styled() {
        format!("\x1b[1m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub fn fixed(v: f64) -> String {
    format!("{v:.10}")
}

pub fn csv_row(n: usize, k1: usize, k2: usize, d: &StateDistribution) -> String {
    let values: Vec<String> = d.as_array().iter().map(|v| fixed(*v)).collect();
    format!("{n},{k1},{k2},{}", values.join(","))
}

pub fn distribution(system: &System, method: Method, outcome: &Outcome, format: Format) -> String {
    let spec = &system.spec;
    let d = outcome.distribution();
    match format {
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(spec.n(), spec.k1(), spec.k2(), &d)),
        Format::Json => {
            let mut value = json!({
                "n": spec.n(),
                "k1": spec.k1(),
                "k2": spec.k2(),
                "kind": spec.kind().to_string(),
                "start": u8::from(system.chain.start()),
                "method": method.name(),
                "r0": d.r0,
                "r1": d.r1,
                "r2": d.r2,
                "R1": d.cum1,
                "R2": d.cum2,
            });
            if let Outcome::Estimate(est) = outcome {
                value["std_err"] = json!(est.std_err_array());
                value["samples"] = json!(est.samples);
                value["seed"] = json!(est.seed);
            }
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json value"))
        }
        Format::Table => {
            let mut out = String::new();
            let header = format!(
                "n = {}, k1 = {}, k2 = {} ({}), start = {}, method = {}",
                spec.n(),
                spec.k1(),
                spec.k2(),
                spec.kind(),
                u8::from(system.chain.start()),
                method
            );
            writeln!(out, "{}", bold(&header)).unwrap();
            let errs = match outcome {
                Outcome::Estimate(est) => {
                    writeln!(out, "samples = {}, seed = {}", est.samples, est.seed).unwrap();
                    Some(est.std_err_array())
                }
                Outcome::Exact(_) => None,
            };
            for (i, (name, v)) in COLUMNS.iter().zip(d.as_array()).enumerate() {
                match errs {
                    Some(se) => writeln!(out, "  {name:<3} {}  ± {}", fixed(v), fixed(se[i])).unwrap(),
                    None => writeln!(out, "  {name:<3} {}", fixed(v)).unwrap(),
                }
            }
            out
        }
    }
}

/// Right-aligned columns separated by two spaces.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        let line = line.join("  ");
        if i == 0 {
            writeln!(out, "{}", bold(&line)).unwrap();
        } else {
            writeln!(out, "{line}").unwrap();
        }
    }
    out
}
