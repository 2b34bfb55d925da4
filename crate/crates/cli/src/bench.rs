//! Benchmark manifests and reports.
//!
//! A manifest lists one instance per line:
//! `<path> <ucap> <iucap> [<expected-min-units>|UNSAT]`, with paths relative
//! to the manifest and `#` comments. The capacities override those in the
//! instance file.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::Args;
use pup::{parse_instance, solve, verify_solution, SolveConfig, SolveResult};
use serde_json::json;

#[derive(Args)]
pub struct BenchArgs {
    manifest: PathBuf,
    #[arg(long, default_value_t = pup::solver::DEFAULT_MAX_TIME_MS)]
    max_time_ms: u64,
    #[arg(long)]
    no_minimize: bool,
    /// Search each instance from all entry points concurrently.
    #[arg(long)]
    parallel: bool,
    /// Also write one JSON record per row to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Units(usize),
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub path: String,
    pub ucap: usize,
    pub iucap: usize,
    pub expected: Option<Expected>,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(3..=4).contains(&fields.len()) {
            bail!("manifest line {}: expected `<path> <ucap> <iucap> [<units>|UNSAT]`", n + 1);
        }
        let num = |s: &str, what: &str| -> Result<usize> {
            s.parse()
                .with_context(|| format!("manifest line {}: bad {what} `{s}`", n + 1))
        };
        let expected = match fields.get(3) {
            None => None,
            Some(s) if s.eq_ignore_ascii_case("unsat") => Some(Expected::Unsat),
            Some(s) => Some(Expected::Units(num(s, "expected unit count")?)),
        };
        out.push(Entry {
            path: fields[0].to_owned(),
            ucap: num(fields[1], "ucap")?,
            iucap: num(fields[2], "iucap")?,
            expected,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Row {
    pub entry: Entry,
    /// `SAT`, `UNSAT`, `TIMEOUT` or `ERROR`.
    pub outcome: &'static str,
    pub units: Option<usize>,
    pub search: Duration,
    pub minimize: Duration,
    pub error: Option<String>,
}

impl Row {
    /// Units used beyond the expected minimum.
    pub fn delta(&self) -> Option<i64> {
        match (&self.entry.expected, self.units) {
            (Some(Expected::Units(e)), Some(u)) => Some(u as i64 - *e as i64),
            _ => None,
        }
    }

    /// Whether the outcome matches the expectation; `None` without one.
    pub fn consistent(&self) -> Option<bool> {
        let e = self.entry.expected.as_ref()?;
        Some(match e {
            Expected::Unsat => self.outcome == "UNSAT",
            Expected::Units(min) => self.outcome == "SAT" && self.units.is_some_and(|u| u >= *min),
        })
    }

    fn expected_text(&self) -> String {
        match &self.entry.expected {
            None => "-".into(),
            Some(Expected::Unsat) => "UNSAT".into(),
            Some(Expected::Units(u)) => u.to_string(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "instance": self.entry.path,
            "ucap": self.entry.ucap,
            "iucap": self.entry.iucap,
            "outcome": self.outcome,
            "units": self.units,
            "expected": self.entry.expected.as_ref().map(|e| match e {
                Expected::Unsat => json!("UNSAT"),
                Expected::Units(u) => json!(u),
            }),
            "delta_units": self.delta(),
            "consistent": self.consistent(),
            "search_ms": self.search.as_secs_f64() * 1e3,
            "minimize_ms": self.minimize.as_secs_f64() * 1e3,
            "error": self.error,
        })
    }
}

pub fn run_entry(base: &Path, entry: &Entry, cfg: &SolveConfig) -> Row {
    let mut row = Row {
        entry: entry.clone(),
        outcome: "ERROR",
        units: None,
        search: Duration::ZERO,
        minimize: Duration::ZERO,
        error: None,
    };
    let path = base.join(&entry.path);
    let inst = fs::read_to_string(&path)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()))
        .and_then(|i| i.with_capacities(entry.ucap, entry.iucap).map_err(|e| e.to_string()));
    let inst = match inst {
        Ok(i) => i,
        Err(e) => {
            row.error = Some(format!("{}: {e}", path.display()));
            return row;
        }
    };
    let out = solve(&inst, cfg);
    row.search = out.stats.search_time;
    row.minimize = out.stats.minimize_time;
    row.outcome = match &out.result {
        SolveResult::Satisfiable(g) => {
            let violations = verify_solution(&inst, g);
            if !violations.is_empty() {
                row.error = Some(format!("solution fails verification: {}", violations[0]));
                return row;
            }
            row.units = Some(g.count_units());
            "SAT"
        }
        SolveResult::Unsatisfiable { .. } => "UNSAT",
        SolveResult::Timeout => "TIMEOUT",
    };
    row
}

pub fn render_table(rows: &[Row]) -> String {
    let header = [
        "instance", "ucap", "iucap", "outcome", "units", "expected", "+units", "search_ms", "minimize_ms", "ok",
    ];
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.entry.path.clone(),
                r.entry.ucap.to_string(),
                r.entry.iucap.to_string(),
                r.outcome.to_string(),
                opt(r.units.map(|u| u.to_string())),
                r.expected_text(),
                opt(r.delta().map(|d| format!("{d:+}"))),
                format!("{:.3}", r.search.as_secs_f64() * 1e3),
                format!("{:.3}", r.minimize.as_secs_f64() * 1e3),
                opt(r.consistent().map(|c| if c { "yes" } else { "NO" }.to_string())),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
        .collect();
    let mut out = String::new();
    let mut line = |fields: Vec<&str>| {
        let parts: Vec<String> = fields
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (f, w))| if c == 0 { format!("{f:<w$}") } else { format!("{f:>w$}") })
            .collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec());
    for r in &cells {
        line(r.iter().map(String::as_str).collect());
    }
    for r in rows {
        if let Some(e) = &r.error {
            writeln!(out, "error: {}: {e}", r.entry.path).unwrap();
        }
    }
    out
}

/// Exit code 0 when every row ran and matched its expectation, 1 otherwise.
pub fn run(a: &BenchArgs) -> Result<u8> {
    let text = fs::read_to_string(&a.manifest).with_context(|| format!("cannot read {}", a.manifest.display()))?;
    let entries = parse_manifest(&text)?;
    let base = a.manifest.parent().unwrap_or(Path::new("."));
    let cfg = SolveConfig::new(a.max_time_ms, None)?
        .with_minimize(!a.no_minimize)
        .with_parallel(a.parallel);
    let rows: Vec<Row> = entries.iter().map(|e| run_entry(base, e, &cfg)).collect();
    print!("{}", render_table(&rows));
    if let Some(p) = &a.json {
        let mut records = String::new();
        for r in &rows {
            writeln!(records, "{}", r.to_json()).unwrap();
        }
        fs::write(p, records).with_context(|| format!("cannot write {}", p.display()))?;
    }
    let clean = rows.iter().all(|r| r.error.is_none() && r.consistent() != Some(false));
    Ok(if clean { 0 } else { 1 })
}
