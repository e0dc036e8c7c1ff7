//! Structured-text run reports.
//!
//! A report is line-oriented and diffable: a fixed header naming the format
//! (`sdhall-report-v1`), an engine version, a timestamp, a config-echo
//! section that suffices to reproduce the run, one line per check with
//! space-separated `key=value` fields, optional indented detail lines
//! (residuals, error messages), and a summary.  All coefficients that appear
//! in details are exact — integers, rationals and `a+b*sqrt(q)` forms —
//! never floats.
//!
//! Two runs with the same configuration produce byte-identical reports
//! except for the `generated:` line and the per-check `wall_ms=` fields;
//! [`canonical_form`] strips exactly those, and equality of canonical forms
//! is the determinism contract the test suite enforces.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Result;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The residual vanished exactly.
    Zero,
    /// The residual was a nonzero element (details carry it).
    Nonzero,
    /// The check could not be completed (budget, pole, bad input).
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Zero => "zero",
            Status::Nonzero => "nonzero",
            Status::Error => "error",
        }
    }
}

/// One verified item: a relation image, a straightening identity, a Hall
/// number row, or any other single pass/fail unit.
#[derive(Clone, Debug)]
pub struct Record {
    /// Record family (e.g. `relation`, `identity`, `hall`).
    pub kind: &'static str,
    /// Identifier within the family; must contain no whitespace.
    pub name: String,
    /// Extra `key=value` fields (field size, parameters, counters).
    pub fields: Vec<(String, String)>,
    /// Outcome.
    pub status: Status,
    /// Wall-clock milliseconds spent on this record.
    pub wall_ms: u128,
    /// Free-form detail lines (residual terms, error text); rendered
    /// indented under the record line.
    pub detail: Vec<String>,
}

impl Record {
    /// Build a record; panics in debug builds if `name` contains whitespace
    /// (the one-line format depends on it).
    pub fn new(kind: &'static str, name: impl Into<String>, status: Status) -> Self {
        let name = name.into();
        debug_assert!(
            !name.chars().any(char::is_whitespace),
            "record names must be whitespace-free: {name:?}"
        );
        Record {
            kind,
            name,
            fields: Vec::new(),
            status,
            wall_ms: 0,
            detail: Vec::new(),
        }
    }

    /// Append a `key=value` field.
    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    /// Append a detail line.
    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }

    /// Set the elapsed time.
    pub fn timed(mut self, wall_ms: u128) -> Self {
        self.wall_ms = wall_ms;
        self
    }
}

/// A full run report.
#[derive(Clone, Debug, Default)]
pub struct Report {
    /// Config-echo rows, in the order the config produced them.
    pub config: Vec<(String, String)>,
    /// Check records, in execution-plan order (stable across runs).
    pub records: Vec<Record>,
    /// Run-level notes (caveats, scope statements).
    pub notes: Vec<String>,
}

impl Report {
    /// Start an empty report carrying a config echo.
    pub fn new(config: Vec<(String, String)>) -> Self {
        Report {
            config,
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Add one record.
    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    /// Add a run-level note.
    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// `true` when every record verified to zero.
    pub fn all_zero(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Zero)
    }

    /// Count records with the given status.
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// Render the report as structured text.
    pub fn render(&self) -> String {
        let generated = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut out = String::new();
        out.push_str("sdhall-report-v1\n");
        let _ = writeln!(out, "engine: sdhall {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "generated: {generated}");
        out.push_str("section: config\n");
        for (k, v) in &self.config {
            let _ = writeln!(out, "{k} = {v}");
        }
        out.push_str("section: checks\n");
        for r in &self.records {
            let _ = write!(
                out,
                "{} name={} status={}",
                r.kind,
                r.name,
                r.status.as_str()
            );
            for (k, v) in &r.fields {
                let _ = write!(out, " {k}={v}");
            }
            let _ = writeln!(out, " wall_ms={}", r.wall_ms);
            for line in &r.detail {
                let _ = writeln!(out, "  {line}");
            }
        }
        if !self.notes.is_empty() {
            out.push_str("section: notes\n");
            for line in &self.notes {
                let _ = writeln!(out, "note: {line}");
            }
        }
        out.push_str("section: summary\n");
        let _ = writeln!(out, "checks = {}", self.records.len());
        let _ = writeln!(out, "zero = {}", self.count(Status::Zero));
        let _ = writeln!(out, "nonzero = {}", self.count(Status::Nonzero));
        let _ = writeln!(out, "error = {}", self.count(Status::Error));
        let _ = writeln!(
            out,
            "verdict = {}",
            if self.all_zero() { "pass" } else { "fail" }
        );
        out
    }

    /// Render and write to `out`, or to stdout when `out` is `None`.
    pub fn persist(&self, out: Option<&std::path::Path>) -> Result<()> {
        let text = self.render();
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

/// The deterministic core of a rendered report: the text with the
/// `generated:` line removed and every `wall_ms=<n>` field normalized.
/// Reports from identical configurations have equal canonical forms.
pub fn canonical_form(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        if line.starts_with("generated:") {
            continue;
        }
        match line.find(" wall_ms=") {
            Some(pos) => {
                out.push_str(&line[..pos]);
                out.push('\n');
            }
            None => {
                out.push_str(line);
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(wall: u128) -> Report {
        let mut rep = Report::new(vec![("mode".into(), "layered".into())]);
        rep.push(
            Record::new("relation", "k-e[1;1,1]", Status::Zero)
                .field("q", 2)
                .field("terms", 2)
                .timed(wall),
        );
        rep.push(
            Record::new("relation", "ef-cascade[1;1,1];perturbed", Status::Nonzero)
                .field("q", 2)
                .with_detail("residual: 1 term")
                .timed(wall + 3),
        );
        rep.note("independence check is a smoke test, not a proof of injectivity");
        rep
    }

    #[test]
    fn render_contains_all_sections_and_statuses() {
        let text = sample(5).render();
        assert!(text.starts_with("sdhall-report-v1\n"));
        for needle in [
            "section: config",
            "section: checks",
            "section: notes",
            "section: summary",
            "mode = layered",
            "status=zero",
            "status=nonzero",
            "residual: 1 term",
            "verdict = fail",
            "wall_ms=5",
        ] {
            assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
        }
    }

    #[test]
    fn canonical_form_hides_only_the_volatile_fields() {
        let a = canonical_form(&sample(5).render());
        let b = canonical_form(&sample(900).render());
        assert_eq!(a, b);
        assert!(!a.contains("generated:"));
        assert!(!a.contains("wall_ms"));
        assert!(a.contains("status=nonzero"));
    }

    #[test]
    fn verdict_tracks_statuses() {
        let mut rep = Report::new(Vec::new());
        rep.push(Record::new("identity", "sum-split[k=1,l=1]", Status::Zero));
        assert!(rep.all_zero());
        assert!(rep.render().contains("verdict = pass"));
        rep.push(Record::new("identity", "sum-split[k=2,l=1]", Status::Error));
        assert!(!rep.all_zero());
        assert_eq!(rep.count(Status::Error), 1);
    }
}
