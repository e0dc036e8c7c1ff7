//! Run configuration and line-oriented input parsing for the CLI.
//!
//! The front end consumes three kinds of text input, all line-oriented and
//! comment-friendly (`#` starts a comment anywhere on a line):
//!
//! * a quiver file with exactly one `vertices: <id> <id> ...` line and any
//!   number of `arrow: <src> <dst>` lines (a loop is an arrow with equal
//!   endpoints); it may also carry `lambda:` rows, described next;
//! * scalar-table rows `lambda: <vertex> <scalar> <scalar> ...` assigning to
//!   a vertex one row of loop eigenvalues per line (the row length must equal
//!   the number of loops at that vertex), either inline in the quiver file or
//!   in a separate file passed with `--lambda-table`;
//! * a charge list `<vertex>=<count>` (comma- or whitespace-separated) from
//!   the `--charge` flag, giving the number of simple objects attached to
//!   each vertex in the charged presentation.
//!
//! Parsing is strict: unknown keys, repeated `vertices:` lines, dangling
//! tokens, and out-of-range numbers are reported as [`Error::Parse`] with the
//! 1-based line number. Cross-field consistency (prime field sizes, charge
//! bounds, distinctness of scalar rows) is checked by [`ChargedSetup::build`]
//! and [`RunConfig::validate`] and reported as [`Error::Config`].

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{Quiver, VertexKind};
use crate::rep::Budget;

/// Which presentation the `verify` subcommand checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Generators indexed by vertex and layer; torus scalars twist by the
    /// layer. Images land in the nilpotent-support algebra.
    Layered,
    /// Generators indexed by vertex and charge slot; one simple object per
    /// chosen scalar row. Images land in the all-representations algebra.
    Charged,
}

impl Mode {
    /// `true` when the verification target only sees nilpotent objects.
    pub fn nilpotent_only(self) -> bool {
        matches!(self, Mode::Layered)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "layered" => Ok(Mode::Layered),
            "charged" => Ok(Mode::Charged),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected `layered` or `charged`)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Layered => write!(f, "layered"),
            Mode::Charged => write!(f, "charged"),
        }
    }
}

/// Result of parsing a quiver file: the raw declarations, in file order.
#[derive(Clone, Debug, Default)]
pub struct ParsedQuiver {
    /// Vertex ids from the `vertices:` line, in declaration order.
    pub vertices: Vec<u32>,
    /// Arrow pairs `(source id, target id)`.
    pub arrows: Vec<(u32, u32)>,
    /// Scalar rows `(vertex id, eigenvalues)`, in file order.
    pub lambda: Vec<(u32, Vec<u8>)>,
}

impl ParsedQuiver {
    /// Build the quiver itself (ids resolved, arrows validated).
    pub fn build(&self) -> Result<Quiver> {
        Quiver::new(self.vertices.clone(), &self.arrows)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_number<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected {what}, found `{tok}`"),
    })
}

fn parse_lambda_row(rest: &str, lineno: usize) -> Result<(u32, Vec<u8>)> {
    let mut toks = rest.split_whitespace();
    let vertex = match toks.next() {
        Some(t) => parse_number::<u32>(t, lineno, "a vertex id")?,
        None => {
            return Err(Error::Parse {
                line: lineno,
                msg: "`lambda:` needs a vertex id".into(),
            })
        }
    };
    let mut row = Vec::new();
    for t in toks {
        row.push(parse_number::<u8>(t, lineno, "a scalar in 0..=255")?);
    }
    Ok((vertex, row))
}

/// Parse quiver-file text (`vertices:`, `arrow:`, optional `lambda:` rows).
pub fn parse_quiver_text(text: &str) -> Result<ParsedQuiver> {
    let mut out = ParsedQuiver::default();
    let mut saw_vertices = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(':') {
            Some(kv) => kv,
            None => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `key: values`, found `{line}`"),
                })
            }
        };
        match key.trim() {
            "vertices" => {
                if saw_vertices {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "repeated `vertices:` line".into(),
                    });
                }
                saw_vertices = true;
                for t in rest.split_whitespace() {
                    out.vertices
                        .push(parse_number::<u32>(t, lineno, "a vertex id")?);
                }
                if out.vertices.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "`vertices:` line lists no vertices".into(),
                    });
                }
            }
            "arrow" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "`arrow:` needs exactly two vertex ids, found {}",
                            toks.len()
                        ),
                    });
                }
                let s = parse_number::<u32>(toks[0], lineno, "a vertex id")?;
                let t = parse_number::<u32>(toks[1], lineno, "a vertex id")?;
                out.arrows.push((s, t));
            }
            "lambda" => {
                out.lambda.push(parse_lambda_row(rest, lineno)?);
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!(
                        "unknown key `{other}` (expected `vertices`, `arrow` or `lambda`)"
                    ),
                })
            }
        }
    }
    if !saw_vertices {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "missing `vertices:` line".into(),
        });
    }
    Ok(out)
}

/// Parse a standalone scalar-table file (only `lambda:` rows and comments).
pub fn parse_lambda_text(text: &str) -> Result<Vec<(u32, Vec<u8>)>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let rest = match line.split_once(':') {
            Some(("lambda", rest)) => rest,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `lambda: <vertex> <scalars...>`, found `{line}`"),
                })
            }
        };
        rows.push(parse_lambda_row(rest, lineno)?);
    }
    Ok(rows)
}

/// Parse `--charge` entries of the form `<vertex>=<count>`, separated by
/// commas or whitespace.
pub fn parse_charge_list(text: &str) -> Result<Vec<(u32, usize)>> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let (v, m) = tok.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "charge entry `{tok}` is not of the form vertex=count"
            ))
        })?;
        let vertex: u32 = v
            .parse()
            .map_err(|_| Error::Config(format!("charge entry `{tok}`: bad vertex id `{v}`")))?;
        let count: usize = m
            .parse()
            .map_err(|_| Error::Config(format!("charge entry `{tok}`: bad count `{m}`")))?;
        out.push((vertex, count));
    }
    Ok(out)
}

/// Read and parse a quiver file from disk.
pub fn load_quiver_file(path: &Path) -> Result<ParsedQuiver> {
    let text = std::fs::read_to_string(path)?;
    parse_quiver_text(&text)
}

/// Read and parse a standalone scalar-table file from disk.
pub fn load_lambda_file(path: &Path) -> Result<Vec<(u32, Vec<u8>)>> {
    let text = std::fs::read_to_string(path)?;
    parse_lambda_text(&text)
}

fn is_prime(n: u8) -> bool {
    if n < 2 {
        return false;
    }
    (2..n)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

/// Charge counts and scalar rows resolved against a concrete quiver, ready
/// to hand to the charged-presentation generator images.
#[derive(Clone, Debug)]
pub struct ChargedSetup {
    /// Number of simple objects at each vertex (indexed like the quiver).
    pub charge: Vec<usize>,
    /// Scalar rows per vertex: `lambda[i]` has `charge[i]` rows, each of
    /// length `loops_at(i)`.
    pub lambda: Vec<Vec<Vec<u8>>>,
}

impl ChargedSetup {
    /// Resolve raw charge entries and scalar rows against `quiver`, checking
    /// every constraint the charged presentation needs at every listed field
    /// size: real vertices carry charge 1, a vertex with `g` loops admits at
    /// most `q^g` rows, rows are pairwise distinct with entries below `q`,
    /// and the row count matches the declared charge.
    pub fn build(
        quiver: &Quiver,
        charge_entries: &[(u32, usize)],
        lambda_rows: &[(u32, Vec<u8>)],
        qs: &[u8],
    ) -> Result<Self> {
        let n = quiver.n();
        let cartan = quiver.cartan();

        let mut lambda: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
        for (id, row) in lambda_rows {
            let i = quiver
                .vertex_index(*id)
                .ok_or_else(|| Error::Config(format!("scalar row for unknown vertex id {id}")))?;
            let g = quiver.loops_at(i);
            if row.len() != g {
                return Err(Error::Config(format!(
                    "scalar row for vertex {id} has {} entries, but the vertex has {g} loops",
                    row.len()
                )));
            }
            lambda[i].push(row.clone());
        }

        let mut charge: Vec<Option<usize>> = vec![None; n];
        for (id, m) in charge_entries {
            let i = quiver
                .vertex_index(*id)
                .ok_or_else(|| Error::Config(format!("charge entry for unknown vertex id {id}")))?;
            if charge[i].is_some() {
                return Err(Error::Config(format!(
                    "repeated charge entry for vertex {id}"
                )));
            }
            if *m == 0 {
                return Err(Error::Config(format!(
                    "charge at vertex {id} must be at least 1"
                )));
            }
            charge[i] = Some(*m);
        }

        let mut resolved_charge = Vec::with_capacity(n);
        for i in 0..n {
            let id = quiver.ids()[i];
            let g = quiver.loops_at(i);
            let m = match charge[i] {
                Some(m) => m,
                // default: the declared rows if any, otherwise a single simple
                None if !lambda[i].is_empty() => lambda[i].len(),
                None => 1,
            };
            if cartan.kind(i) == VertexKind::Real && m != 1 {
                return Err(Error::Config(format!(
                    "vertex {id} has no loops, so its charge must be 1 (got {m})"
                )));
            }
            if lambda[i].is_empty() {
                if m == 1 {
                    lambda[i].push(vec![0; g]);
                } else {
                    return Err(Error::Config(format!(
                        "vertex {id} has charge {m} but no scalar rows; supply a table"
                    )));
                }
            }
            if lambda[i].len() != m {
                return Err(Error::Config(format!(
                    "vertex {id}: charge {m} but {} scalar rows",
                    lambda[i].len()
                )));
            }
            for (r, row) in lambda[i].iter().enumerate() {
                for other in &lambda[i][r + 1..] {
                    if row == other {
                        return Err(Error::Config(format!(
                            "vertex {id}: duplicate scalar row {row:?}"
                        )));
                    }
                }
            }
            for &q in qs {
                let cap = (q as u128).pow(g as u32);
                if m as u128 > cap {
                    return Err(Error::Config(format!(
                        "vertex {id}: charge {m} exceeds the q^loops bound {cap} at q = {q}"
                    )));
                }
                for row in &lambda[i] {
                    if let Some(bad) = row.iter().find(|&&s| s >= q) {
                        return Err(Error::Config(format!(
                            "vertex {id}: scalar {bad} is not a residue at q = {q}"
                        )));
                    }
                }
            }
            resolved_charge.push(m);
        }

        Ok(ChargedSetup {
            charge: resolved_charge,
            lambda,
        })
    }
}

/// Everything a CLI run needs, assembled from flags and input files.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Path the quiver was loaded from (echoed in reports).
    pub quiver_path: PathBuf,
    /// The parsed quiver declarations (vertices, arrows, inline scalar rows).
    pub parsed: ParsedQuiver,
    /// The quiver itself.
    pub quiver: Arc<Quiver>,
    /// Field sizes to run at (validated prime).
    pub qs: Vec<u8>,
    /// Layer bound for the layered presentation and power bound for the
    /// straightening identities.
    pub lmax: usize,
    /// Which presentation `verify` targets.
    pub mode: Mode,
    /// Raw charge entries from the command line.
    pub charge_entries: Vec<(u32, usize)>,
    /// Scalar rows from the quiver file and any separate table, in order.
    pub lambda_rows: Vec<(u32, Vec<u8>)>,
    /// Enumeration ceiling applied to every scan.
    pub budget: u128,
    /// Total-dimension bound for the Hall-number table.
    pub dim_bound: usize,
    /// Report destination (stdout when absent).
    pub out: Option<PathBuf>,
    /// Force single-threaded execution.
    pub serial: bool,
}

impl RunConfig {
    /// The per-scan budget structure derived from the single ceiling flag.
    pub fn budget_struct(&self) -> Budget {
        Budget::with_ceiling(self.budget)
    }

    /// Validate the field-size list and global numeric sanity.
    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() {
            return Err(Error::Config("at least one field size is required".into()));
        }
        for &q in &self.qs {
            if !is_prime(q) {
                return Err(Error::Config(format!("field size {q} is not prime")));
            }
        }
        if self.lmax == 0 {
            return Err(Error::Config("lmax must be at least 1".into()));
        }
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        Ok(())
    }

    /// Resolve the charged-presentation tables against the quiver.
    pub fn charged_setup(&self) -> Result<ChargedSetup> {
        ChargedSetup::build(
            &self.quiver,
            &self.charge_entries,
            &self.lambda_rows,
            &self.qs,
        )
    }

    /// Deterministic key/value echo of everything that influences results;
    /// reports embed these lines so a run can be reproduced from its report.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut rows = Vec::new();
        rows.push(("quiver_file".into(), self.quiver_path.display().to_string()));
        rows.push((
            "vertices".into(),
            self.parsed
                .vertices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ));
        for (s, t) in &self.parsed.arrows {
            rows.push(("arrow".into(), format!("{s} {t}")));
        }
        rows.push(("mode".into(), self.mode.to_string()));
        rows.push((
            "q".into(),
            self.qs
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ));
        rows.push(("lmax".into(), self.lmax.to_string()));
        rows.push(("dim_bound".into(), self.dim_bound.to_string()));
        rows.push(("budget".into(), self.budget.to_string()));
        for (v, m) in &self.charge_entries {
            rows.push(("charge".into(), format!("{v}={m}")));
        }
        for (v, row) in &self.lambda_rows {
            let scalars = row
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            rows.push((
                "lambda".into(),
                format!("{v} {scalars}").trim_end().to_string(),
            ));
        }
        rows.push(("serial".into(), self.serial.to_string()));
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const JORDAN: &str = "# one vertex, one loop\nvertices: 1\narrow: 1 1\n";

    #[test]
    fn quiver_text_round_trip() {
        let parsed = parse_quiver_text(JORDAN).unwrap();
        assert_eq!(parsed.vertices, vec![1]);
        assert_eq!(parsed.arrows, vec![(1, 1)]);
        let quiver = parsed.build().unwrap();
        assert_eq!(quiver.n(), 1);
        assert_eq!(quiver.loops_at(0), 1);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n  # banner\nvertices: 3 7  # ids need not be dense\n\narrow: 3 7 # arrow\n";
        let parsed = parse_quiver_text(text).unwrap();
        assert_eq!(parsed.vertices, vec![3, 7]);
        assert_eq!(parsed.arrows, vec![(3, 7)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_quiver_text("vertices: 1\nvortex: 1 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("vortex"), "{msg}");
            }
            other => panic!("expected a parse error, got {other}"),
        }

        let err = parse_quiver_text("vertices: 1\narrow: 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other}"),
        }

        let err = parse_quiver_text("arrow: 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "missing vertices line");
    }

    #[test]
    fn repeated_vertices_line_is_rejected() {
        let err = parse_quiver_text("vertices: 1\nvertices: 2\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("repeated"), "{msg}");
            }
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn lambda_rows_parse_inline_and_standalone() {
        let text = "vertices: 1\narrow: 1 1\nlambda: 1 0\nlambda: 1 2\n";
        let parsed = parse_quiver_text(text).unwrap();
        assert_eq!(parsed.lambda, vec![(1, vec![0]), (1, vec![2])]);

        let rows = parse_lambda_text("# table\nlambda: 1 0\nlambda: 1 1\n").unwrap();
        assert_eq!(rows, vec![(1, vec![0]), (1, vec![1])]);

        let err = parse_lambda_text("arrow: 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn charge_lists_parse() {
        assert_eq!(parse_charge_list("1=2,2=1").unwrap(), vec![(1, 2), (2, 1)]);
        assert_eq!(
            parse_charge_list(" 1=2  2=1 ").unwrap(),
            vec![(1, 2), (2, 1)]
        );
        assert!(parse_charge_list("1:2").is_err());
        assert!(parse_charge_list("x=2").is_err());
    }

    fn config_for(text: &str, qs: Vec<u8>, charge: &str) -> RunConfig {
        let parsed = parse_quiver_text(text).unwrap();
        let quiver = Arc::new(parsed.build().unwrap());
        let lambda_rows = parsed.lambda.clone();
        RunConfig {
            quiver_path: PathBuf::from("test.quiver"),
            parsed,
            quiver,
            qs,
            lmax: 2,
            mode: Mode::Charged,
            charge_entries: parse_charge_list(charge).unwrap(),
            lambda_rows,
            budget: 1 << 22,
            dim_bound: 2,
            out: None,
            serial: true,
        }
    }

    #[test]
    fn charged_setup_enforces_the_row_rules() {
        // happy path: one loop, charge 2, rows (0) and (1)
        let cfg = config_for(
            "vertices: 1\narrow: 1 1\nlambda: 1 0\nlambda: 1 1\n",
            vec![3],
            "1=2",
        );
        let setup = cfg.charged_setup().unwrap();
        assert_eq!(setup.charge, vec![2]);
        assert_eq!(setup.lambda[0], vec![vec![0], vec![1]]);

        // duplicate rows are rejected
        let cfg = config_for(
            "vertices: 1\narrow: 1 1\nlambda: 1 1\nlambda: 1 1\n",
            vec![3],
            "1=2",
        );
        assert!(matches!(cfg.charged_setup(), Err(Error::Config(_))));

        // charge above q^loops is rejected
        let cfg = config_for(
            "vertices: 1\narrow: 1 1\nlambda: 1 0\nlambda: 1 1\nlambda: 1 2\n",
            vec![2],
            "1=3",
        );
        assert!(matches!(cfg.charged_setup(), Err(Error::Config(_))));

        // a loop-free vertex cannot carry charge 2
        let cfg = config_for("vertices: 1 2\narrow: 1 2\n", vec![3], "2=2");
        assert!(matches!(cfg.charged_setup(), Err(Error::Config(_))));

        // defaults: no entries means charge 1 and the zero row
        let cfg = config_for("vertices: 1\narrow: 1 1\n", vec![3], "");
        let setup = cfg.charged_setup().unwrap();
        assert_eq!(setup.charge, vec![1]);
        assert_eq!(setup.lambda[0], vec![vec![0]]);

        // scalar out of range for a listed field size
        let cfg = config_for(
            "vertices: 1\narrow: 1 1\nlambda: 1 0\nlambda: 1 2\n",
            vec![2],
            "1=2",
        );
        assert!(matches!(cfg.charged_setup(), Err(Error::Config(_))));
    }

    #[test]
    fn validate_checks_primality_and_bounds() {
        let mut cfg = config_for(JORDAN, vec![2, 3, 5, 7], "");
        cfg.validate().unwrap();
        cfg.qs = vec![4];
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.qs = vec![2];
        cfg.lmax = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn echo_is_deterministic_and_self_contained() {
        let cfg = config_for(
            "vertices: 1\narrow: 1 1\nlambda: 1 0\nlambda: 1 1\n",
            vec![3],
            "1=2",
        );
        let a = cfg.echo();
        let b = cfg.echo();
        assert_eq!(a, b);
        let keys: Vec<&str> = a.iter().map(|(k, _)| k.as_str()).collect();
        for needed in [
            "quiver_file",
            "vertices",
            "arrow",
            "mode",
            "q",
            "lmax",
            "charge",
            "lambda",
        ] {
            assert!(keys.contains(&needed), "missing echo key {needed}");
        }
    }
}
