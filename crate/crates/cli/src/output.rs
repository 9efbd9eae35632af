//! CSV output: '#' echo lines, a header row, fixed 17-digit floats.

use std::io::Write;
use std::path::Path;

use crate::settings::{CliError, CliResult};

/// 17 significant digits; -0 prints as 0.
pub fn num(x: f64) -> String {
    format!("{:.16e}", if x == 0.0 { 0.0 } else { x })
}

pub struct Table {
    echo: Vec<(String, String)>,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { echo: Vec::new(), header, rows: Vec::new() }
    }

    pub fn echo(&mut self, key: &str, value: impl ToString) {
        self.echo.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.echo {
            s.push_str(&format!("# {k}={v}\n"));
        }
        s.push_str(&self.header.join(","));
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Writes to `path`, or stdout when absent.
    pub fn emit(&self, path: Option<&Path>) -> CliResult<()> {
        let text = self.render();
        match path {
            Some(p) => std::fs::write(p, text)
                .map_err(|e| CliError::Param(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::Param(format!("cannot write to stdout: {e}")))
            }
        }
    }
}

/// One verification line: passes when `value <= tol`.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Check { name: name.into(), value, tol }
    }

    pub fn pass(&self) -> bool {
        self.value <= self.tol
    }
}

pub fn check_table(checks: &[Check]) -> Table {
    let mut t = Table::new(vec!["check", "value", "tolerance", "status"]);
    for c in checks {
        let status = if c.pass() { "PASS" } else { "FAIL" };
        t.row(vec![c.name.clone(), num(c.value), num(c.tol), status.to_string()]);
    }
    t
}
