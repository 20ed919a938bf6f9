//! Plain-text polytope files.
//!
//! An H-polytope file starts with a header line `H <dim>` followed by one
//! inequality per line written as `a1 a2 ... an b`, meaning `a . x <= b`.
//! A V-polytope file starts with `V <dim>` followed by one point per line.
//! Entries are rationals in the form `p` or `p/q`. Anything after `#` on a
//! line is a comment; blank lines are skipped. Writing a polytope and
//! reading the result back reproduces it exactly.

use std::fs;
use std::path::Path;

use polysparse_core::{
    format_rational, parse_rational, HPolytope, LinIneq, QVector, Rational, VPolytope,
};

use crate::error::CliError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((idx + 1, body))
        }
    })
}

fn parse_header(line: &str, tag: &str, line_no: usize) -> Result<usize, CliError> {
    let mut parts = line.split_whitespace();
    let found = parts.next().unwrap_or("");
    if found != tag {
        return Err(CliError::Input(format!(
            "line {line_no}: expected header `{tag} <dim>`, found `{line}`"
        )));
    }
    let dim = parts
        .next()
        .ok_or_else(|| CliError::Input(format!("line {line_no}: header is missing a dimension")))?
        .parse::<usize>()
        .map_err(|_| CliError::Input(format!("line {line_no}: dimension must be an integer")))?;
    if parts.next().is_some() {
        return Err(CliError::Input(format!(
            "line {line_no}: trailing tokens after the header"
        )));
    }
    if dim == 0 {
        return Err(CliError::Input(format!(
            "line {line_no}: dimension must be positive"
        )));
    }
    Ok(dim)
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<Rational>, CliError> {
    line.split_whitespace()
        .map(|token| {
            parse_rational(token)
                .map_err(|err| CliError::Input(format!("line {line_no}: {err}")))
        })
        .collect()
}

/// Parses H-polytope text.
pub fn parse_hpoly(text: &str) -> Result<HPolytope, CliError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty polytope file".into()))?;
    let dim = parse_header(header, "H", header_no)?;
    let mut rows = Vec::new();
    for (line_no, line) in lines {
        let entries = parse_row(line, line_no)?;
        if entries.len() != dim + 1 {
            return Err(CliError::Input(format!(
                "line {line_no}: expected {} entries (coefficients then bound), found {}",
                dim + 1,
                entries.len()
            )));
        }
        let mut entries = entries;
        let b = entries.pop().expect("row has entries");
        rows.push(LinIneq {
            a: QVector(entries),
            b,
        });
    }
    HPolytope::new(dim, rows).map_err(CliError::from)
}

/// Renders an H-polytope as text.
pub fn format_hpoly(p: &HPolytope) -> String {
    let mut out = format!("H {}\n", p.dim());
    for row in p.ineqs() {
        let mut parts: Vec<String> = row.a.0.iter().map(format_rational).collect();
        parts.push(format_rational(&row.b));
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

/// Parses V-polytope text.
pub fn parse_vpoly(text: &str) -> Result<VPolytope, CliError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty polytope file".into()))?;
    let dim = parse_header(header, "V", header_no)?;
    let mut points = Vec::new();
    for (line_no, line) in lines {
        let entries = parse_row(line, line_no)?;
        if entries.len() != dim {
            return Err(CliError::Input(format!(
                "line {line_no}: expected {} coordinates, found {}",
                dim,
                entries.len()
            )));
        }
        points.push(QVector(entries));
    }
    VPolytope::new(dim, points).map_err(CliError::from)
}

/// Renders a V-polytope as text.
pub fn format_vpoly(p: &VPolytope) -> String {
    let mut out = format!("V {}\n", p.dim());
    for point in p.vertices() {
        let parts: Vec<String> = point.0.iter().map(format_rational).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a space-separated list of rationals, e.g. a direction vector.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    let entries = text
        .split_whitespace()
        .map(|token| parse_rational(token).map_err(|err| CliError::Input(err.to_string())))
        .collect::<Result<Vec<Rational>, CliError>>()?;
    if entries.is_empty() {
        return Err(CliError::Input("expected at least one rational".into()));
    }
    Ok(entries)
}

/// Reads an H-polytope file from disk.
pub fn read_hpoly(path: &Path) -> Result<HPolytope, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("cannot read {}: {err}", path.display())))?;
    parse_hpoly(&text)
}

/// Writes text to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
