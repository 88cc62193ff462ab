//! Matrix and graph text formats.
//!
//! Both formats skip blank lines and lines whose first non-space character
//! is `#`. A matrix file is a header holding `n` followed by `n` rows of `n`
//! whitespace-separated decimals. A graph file is a header `n m` followed by
//! `m` lines `u v` with 0-based vertex indices.

use std::collections::HashSet;
use std::fmt::Write as _;

use gromtree_core::metric::SquareMatrix;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.describe())]
pub struct ParseError {
    /// 1-based; 0 when the input ended early.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }

    fn describe(&self) -> String {
        match self.line {
            0 => self.message.clone(),
            k => format!("line {k}: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((k + 1, t))
    })
}

fn parse_count(field: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    field.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            format!("{what} must be a non-negative integer, found {field:?}"),
        )
    })
}

fn end_of_input(what: &str) -> ParseError {
    ParseError::new(0, format!("unexpected end of input: {what}"))
}

pub fn parse_matrix(text: &str) -> Result<SquareMatrix, ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| end_of_input("missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 1 {
        return Err(ParseError::new(
            hline,
            "header must hold a single integer n",
        ));
    }
    let n = parse_count(fields[0], hline, "n")?;
    if n == 0 {
        return Err(ParseError::new(hline, "n must be positive"));
    }

    let mut data = Vec::with_capacity(n);
    for i in 0..n {
        let (line, row) = lines
            .next()
            .ok_or_else(|| end_of_input(&format!("expected {n} rows, found {i}")))?;
        let values = row
            .split_whitespace()
            .map(|f| match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(ParseError::new(
                    line,
                    format!("{f:?} is not a finite decimal"),
                )),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if values.len() != n {
            return Err(ParseError::new(
                line,
                format!("row {i} has {} fields, expected {n}", values.len()),
            ));
        }
        data.push(values);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::new(line, format!("data after the {n} rows")));
    }
    Ok(SquareMatrix::from_rows(&data).expect("shape checked above"))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| end_of_input("missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError::new(hline, "header must be \"n m\""));
    }
    let n = parse_count(fields[0], hline, "n")?;
    let m = parse_count(fields[1], hline, "m")?;
    if n == 0 {
        return Err(ParseError::new(hline, "n must be positive"));
    }

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| end_of_input(&format!("expected {m} edges, found {k}")))?;
        let ends: Vec<&str> = text.split_whitespace().collect();
        if ends.len() != 2 {
            return Err(ParseError::new(line, "edge line must be \"u v\""));
        }
        let u = parse_count(ends[0], line, "vertex")?;
        let v = parse_count(ends[1], line, "vertex")?;
        if u >= n || v >= n {
            return Err(ParseError::new(
                line,
                format!("edge {u} {v} leaves the vertex range 0..{n}"),
            ));
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::new(line, format!("data after the {m} edges")));
    }
    Ok(GraphFile { n, edges })
}

/// One label per non-blank line, surrounding whitespace removed.
pub fn parse_labels(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}

const SIGNIFICANT: usize = 9;

/// Half-integers exactly; anything else to nine significant digits in
/// fixed notation with trailing zeros trimmed.
pub fn format_number(v: f64) -> String {
    let t = 2.0 * v;
    if t.abs() < 2f64.powi(52) && t == t.trunc() {
        let s = if t % 2.0 == 0.0 {
            format!("{}", v as i64)
        } else {
            format!("{v:.1}")
        };
        return if s == "-0" { "0".into() } else { s };
    }
    // exponent after rounding to the target digits
    let sci = format!("{:.*e}", SIGNIFICANT - 1, v);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        let keep = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(keep);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn write_matrix(m: &SquareMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", m.n());
    for row in m.rows() {
        let fields: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
        let _ = writeln!(out, "{}", fields.join(" "));
    }
    out
}
