//! Text formats for matrices and weighted digraphs.
//!
//! Matrix file:
//!
//! ```text
//! # optional comments
//! 3 3
//! 1 2 3
//! 4 5 6
//! 7 8 10
//! ```
//!
//! Graph file, one arc per line as `tail head weight` (1-based):
//!
//! ```text
//! digraph 3
//! 1 2 1
//! 2 3 1
//! ```

use num_bigint::BigInt;

use crate::arborescence::WeightedDigraph;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got {tok:?}")))
}

fn parse_int(line: usize, tok: &str) -> Result<BigInt> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected an integer, got {tok:?}")))
}

/// Parses a matrix file; integer entries are mapped into `ring`.
pub fn parse_matrix(text: &str, ring: &Ring) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `rows cols` header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [r, c] = dims[..] else {
        return Err(parse_err(hline, "header must be `rows cols`"));
    };
    let (rows, cols) = (parse_usize(hline, r)?, parse_usize(hline, c)?);

    let mut entries = Vec::with_capacity(rows * cols);
    for k in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {rows} rows, found {k}")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(parse_err(
                ln,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for t in toks {
            entries.push(ring.from_bigint(&parse_int(ln, t)?));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected content after the last row"));
    }
    Matrix::new(ring.clone(), rows, cols, entries)
}

/// Parses a graph file; duplicate arcs are summed, absent arcs weigh zero.
pub fn parse_graph(text: &str, ring: &Ring) -> Result<WeightedDigraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `digraph n` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let ["digraph", n] = toks[..] else {
        return Err(parse_err(hline, "header must be `digraph n`"));
    };
    let n = parse_usize(hline, n)?;

    let mut arcs = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v, w] = toks[..] else {
            return Err(parse_err(ln, "arc lines must be `tail head weight`"));
        };
        let (u, v) = (parse_usize(ln, u)?, parse_usize(ln, v)?);
        if u == 0 || u > n || v == 0 || v > n {
            return Err(parse_err(ln, format!("vertex outside 1..={n}")));
        }
        arcs.push((u, v, parse_int(ln, w)?));
    }
    WeightedDigraph::from_arcs(ring, n, &arcs)
}
