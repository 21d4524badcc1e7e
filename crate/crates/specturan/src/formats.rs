//! Text formats.
//!
//! HGR: the first data line is `n r`, every further line lists the `r`
//! vertices of one edge. `#` starts a comment. Several records in one stream
//! are separated by blank lines.
//!
//! Weighted: the first data line is `n s weighted`, every further line lists
//! `s` vertices and a positive integer weight.

use std::fmt::Write as _;

use specturan_core::{Hypergraph, WeightedSGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no header line found")]
    Empty,
    #[error(transparent)]
    Invalid(#[from] specturan_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty data lines with their 1-based numbers, comments removed.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>, FormatError> {
    text.split_whitespace()
        .map(|tok| tok.parse::<T>().map_err(|_| syntax(line, format!("not a number: {tok:?}"))))
        .collect()
}

pub fn parse_hgr(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::Empty)?;
    let head: Vec<usize> = numbers(hl, header)?;
    let [n, r] = head[..] else {
        return Err(syntax(hl, "header must be `n r`"));
    };
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let e: Vec<u32> = numbers(ln, line)?;
        if e.len() != r {
            return Err(syntax(ln, format!("expected {r} vertices, found {}", e.len())));
        }
        edges.push(e);
    }
    Ok(Hypergraph::build(n, r, edges)?)
}

/// Splits a stream of blank-line separated records and parses each one.
pub fn parse_hgr_records(text: &str) -> Result<Vec<Hypergraph>, FormatError> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut offset = 0;
    let mut flush = |block: &mut String, offset: usize| -> Result<(), FormatError> {
        if data_lines(block).next().is_some() {
            let g = parse_hgr(block).map_err(|e| match e {
                FormatError::Syntax { line, message } => syntax(line + offset, message),
                other => other,
            })?;
            out.push(g);
        }
        block.clear();
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            flush(&mut block, offset)?;
            offset = i + 1;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&mut block, offset)?;
    Ok(out)
}

/// Canonical text: header, then edges in sorted order.
pub fn write_hgr(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.r());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_weighted(text: &str) -> Result<WeightedSGraph, FormatError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::Empty)?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [n, s, "weighted"] = parts[..] else {
        return Err(syntax(hl, "header must be `n s weighted`"));
    };
    let n: usize = n.parse().map_err(|_| syntax(hl, "bad vertex count"))?;
    let s: usize = s.parse().map_err(|_| syntax(hl, "bad uniformity"))?;
    let mut entries = Vec::new();
    for (ln, line) in lines {
        let mut v: Vec<u64> = numbers(ln, line)?;
        if v.len() != s + 1 {
            return Err(syntax(ln, format!("expected {s} vertices and a weight")));
        }
        let w = v.pop().expect("length checked");
        let key = v
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| syntax(ln, "vertex index too large")))
            .collect::<Result<Vec<u32>, _>>()?;
        entries.push((key, w));
    }
    Ok(WeightedSGraph::new(n, s, entries)?)
}

pub fn write_weighted(w: &WeightedSGraph) -> String {
    let mut out = format!("{} {} weighted\n", w.n(), w.s());
    for (key, weight) in w.entries() {
        let line: Vec<String> = key.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{} {weight}", line.join(" "));
    }
    out
}
