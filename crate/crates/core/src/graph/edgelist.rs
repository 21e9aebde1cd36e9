//! Edge-list text format.
//!
//! ```text
//! n m_edges
//! u v
//! ...
//! ```
//!
//! Vertex ids are 1-based. Blank lines and lines starting with `#` are
//! ignored. Writers emit edges sorted ascending with `u < v`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Line source that skips blanks and comments and remembers 1-based line numbers.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    pub(crate) last_line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last_line: 0,
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            self.last_line = i + 1;
            return Some((i + 1, trimmed));
        }
        None
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        fields
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| Error::parse(line, format!("bad {what}: {e}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(Error::parse(line, "expected exactly two fields"));
    }
    Ok((a, b))
}

pub(crate) fn parse_from_lines(lines: &mut Lines<'_>) -> Result<Graph> {
    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(lines.last_line + 1, "missing header `n m_edges`"))?;
    let (n, m) = parse_pair(line, header)?;
    if n == 0 {
        return Err(Error::parse(line, "graph order must be at least 1"));
    }
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (line, text) = lines.next().ok_or_else(|| {
            Error::parse(
                lines.last_line + 1,
                format!("expected {m} edges, found {k}"),
            )
        })?;
        let (u, v) = parse_pair(line, text)?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(line, format!("vertex {x} outside 1..={n}")));
            }
        }
        edges.push((line, u - 1, v - 1));
    }
    // from_edges would lose the line number, so check here.
    let mut seen = std::collections::HashSet::with_capacity(m);
    for &(line, u, v) in &edges {
        if u == v {
            return Err(Error::parse(line, format!("self-loop on vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(
                line,
                format!("duplicate edge {{{}, {}}}", u.min(v) + 1, u.max(v) + 1),
            ));
        }
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(_, u, v)| (u, v)).collect();
    Graph::from_edges(n, &pairs)
}

/// Parses a single edge list; trailing content is rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let g = parse_from_lines(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "unexpected content after edge list"));
    }
    Ok(g)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.order(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_edge_list(g))?;
    Ok(())
}
