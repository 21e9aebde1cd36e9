//! Single-file text bundle for a [`SubgraphPair`].
//!
//! ```text
//! base
//! <edge list of G>
//! S 3 4 6 8
//! pi 1 2 3 4
//! anonymized
//! <edge list of H_pi>
//! ```
//!
//! `S` lists the chosen vertices ascending (1-based); `pi` gives the label of
//! each element of `S` in that order. Formatting is canonical, so
//! `format_bundle(parse_bundle(text)) == text` for any text this module wrote.

use std::fs;
use std::path::Path;

use super::SubgraphPair;
use crate::error::{Error, Result};
use crate::graph::edgelist::{format_edge_list, parse_from_lines, Lines};
use crate::graph::VertexBijection;

pub fn format_bundle(pair: &SubgraphPair) -> String {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| (x + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "base\n{}S {}\npi {}\nanonymized\n{}",
        format_edge_list(pair.base()),
        join(pair.chosen_set()),
        join(pair.bijection().image()),
        format_edge_list(pair.anonymized()),
    )
}

fn expect_keyword(lines: &mut Lines<'_>, keyword: &str) -> Result<()> {
    match lines.next() {
        Some((_, text)) if text == keyword => Ok(()),
        Some((line, text)) => Err(Error::parse(
            line,
            format!("expected `{keyword}`, found `{text}`"),
        )),
        None => Err(Error::parse(
            lines.last_line + 1,
            format!("expected `{keyword}`"),
        )),
    }
}

fn parse_id_line(lines: &mut Lines<'_>, key: &str) -> Result<(usize, Vec<usize>)> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::parse(lines.last_line + 1, format!("expected `{key}` line")))?;
    let mut fields = text.split_whitespace();
    if fields.next() != Some(key) {
        return Err(Error::parse(line, format!("expected `{key}` line")));
    }
    let ids = fields
        .map(|f| match f.parse::<usize>() {
            Ok(0) => Err(Error::parse(line, "ids are 1-based")),
            Ok(x) => Ok(x - 1),
            Err(e) => Err(Error::parse(line, format!("bad id `{f}`: {e}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(Error::parse(line, format!("`{key}` line is empty")));
    }
    Ok((line, ids))
}

pub fn parse_bundle(text: &str) -> Result<SubgraphPair> {
    let mut lines = Lines::new(text);
    expect_keyword(&mut lines, "base")?;
    let base = parse_from_lines(&mut lines)?;
    let (s_line, chosen) = parse_id_line(&mut lines, "S")?;
    if chosen.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(s_line, "S must be strictly ascending"));
    }
    if let Some(&v) = chosen.last() {
        if v >= base.order() {
            return Err(Error::parse(
                s_line,
                format!("vertex {} outside base graph", v + 1),
            ));
        }
    }
    let (pi_line, labels) = parse_id_line(&mut lines, "pi")?;
    if labels.len() != chosen.len() {
        return Err(Error::parse(
            pi_line,
            "pi must have one label per element of S",
        ));
    }
    let bijection = VertexBijection::from_parts(chosen.clone(), labels)
        .map_err(|e| Error::parse(pi_line, e.to_string()))?;
    expect_keyword(&mut lines, "anonymized")?;
    let anon_line = lines.last_line + 1;
    let anonymized = parse_from_lines(&mut lines)?;
    if anonymized.order() != chosen.len() {
        return Err(Error::parse(
            anon_line,
            "anonymized graph order must equal |S|",
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "unexpected content after bundle"));
    }
    Ok(SubgraphPair::from_parts(
        base, chosen, bijection, anonymized,
    ))
}

pub fn read_bundle(path: impl AsRef<Path>) -> Result<SubgraphPair> {
    parse_bundle(&fs::read_to_string(path)?)
}

pub fn write_bundle(pair: &SubgraphPair, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_bundle(pair))?;
    Ok(())
}
