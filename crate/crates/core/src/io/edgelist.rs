//! Plain-text edge lists.
//!
//! ```text
//! # nodes: 4
//! # comment lines start with '#'
//! 0 1
//! 1 2 2.5
//! ```
//!
//! Each data line holds `source target [weight]`, separated by spaces or
//! tabs. Node ids are non-negative integers; the weight defaults to 1 and
//! must be positive. `n` is the largest id plus one, raised by an optional
//! `# nodes: N` header. LF and CRLF line endings are accepted.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

use super::fmt_float;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_node(field: &str, line: usize) -> Result<usize> {
    match field.parse::<i64>() {
        Ok(id) if id < 0 => Err(parse_error(line, format!("negative node id {id}"))),
        Ok(id) => {
            usize::try_from(id).map_err(|_| parse_error(line, format!("node id {id} too large")))
        }
        Err(_) => Err(parse_error(line, format!("invalid node id '{field}'"))),
    }
}

fn parse_header(comment: &str) -> Option<&str> {
    comment
        .trim_start_matches('#')
        .trim()
        .strip_prefix("nodes:")
        .map(str::trim)
}

/// Parses an edge list from a string.
pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    parse_edge_list_reader(text.as_bytes())
}

pub fn parse_edge_list_reader<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut declared = 0usize;
    let mut max_id: Option<usize> = None;
    let mut edges = Vec::new();

    for (idx, line) in reader.split(b'\n').enumerate() {
        let lineno = idx + 1;
        let raw = line?;
        let text = std::str::from_utf8(&raw)
            .map_err(|_| parse_error(lineno, "line is not valid UTF-8"))?;
        let text = text.strip_suffix('\r').unwrap_or(text).trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            if let Some(count) = parse_header(text) {
                let n = count
                    .parse::<usize>()
                    .map_err(|_| parse_error(lineno, format!("invalid node count '{count}'")))?;
                declared = declared.max(n);
            }
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_error(
                lineno,
                format!(
                    "expected 'source target [weight]', got {} fields",
                    fields.len()
                ),
            ));
        }
        let source = parse_node(fields[0], lineno)?;
        let target = parse_node(fields[1], lineno)?;
        let weight = match fields.get(2) {
            Some(w) => w
                .parse::<f64>()
                .map_err(|_| parse_error(lineno, format!("invalid weight '{w}'")))?,
            None => 1.0,
        };
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(parse_error(
                lineno,
                format!("weight must be positive and finite, got {weight}"),
            ));
        }
        max_id = Some(max_id.map_or(source.max(target), |m| m.max(source).max(target)));
        edges.push((source, target, weight));
    }

    let n = declared.max(max_id.map_or(0, |m| m + 1));
    let mut g = DirectedGraph::new(n)?;
    for (s, t, w) in edges {
        g.add_edge(s, t, w)?;
    }
    Ok(g)
}

/// Writes a graph in the format read by [`parse_edge_list`], with a
/// `# nodes:` header so isolated trailing nodes survive.
pub fn write_edge_list(g: &DirectedGraph) -> String {
    let mut out = format!("# nodes: {}\n", g.n());
    for (s, t, w) in g.edges() {
        let _ = writeln!(out, "{s} {t} {}", fmt_float(w));
    }
    out
}
