//! Native edge-list format.
//!
//! ```text
//! # comment
//! N_A N_B
//! a b
//! ...
//! ```
//!
//! Indices are zero-based. Lines starting with `#` and blank lines are
//! skipped; LF and CRLF line endings are both accepted.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Mode};

pub fn load_graph<R: BufRead>(reader: R) -> Result<BipartiteGraph> {
    let mut graph: Option<BipartiteGraph> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (x, y) = parse_pair(trimmed, line_no)?;
        match graph.as_mut() {
            None => graph = Some(BipartiteGraph::new(x, y)),
            Some(g) => {
                for (mode, index) in [(Mode::A, x), (Mode::B, y)] {
                    if index >= g.size(mode) {
                        return Err(Error::EdgeOutOfRange {
                            line: line_no,
                            mode,
                            index,
                            size: g.size(mode),
                        });
                    }
                }
                if g.contains(x, y) {
                    return Err(Error::DuplicateEdge {
                        line: line_no,
                        a: x,
                        b: y,
                    });
                }
                g.insert_unchecked(x, y);
            }
        }
    }
    graph.ok_or_else(|| parse_error(0, "missing \"N_A N_B\" header"))
}

pub fn load_graph_str(text: &str) -> Result<BipartiteGraph> {
    load_graph(text.as_bytes())
}

pub fn load_graph_file(path: impl AsRef<Path>) -> Result<BipartiteGraph> {
    let text = fs::read_to_string(path)?;
    load_graph_str(&text)
}

/// Writes the header and the edges sorted by `(a, b)`.
pub fn save_graph<W: Write>(g: &BipartiteGraph, mut sink: W) -> Result<()> {
    writeln!(sink, "{} {}", g.n_a(), g.n_b())?;
    for (a, b) in g.sorted_edges() {
        writeln!(sink, "{a} {b}")?;
    }
    Ok(())
}

pub fn graph_to_string(g: &BipartiteGraph) -> String {
    let mut buf = Vec::new();
    save_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_ascii_whitespace();
    let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(parse_error(
            line_no,
            format!("expected two integers, got \"{line}\""),
        ));
    };
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(line_no, format!("\"{s}\" is not a non-negative integer")))
    };
    Ok((parse(x)?, parse(y)?))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
