//! Plain-text graph and cover formats.
//!
//! Graph: first line `n m`, then `m` lines `u v` (0-based, space separated).
//! Cover: first line `k`, then `k` lines of space-separated vertex ids.

use std::fmt::Write as _;

use super::{Dag, PathCover, Vertex};
use crate::error::{MpcError, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> MpcError {
    MpcError::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

/// Meaningful lines with their 1-based line numbers; a single trailing
/// newline is tolerated, blank lines elsewhere are not.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
}

pub fn parse_graph(text: &str) -> Result<Dag> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let header = numbers(1, header)?;
    let [n, m] = header[..] else {
        return Err(parse_err(1, "header must be `n m`"));
    };
    let n = usize::try_from(n).map_err(|_| parse_err(1, "n too large"))?;
    if n > Vertex::MAX as usize {
        return Err(parse_err(1, "n too large"));
    }
    let mut edges = Vec::with_capacity(m.min(1 << 28) as usize);
    for (line_no, line) in lines {
        let nums = numbers(line_no, line)?;
        let [u, v] = nums[..] else {
            return Err(parse_err(line_no, "edge line must be `u v`"));
        };
        if u >= n as u64 || v >= n as u64 {
            return Err(MpcError::VertexOutOfRange {
                vertex: u.max(v),
                n,
            });
        }
        edges.push((u as Vertex, v as Vertex));
    }
    if edges.len() as u64 != m {
        return Err(parse_err(
            edges.len() + 1,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Dag::from_edges(n, &edges)
}

pub fn write_graph(g: &Dag) -> String {
    let mut out = String::with_capacity(12 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_cover(text: &str) -> Result<PathCover> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let header = numbers(1, header)?;
    let [k] = header[..] else {
        return Err(parse_err(1, "header must be `k`"));
    };
    let mut paths = Vec::new();
    for (line_no, line) in lines {
        let path = numbers(line_no, line)?
            .into_iter()
            .map(|x| Vertex::try_from(x).map_err(|_| parse_err(line_no, "vertex id too large")))
            .collect::<Result<Vec<_>>>()?;
        paths.push(path);
    }
    if paths.len() as u64 != k {
        return Err(parse_err(
            paths.len() + 1,
            format!("header announces {k} paths, found {}", paths.len()),
        ));
    }
    Ok(PathCover::new(paths))
}

pub fn write_cover(pc: &PathCover) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", pc.len());
    for path in &pc.paths {
        let mut first = true;
        for v in path {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
