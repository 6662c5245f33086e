//! graph6 reader, short form only (`n ≤ 62`).

use raag_core::SimplicialGraph;

pub const MAX_VERTICES: usize = 62;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph6 line {line}: {message}")]
pub struct Graph6Error {
    pub line: usize,
    pub message: String,
}

fn fail(line: usize, message: impl Into<String>) -> Graph6Error {
    Graph6Error { line, message: message.into() }
}

/// Decodes one graph6 string into a labeled graph on `v0..`.
pub fn parse_line(text: &str, line: usize) -> Result<SimplicialGraph, Graph6Error> {
    let bytes = text.strip_prefix(HEADER).unwrap_or(text).as_bytes();
    let (&first, rest) = bytes.split_first().ok_or_else(|| fail(line, "empty record"))?;
    if !(63..=126).contains(&first) {
        return Err(fail(line, format!("invalid size byte {first}")));
    }
    if first == 126 {
        return Err(fail(line, format!("more than {MAX_VERTICES} vertices is not supported")));
    }
    let n = usize::from(first - 63);
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if rest.len() != needed {
        return Err(fail(line, format!("expected {needed} data bytes for n={n}, found {}", rest.len())));
    }
    let mut sextets = Vec::with_capacity(needed);
    for &b in rest {
        if !(63..=126).contains(&b) {
            return Err(fail(line, format!("invalid data byte {b}")));
        }
        sextets.push(b - 63);
    }
    let bit = |k: usize| sextets[k / 6] >> (5 - k % 6) & 1 == 1;
    // column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    let edges: Vec<(usize, usize)> = pairs.enumerate().filter(|&(k, _)| bit(k)).map(|(_, p)| p).collect();
    SimplicialGraph::labeled(n, edges).map_err(|e| fail(line, e.to_string()))
}

/// All graphs in a stream, one per nonblank line.
pub fn parse_stream(text: &str) -> Result<Vec<SimplicialGraph>, Graph6Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l.trim(), i + 1))
        .collect()
}
