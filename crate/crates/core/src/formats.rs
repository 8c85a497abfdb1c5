//! Graph serialization: graph6, flat adjacency-list text, and DOT output.
//!
//! graph6 is implemented bit-exactly against the format's standard
//! definition: a length header `N(n)`, then the upper triangle of the
//! adjacency matrix read column by column, packed big-endian into 6-bit
//! groups offset by 63. Encoding then decoding is the identity on bytes,
//! and the decoder is strict: bad characters, truncation, nonzero padding
//! and trailing data are all errors with positions.

use crate::graph::{Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("graph6 data truncated: expected {expected} adjacency bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("invalid graph6 byte {byte:#x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph6 vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooLarge(u64),
    #[error("nonzero padding bits at end of graph6 data")]
    NonzeroPadding,
    #[error("trailing data after graph6 record")]
    TrailingData,
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes `n` as the graph6 length header.
fn encode_size(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else {
        // 4-byte form covers up to 258047; the graph cap is far below that.
        vec![
            126,
            ((n >> 12) & 0x3f) as u8 + 63,
            ((n >> 6) & 0x3f) as u8 + 63,
            (n & 0x3f) as u8 + 63,
        ]
    }
}

/// Serializes a graph to its graph6 string.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.num_vertices();
    let mut out = encode_size(n);
    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses a graph6 record. Accepts an optional `>>graph6<<` header and a
/// trailing newline; anything else beyond the record is an error.
pub fn from_graph6(text: &str) -> Result<Graph, FormatError> {
    let mut bytes = text.as_bytes();
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    while let Some(rest) = bytes.strip_suffix(b"\n").or_else(|| bytes.strip_suffix(b"\r")) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    let check = |offset: usize| -> Result<u64, FormatError> {
        let byte = *bytes.get(offset).ok_or(FormatError::Truncated {
            expected: offset + 1,
            found: bytes.len(),
        })?;
        if !(63..=126).contains(&byte) {
            return Err(FormatError::InvalidByte { byte, offset });
        }
        Ok(u64::from(byte - 63))
    };
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() > 1 && bytes[1] == 126 {
            // 8-byte form encodes n ≥ 258048, far past the cap.
            return Err(FormatError::TooLarge(258048));
        }
        let n = (check(1)? << 12) | (check(2)? << 6) | check(3)?;
        (n, 4)
    } else {
        (check(0)?, 1)
    };
    if n as usize > MAX_VERTICES {
        return Err(FormatError::TooLarge(n));
    }
    let n = n as usize;
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < header_len + nbytes {
        return Err(FormatError::Truncated {
            expected: nbytes,
            found: bytes.len() - header_len,
        });
    }
    if bytes.len() > header_len + nbytes {
        return Err(FormatError::TrailingData);
    }
    let mut edges = Vec::new();
    let mut i = 0;
    let mut j = 1;
    for k in 0..nbytes * 6 {
        let value = check(header_len + k / 6)?;
        let bit = (value >> (5 - k % 6)) & 1;
        if k >= nbits {
            if bit != 0 {
                return Err(FormatError::NonzeroPadding);
            }
            continue;
        }
        if bit == 1 {
            edges.push((i, j));
        }
        i += 1;
        if i == j {
            i = 0;
            j += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Serializes a graph as sorted `u v` edge lines, one per line, `u < v`.
pub fn to_adjlist(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses `u v` edge lines. Blank lines are skipped; the vertex count is
/// one more than the largest label seen. Duplicate edges and loops are
/// rejected with their line number.
pub fn from_adjlist(text: &str) -> Result<Graph, FormatError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_vertex = 0usize;
    let mut lines_seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        lines_seen += 1;
        let mut tokens = trimmed.split_whitespace();
        let err = |message: String| FormatError::Line { line, message };
        let mut next = |what: &str| -> Result<usize, FormatError> {
            tokens
                .next()
                .ok_or_else(|| err(format!("missing {what} vertex")))?
                .parse::<usize>()
                .map_err(|_| err(format!("{what} vertex is not a nonnegative integer")))
        };
        let u = next("first")?;
        let v = next("second")?;
        if tokens.next().is_some() {
            return Err(err("expected exactly two vertices per line".into()));
        }
        if u == v {
            return Err(err(format!("loop at vertex {u}")));
        }
        let pair = (u.min(v), u.max(v));
        if edges.contains(&pair) {
            return Err(err(format!("duplicate edge {} {}", pair.0, pair.1)));
        }
        max_vertex = max_vertex.max(pair.1);
        edges.push(pair);
    }
    if lines_seen == 0 {
        return Err(FormatError::Empty);
    }
    Ok(Graph::from_edges(max_vertex + 1, &edges)?)
}

/// Emits DOT for visualization; layout is the renderer's problem.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.num_vertices() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
