//! The graph6 format: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, packed big-endian into 6-bit groups
//! with a bias of 63.

use thiserror::Error;

use super::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 258_047;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed length header")]
    BadHeader,
    #[error("graph order {0} exceeds {MAX_ORDER}")]
    TooLarge(usize),
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadCharacter { byte: u8, offset: usize },
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("padding bits in the last byte are not zero")]
    NonzeroPadding,
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u32, Graph6Error> {
    let byte = bytes[offset];
    if !(63..=126).contains(&byte) {
        return Err(Graph6Error::BadCharacter { byte, offset });
    }
    Ok((byte - 63) as u32)
}

pub fn parse_graph6(input: &[u8]) -> Result<Graph, Graph6Error> {
    let mut bytes = input;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, start) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte form: only legal for n > 258047
            if bytes.len() < 8 {
                return Err(Graph6Error::BadHeader);
            }
            let mut n = 0u64;
            for i in 2..8 {
                n = (n << 6) | sextet(bytes, i)? as u64;
            }
            return Err(if n as usize <= MAX_ORDER {
                Graph6Error::BadHeader
            } else {
                Graph6Error::TooLarge(n as usize)
            });
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | sextet(bytes, i)? as usize;
        }
        if n < 63 {
            return Err(Graph6Error::BadHeader);
        }
        (n, 4)
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            expected,
            found: data.len(),
        });
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let word = sextet(data, k / 6).map_err(|e| match e {
                Graph6Error::BadCharacter { byte, offset } => Graph6Error::BadCharacter {
                    byte,
                    offset: offset + start,
                },
                other => other,
            })?;
            if word >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = sextet(data, expected - 1)?;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    // validate every data byte even when nbits is zero
    for offset in 0..data.len() {
        sextet(data, offset)?;
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(
        n <= MAX_ORDER,
        "graph6 output limited to {MAX_ORDER} vertices"
    );
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses a graph6 file: one graph per line, blank lines and `>>graph6<<`
/// headers ignored.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let line = line.strip_prefix(HEADER).unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line.as_bytes()).map_err(|e| Graph6Error::Line {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push(g);
    }
    Ok(out)
}
