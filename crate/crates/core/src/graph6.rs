//! graph6 encoding and the plain edge-list format.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) into 6-bit groups, each offset by
//! 63. The vertex count prefix is one byte for `n <= 62`, `~` plus three bytes
//! for `n <= 258047`, and `~~` plus six bytes beyond that.

use crate::error::{Error, Graph6Error, Result};
use crate::graph::{Graph, VertexSet};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let col = g.neighbours(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(col.contains(i));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    let push_groups = |out: &mut Vec<u8>, groups: usize| {
        for k in (0..groups).rev() {
            out.push(((n >> (6 * k)) & 0x3f) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        push_groups(out, 3);
    } else {
        out.push(126);
        out.push(126);
        push_groups(out, 6);
    }
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::ByteOutOfRange { offset, byte });
        }
    }

    let (n, body) = decode_size(bytes)?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData(body.len() - expected));
    }

    let mut adj = vec![VertexSet::new(n); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let groups = |slice: &[u8]| slice.iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::MalformedHeader);
            }
            let n = groups(&rest[..6]);
            if n <= 258_047 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::MalformedHeader);
            }
            let n = groups(&rest[..3]);
            if n <= 62 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, &rest[3..]))
        }
        [first, rest @ ..] => Ok(((first - BIAS) as usize, rest)),
        [] => Err(Graph6Error::Empty),
    }
}

/// Parses the plain-text edge list: one `u v` pair per line, 0-indexed.
///
/// Blank lines and `#` comments are skipped. A line holding a single integer
/// fixes the vertex count (needed for trailing isolated vertices); otherwise
/// `n` is one more than the largest vertex mentioned.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<usize>().map_err(|e| Error::EdgeList {
                line: idx + 1,
                message: format!("{tok:?}: {e}"),
            })
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [n] => declared = Some(parse(n)?),
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => {
                return Err(Error::EdgeList {
                    line: idx + 1,
                    message: format!("expected `u v`, got {line:?}"),
                })
            }
        }
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::build(declared.unwrap_or(implied), &edges)
}

/// Reads a graph in either supported format.
///
/// Input whose first meaningful line is a single token made only of graph6
/// characters is treated as graph6; anything else as an edge list.
pub fn read_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if looks_like_graph6(line) => Ok(decode(line)?),
        _ => parse_edge_list(text),
    }
}

fn looks_like_graph6(line: &str) -> bool {
    let body = line.strip_prefix(HEADER).unwrap_or(line);
    !body.is_empty() && body.bytes().all(|b| (63..=126).contains(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, petersen};

    #[test]
    fn hand_encoded_k2() {
        // n = 2 -> 'A'; single bit x(0,1) = 1 -> 0b100000 + 63 = '_'.
        let k2 = complete(2);
        assert_eq!(encode(&k2), "A_");
        assert_eq!(decode("A_").unwrap(), k2);
        assert_eq!(encode(&Graph::empty(2)), "A?");
    }

    #[test]
    fn empty_graph_on_zero_vertices() {
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn known_strings() {
        assert_eq!(encode(&cycle(5).unwrap()), "Dhc");
        assert_eq!(encode(&complete(4)), "C~");
        assert_eq!(decode(&encode(&petersen())).unwrap(), petersen());
    }

    #[test]
    fn large_size_prefix() {
        let g = Graph::empty(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(decode(">>graph6<<A_\n").unwrap(), complete(2));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("D?"), Err(Graph6Error::Truncated { expected: 2, found: 1 }));
        assert_eq!(decode("A__"), Err(Graph6Error::TrailingData(1)));
        assert_eq!(
            decode("A "),
            Err(Graph6Error::ByteOutOfRange { offset: 1, byte: b' ' })
        );
        assert_eq!(decode("~?"), Err(Graph6Error::MalformedHeader));
        // 3-byte form must not be used for n <= 62.
        assert_eq!(decode("~???"), Err(Graph6Error::MalformedHeader));
    }

    #[test]
    fn edge_list_format() {
        let g = parse_edge_list("# C4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, cycle(4).unwrap());
        let g = parse_edge_list("6\n0 1\n").unwrap();
        assert_eq!(g.n(), 6);
        assert!(parse_edge_list("0 1 2").is_err());
        assert!(parse_edge_list("0 x").is_err());
        assert!(parse_edge_list("2\n0 2").is_err());
    }

    #[test]
    fn read_graph_detects_format() {
        assert_eq!(read_graph("Dhc\n").unwrap(), cycle(5).unwrap());
        assert_eq!(read_graph("0 1\n").unwrap(), complete(2));
        assert_eq!(read_graph("3\n").unwrap(), Graph::empty(3));
    }
}
