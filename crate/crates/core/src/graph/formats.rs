//! graph6 and edge-list text formats.
//!
//! Edge list: header `n m`, then `m` lines `u v` (0-indexed), LF endings.
//! The canonical form lists each edge once as `u < v` in ascending order.
//! graph6: the standard 6-bit encoding, no `>>graph6<<` header.

use super::Graph;
use crate::error::{CoarseError, Result};

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| CoarseError::parse(1, 0, "missing `n m` header"))?;
    let [n, m] = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(CoarseError::parse(line, 0, format!("vertex out of range 0..{n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(CoarseError::parse(
            header_line,
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| CoarseError::parse(header_line, 0, e.to_string()))
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut fields = text.split_whitespace();
    let mut out = [0; 2];
    for slot in &mut out {
        let field = fields
            .next()
            .ok_or_else(|| CoarseError::parse(line, text.len(), "expected two integers"))?;
        let offset = field.as_ptr() as usize - text.as_ptr() as usize;
        *slot = field
            .parse()
            .map_err(|_| CoarseError::parse(line, offset, format!("not a vertex id: {field:?}")))?;
    }
    if let Some(extra) = fields.next() {
        let offset = extra.as_ptr() as usize - text.as_ptr() as usize;
        return Err(CoarseError::parse(line, offset, "trailing field"));
    }
    Ok(out)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n < 63 {
        bytes.push(n as u8 + 63);
    } else if n < 258_048 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = chunk << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((chunk << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let data = text.trim_end_matches(['\n', '\r']).as_bytes();
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(CoarseError::parse(
                1,
                i,
                format!("byte {b} outside graph6 range 63..=126"),
            ));
        }
    }
    let digits = |from: usize, count: usize| -> Result<usize> {
        let slice = data
            .get(from..from + count)
            .ok_or_else(|| CoarseError::parse(1, from, "truncated vertex count"))?;
        Ok(slice.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, body_start) = match data {
        [] => return Err(CoarseError::parse(1, 0, "empty graph6 string")),
        [126, 126, ..] => (digits(2, 6)?, 8),
        [126, ..] => (digits(1, 3)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let body = &data[body_start..];
    if body.len() != expected {
        return Err(CoarseError::parse(
            1,
            body_start,
            format!("expected {expected} data bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if (body[bit / 6] - 63) >> (5 - bit % 6) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 && (body[bit / 6] - 63) & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(CoarseError::parse(1, body_start + bit / 6, "nonzero padding bits"));
    }
    Ok(Graph::from_edge_iter(n, edges))
}

/// Detects the format: an edge list always has a space-separated header.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.contains(char::is_whitespace) {
        parse_edge_list(text)
    } else {
        parse_graph6(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, path(3));
        assert_eq!(to_edge_list(&g), "3 2\n0 1\n1 2\n");
        assert_eq!(to_edge_list(&path(10)).lines().next(), Some("10 9"));
    }

    #[test]
    fn edge_list_errors_locate_the_fault() {
        match parse_edge_list("3 2\n0 1\n1 x\n") {
            Err(CoarseError::Parse { line, offset, .. }) => assert_eq!((line, offset), (3, 2)),
            other => panic!("{other:?}"),
        }
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n1 1\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("3 1\n0 5\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // Star centred at 4: only the pairs (i, 4) are set.
        assert_eq!(
            parse_graph6("D?{").unwrap(),
            Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap()
        );
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(to_graph6(&path(2)), "A_");
    }

    #[test]
    fn graph6_large_header() {
        let g = path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D?").is_err());
        assert!(parse_graph6("D? {").is_err());
        // n = 2 has one data bit; the low five must be zero.
        assert!(parse_graph6("A`").is_err());
    }

    #[test]
    fn detection() {
        assert_eq!(parse_graph("D?{\n").unwrap().m(), 4);
        assert_eq!(parse_graph("2 1\n0 1\n").unwrap(), path(2));
    }
}
