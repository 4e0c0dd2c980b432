//! Plain-text edge-list format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```

use std::collections::BTreeSet;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

fn numbers(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != 2 {
        return Err(Error::parse(lineno, "expected two space-separated integers"));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(lineno, format!("not a non-negative integer: {s:?}")))
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

pub fn parse_graph(input: &str) -> Result<Graph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());

    let (lineno, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let (n, m) = numbers(header, lineno)?;
    if n > u32::MAX as usize {
        return Err(Error::parse(lineno, "too many vertices"));
    }
    let mut g = Graph::with_vertices(n);
    let mut seen = BTreeSet::new();
    for _ in 0..m {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::parse(lineno, format!("expected {m} edge lines")))?;
        let (u, v) = numbers(line, lineno)?;
        if u == v {
            return Err(Error::parse(lineno, format!("self-loop at {u}")));
        }
        if u > v {
            return Err(Error::parse(lineno, format!("edge {u} {v} is not written as u < v")));
        }
        if v >= n {
            return Err(Error::parse(lineno, format!("vertex {v} out of range 0..{n}")));
        }
        if !seen.insert((u, v)) {
            return Err(Error::parse(lineno, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(VertexId(u as u32), VertexId(v as u32))?;
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::parse(lineno, "trailing content after the edge list"));
    }
    Ok(g)
}

/// Writes `g` with vertices renumbered `0..n` in increasing id order.
pub fn write_graph(g: &Graph) -> String {
    let (g, _) = g.compacted();
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u.0, v.0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_bit_exact() {
        assert_eq!(write_graph(&Graph::cycle(4)), "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(write_graph(&Graph::new()), "0 0\n");
    }

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# triangle\n3 3\n0 1\n# mid\n1 2\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(parse_graph("3 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_graph("3 1\n0 3\n").is_err());
        assert!(parse_graph("3 1\n2 1\n").is_err());
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("3 1\n0 1\n1 2\n").is_err());
        assert!(parse_graph("3  1\n0 1\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn relabels_sparse_ids() {
        let g = Graph::complete(4).delete_vertex(VertexId(1)).unwrap();
        assert_eq!(write_graph(&g), "3 3\n0 1\n0 2\n1 2\n");
    }
}
