//! Exhaustive enumeration of small labeled graphs by edge subset.

use crate::graph::{Graph, VertexId};

/// Every graph on vertices `0..n`, one per edge subset, optionally keeping
/// only connected ones. Isomorphic copies are not merged.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(u32, u32)>,
    next: u64,
    end: u64,
    connected_only: bool,
}

pub const CORPUS_MAX_N: usize = 8;

impl LabeledGraphs {
    pub fn new(n: usize, connected_only: bool) -> Self {
        assert!(n <= CORPUS_MAX_N, "labeled corpus is limited to {CORPUS_MAX_N} vertices");
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
            .collect();
        LabeledGraphs {
            n,
            end: 1u64 << pairs.len(),
            pairs,
            next: 0,
            connected_only,
        }
    }

    fn connected(&self, mask: u64) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = [0u32; CORPUS_MAX_N];
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a as usize] |= 1 << b;
                adj[b as usize] |= 1 << a;
            }
        }
        let full = (1u32 << self.n) - 1;
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == full
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.connected_only && !self.connected(mask) {
                continue;
            }
            let mut g = Graph::with_vertices(self.n);
            for (i, &(a, b)) in self.pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(VertexId(a), VertexId(b)).expect("distinct pair");
                }
            }
            return Some(g);
        }
        None
    }
}

/// Connected labeled graphs on `1..=max_n` vertices, by size then edge mask.
pub fn connected_corpus(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(|n| LabeledGraphs::new(n, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // connected labeled graphs on n vertices
        let want = [1usize, 1, 4, 38, 728, 26704];
        for (n, &w) in (1..=6).zip(&want) {
            assert_eq!(LabeledGraphs::new(n, true).count(), w, "n = {n}");
        }
        assert_eq!(LabeledGraphs::new(4, false).count(), 64);
        assert_eq!(LabeledGraphs::new(0, false).count(), 1);
    }

    #[test]
    fn members_are_connected() {
        assert!(connected_corpus(5).all(|g| g.is_connected()));
    }
}
