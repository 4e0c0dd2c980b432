//! Bitset engine for graphs with at most 64 vertices.
//!
//! The public API works on [`Graph`]; the solvers translate into this form
//! so that corpus-scale checks (millions of small graphs) stay cheap.
//! Slots are stable: deletion clears a slot, and suppressing a degree-2
//! vertex keeps the merged vertex in the slot of the neighbor it was merged
//! into. A transversal of the reduced graph is therefore, slot for slot, a
//! transversal of the graph before reduction.

use crate::graph::{Graph, VertexId};

pub(crate) const DENSE_LIMIT: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) struct BitGraph {
    adj: [u64; DENSE_LIMIT],
    alive: u64,
}

impl BitGraph {
    pub(crate) fn empty(n: usize) -> Self {
        assert!(n <= DENSE_LIMIT);
        BitGraph {
            adj: [0; DENSE_LIMIT],
            alive: if n == DENSE_LIMIT { u64::MAX } else { bit(n) - 1 },
        }
    }

    /// Returns `None` above 64 vertices. Slot `i` holds the `i`-th smallest id.
    pub(crate) fn from_graph(g: &Graph) -> Option<(Self, Vec<VertexId>)> {
        if g.vertex_count() > DENSE_LIMIT {
            return None;
        }
        let order: Vec<VertexId> = g.vertices().collect();
        let mut bg = BitGraph::empty(order.len());
        let index = |v: VertexId| order.binary_search(&v).expect("vertex present");
        for (u, v) in g.edges() {
            bg.add_edge(index(u), index(v));
        }
        Some((bg, order))
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub(crate) fn alive(&self) -> u64 {
        self.alive
    }

    pub(crate) fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub(crate) fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    #[cfg(test)]
    pub(crate) fn edge_count(&self) -> u32 {
        bits(self.alive).map(|v| self.degree(v)).sum::<u32>() / 2
    }

    pub(crate) fn delete(&mut self, v: usize) {
        for w in bits(self.adj[v]) {
            self.adj[w] &= !bit(v);
        }
        self.adj[v] = 0;
        self.alive &= !bit(v);
    }

    pub(crate) fn delete_set(&mut self, mask: u64) {
        for v in bits(mask & self.alive) {
            self.delete(v);
        }
    }

    fn low_degree_mask(&self) -> u64 {
        bits(self.alive)
            .filter(|&v| self.degree(v) <= 2)
            .fold(0, |m, v| m | bit(v))
    }

    /// Exhaustively applies the three degree-at-most-2 reductions, always to
    /// the smallest eligible slot.
    pub(crate) fn reduce(&mut self) {
        let mut cand = self.low_degree_mask();
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let nb = self.adj[v];
            if self.alive & bit(v) == 0 || nb.count_ones() > 2 {
                continue;
            }
            match nb.count_ones() {
                0 | 1 => self.delete(v),
                _ => {
                    // merging v into its smaller neighbor a is deleting v
                    // and joining a to the other neighbor b
                    let a = nb.trailing_zeros() as usize;
                    let b = 63 - nb.leading_zeros() as usize;
                    self.delete(v);
                    self.add_edge(a, b);
                }
            }
            for w in bits(nb) {
                if self.degree(w) <= 2 {
                    cand |= bit(w);
                }
            }
        }
    }

    pub(crate) fn is_minor_free(&self) -> bool {
        let mut g = *self;
        g.reduce();
        g.alive == 0
    }

    /// A vertex-minimal subgraph that still has a K4 minor; its vertices
    /// are exactly those of some K4 subdivision.
    fn vertex_minimal_k4(&self) -> Option<BitGraph> {
        if self.is_minor_free() {
            return None;
        }
        let mut g = *self;
        for v in bits(self.alive) {
            let mut h = g;
            h.delete(v);
            if !h.is_minor_free() {
                g = h;
            }
        }
        Some(g)
    }

    /// Vertex- then edge-minimal subgraph with a K4 minor: a K4 subdivision.
    pub(crate) fn minimal_k4(&self) -> Option<BitGraph> {
        let mut g = self.vertex_minimal_k4()?;
        for u in bits(g.alive) {
            for w in bits(g.adj[u] & u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0)) {
                let mut h = g;
                h.delete_edge(u, w);
                if !h.is_minor_free() {
                    g = h;
                }
            }
        }
        Some(g)
    }

    /// Smallest `k` such that deleting `k` vertices can leave few enough
    /// edges for a K4-minor-free graph (at most `2n' - 3` on `n' >= 2` vertices).
    pub(crate) fn lower_bound(&self) -> u32 {
        let n = self.alive.count_ones();
        let mut degs: Vec<u32> = bits(self.alive).map(|v| self.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        let m = degs.iter().sum::<u32>() / 2;
        let mut removed = 0;
        for k in 0..=n {
            let rest = n - k;
            let cap = if rest >= 2 { 2 * rest - 3 } else { 0 };
            if m.saturating_sub(removed) <= cap {
                return k;
            }
            if (k as usize) < degs.len() {
                removed += degs[k as usize];
            }
        }
        n
    }
}

/// First transversal in (size, lexicographic) order.
pub(crate) fn brute_force(g: &BitGraph) -> u64 {
    let verts: Vec<usize> = bits(g.alive).collect();
    let n = verts.len();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0, |m, &i| m | bit(verts[i]));
            let mut h = *g;
            h.delete_set(mask);
            if h.is_minor_free() {
                return mask;
            }
            // next k-combination of 0..n in lexicographic order
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("deleting every vertex always leaves a K4-minor-free graph")
}

/// Minimum transversal by iterative deepening over branch-and-reduce.
pub(crate) fn exact(g: &BitGraph) -> u64 {
    (0..)
        .find_map(|budget| search(*g, budget))
        .expect("the full vertex set is a transversal")
}

fn search(mut g: BitGraph, budget: u32) -> Option<u64> {
    g.reduce();
    if g.alive == 0 {
        return Some(0);
    }
    if budget == 0 || g.lower_bound() > budget {
        return None;
    }
    let obstruction = g.vertex_minimal_k4().expect("nonempty core has a K4 minor");
    for x in bits(obstruction.alive) {
        let mut h = g;
        h.delete(x);
        if let Some(s) = search(h, budget - 1) {
            return Some(s | bit(x));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(g: &Graph) -> BitGraph {
        BitGraph::from_graph(g).unwrap().0
    }

    #[test]
    fn minor_free_basics() {
        assert!(dense(&Graph::cycle(7)).is_minor_free());
        assert!(!dense(&Graph::complete(4)).is_minor_free());
        assert!(dense(&Graph::complete(3)).is_minor_free());
    }

    #[test]
    fn solvers_on_cliques() {
        for (n, s) in [(3, 0), (4, 1), (5, 2), (6, 3), (7, 4)] {
            let g = dense(&Graph::complete(n));
            assert_eq!(brute_force(&g).count_ones(), s);
            assert_eq!(exact(&g).count_ones(), s);
            assert!(g.lower_bound() <= s);
        }
    }

    #[test]
    fn brute_force_is_lexicographic() {
        assert_eq!(brute_force(&dense(&Graph::complete(5))), 0b11);
    }

    #[test]
    fn minimal_k4_is_cubic_plus_subdivisions() {
        let g = dense(&Graph::complete(6));
        let h = g.minimal_k4().unwrap();
        assert_eq!(h.alive.count_ones(), 4);
        assert_eq!(h.edge_count(), 6);
    }
}
