//! Simple undirected graphs with stable vertex identities.
//!
//! Every operation that changes the structure returns a new [`Graph`]; the
//! receiver is left untouched. Vertex ids survive deletions, and edge
//! contraction mints a fresh id that is never reused within the lineage of
//! the graph it was derived from.

mod iso;
pub mod text;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use iso::is_isomorphic;

/// Opaque vertex token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, VertexSet>,
    edge_count: usize,
    /// Smallest id that has never been handed out in this lineage.
    next_id: u32,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated vertices with ids `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Graph on vertices `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            if !g.add_edge(VertexId(u), VertexId(v))? {
                return Err(Error::domain(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(g)
    }

    /// Graph on an arbitrary set of vertex ids.
    pub fn from_ids(
        ids: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut g = Graph::new();
        for id in ids {
            g.insert_vertex(id);
        }
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::with_vertices(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(VertexId(u), VertexId(v)).expect("fresh edge");
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(VertexId(0), VertexId(n as u32 - 1))
            .expect("closing edge");
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::with_vertices(n);
        for v in 1..n as u32 {
            g.add_edge(VertexId(v - 1), VertexId(v)).expect("path edge");
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.insert_vertex(id);
        id
    }

    /// Adds `id` if absent. Keeps the lineage counter above every id seen.
    pub fn insert_vertex(&mut self, id: VertexId) {
        self.adj.entry(id).or_default();
        self.next_id = self.next_id.max(id.0 + 1);
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        if fresh {
            self.adj.get_mut(&v).unwrap().insert(u);
            self.edge_count += 1;
        }
        Ok(fresh)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&VertexSet> {
        self.adj.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.neighbors(v).map(BTreeSet::len)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u..).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).max()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.values().map(BTreeSet::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn check_set<'a>(&self, s: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        s.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.remove_vertex_mut(v);
        Ok(g)
    }

    pub fn delete_vertices<'a>(&self, s: impl IntoIterator<Item = &'a VertexId>) -> Result<Graph> {
        let mut g = self.clone();
        for &v in s {
            self.check_vertex(v)?;
            if g.contains(v) {
                g.remove_vertex_mut(v);
            }
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        if !self.has_edge(u, v) {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adj.get_mut(&u).unwrap().remove(&v);
        g.adj.get_mut(&v).unwrap().remove(&u);
        g.edge_count -= 1;
        Ok(g)
    }

    /// `g / uv`, together with the id of the merged vertex.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexId)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        let w = g.contract_mut(u, v);
        Ok((g, w))
    }

    pub fn induced_subgraph<'a>(&self, s: impl IntoIterator<Item = &'a VertexId>) -> Result<Graph> {
        let keep: VertexSet = s.into_iter().copied().collect();
        self.check_set(&keep)?;
        let mut g = Graph {
            adj: BTreeMap::new(),
            edge_count: 0,
            next_id: self.next_id,
        };
        for &v in &keep {
            let ns: VertexSet = self.adj[&v].intersection(&keep).copied().collect();
            g.edge_count += ns.len();
            g.adj.insert(v, ns);
        }
        g.edge_count /= 2;
        Ok(g)
    }

    /// Connected components, ordered by their minimum vertex id.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reach(v, &VertexSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub(crate) fn reach(&self, start: VertexId, blocked: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[&x] {
                if !blocked.contains(&y) && comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.reach(v, &VertexSet::new()).len() == self.vertex_count(),
        }
    }

    /// Number of edges with exactly one end in `s`.
    pub fn boundary_edge_count<'a>(&self, s: impl IntoIterator<Item = &'a VertexId>) -> Result<usize> {
        let s: VertexSet = s.into_iter().copied().collect();
        self.check_set(&s)?;
        Ok(s
            .iter()
            .map(|v| self.adj[v].iter().filter(|w| !s.contains(w)).count())
            .sum())
    }

    /// Same structure with every vertex renamed through `map`.
    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Graph> {
        let ids: Vec<VertexId> = self
            .vertices()
            .map(|v| map.get(&v).copied().ok_or(Error::UnknownVertex(v)))
            .collect::<Result<_>>()?;
        let distinct: VertexSet = ids.iter().copied().collect();
        if distinct.len() != ids.len() {
            return Err(Error::domain("relabeling is not injective"));
        }
        Graph::from_ids(ids, self.edges().map(|(u, v)| (map[&u], map[&v])))
    }

    /// Relabels vertices to `0..n` in increasing id order. Returns the old ids by new index.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let order: Vec<VertexId> = self.vertices().collect();
        let map: BTreeMap<VertexId, VertexId> = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i as u32)))
            .collect();
        (self.relabeled(&map).expect("bijective"), order)
    }

    pub(crate) fn remove_vertex_mut(&mut self, v: VertexId) -> VertexSet {
        let ns = self.adj.remove(&v).expect("vertex present");
        for w in &ns {
            self.adj.get_mut(w).unwrap().remove(&v);
        }
        self.edge_count -= ns.len();
        ns
    }

    pub(crate) fn contract_mut(&mut self, u: VertexId, v: VertexId) -> VertexId {
        let nu = self.remove_vertex_mut(u);
        let nv = self.remove_vertex_mut(v);
        let w = self.add_vertex();
        for x in nu.union(&nv) {
            if *x != u && *x != v {
                self.add_edge(w, *x).expect("endpoints present");
            }
        }
        w
    }
}

/// A pair of vertex sets covering `V(G)` with no edge between the two private parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Separation {
    pub fn new(g: &Graph, left: VertexSet, right: VertexSet) -> Result<Self> {
        g.check_set(&left)?;
        g.check_set(&right)?;
        if left.union(&right).count() != g.vertex_count() {
            return Err(Error::domain("separation sides do not cover the graph"));
        }
        let only_left: VertexSet = left.difference(&right).copied().collect();
        let only_right: VertexSet = right.difference(&left).copied().collect();
        if only_left.is_empty() || only_right.is_empty() {
            return Err(Error::domain("separation has an empty side"));
        }
        if only_left
            .iter()
            .any(|&a| only_right.iter().any(|&b| g.has_edge(a, b)))
        {
            return Err(Error::domain("edge crosses the separation"));
        }
        Ok(Separation { left, right })
    }

    /// The separation with `cutset` as intersection that puts the component
    /// of `G - cutset` containing the smallest vertex on the left.
    pub fn from_cutset(g: &Graph, cutset: &VertexSet) -> Result<Self> {
        g.check_set(cutset)?;
        let rest = g.delete_vertices(cutset)?;
        let comps = rest.components();
        if comps.len() < 2 {
            return Err(Error::domain("vertex set does not disconnect the graph"));
        }
        let mut left = comps[0].clone();
        left.extend(cutset.iter().copied());
        let mut right: VertexSet = comps[1..].iter().flatten().copied().collect();
        right.extend(cutset.iter().copied());
        Separation::new(g, left, right)
    }

    pub fn order(&self) -> usize {
        self.left.intersection(&self.right).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> VertexSet {
        v.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn delete_from_k5_gives_k4() {
        let g = Graph::complete(5);
        for v in g.vertices() {
            let h = g.delete_vertex(v).unwrap();
            assert_eq!((h.vertex_count(), h.edge_count()), (4, 6));
        }
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn delete_single_and_path_middle() {
        let g = Graph::with_vertices(1);
        assert!(g.delete_vertex(VertexId(0)).unwrap().is_empty());
        let p = Graph::path(3).delete_vertex(VertexId(1)).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (2, 0));
        assert_eq!(
            Graph::path(3).delete_vertex(VertexId(7)),
            Err(Error::UnknownVertex(VertexId(7)))
        );
    }

    #[test]
    fn contraction_examples() {
        let (t, w) = Graph::complete(3).contract_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (2, 1));
        assert_eq!(w, VertexId(3));
        assert!(t.has_edge(w, VertexId(2)));

        let (p, w) = Graph::path(3).contract_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(VertexId(2), w)]);

        let (k, _) = Graph::complete(4).contract_edge(VertexId(2), VertexId(3)).unwrap();
        assert!(is_isomorphic(&k, &Graph::complete(3)));

        assert_eq!(
            Graph::path(3).contract_edge(VertexId(0), VertexId(2)),
            Err(Error::NotAnEdge(VertexId(0), VertexId(2)))
        );
    }

    #[test]
    fn contraction_never_reuses_ids() {
        let g = Graph::complete(4);
        let (h, w1) = g.contract_edge(VertexId(0), VertexId(1)).unwrap();
        let (h, w2) = h.contract_edge(w1, VertexId(2)).unwrap();
        assert_ne!(w1, w2);
        let h = h.delete_vertex(w2).unwrap();
        let mut h2 = h.clone();
        assert!(h2.add_vertex() > w2);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k5 = Graph::complete(5);
        let t = k5.induced_subgraph(&ids(&[0, 2, 4])).unwrap();
        assert!(is_isomorphic(&t, &Graph::complete(3)));
        let c5 = Graph::cycle(5);
        let h = c5.induced_subgraph(&ids(&[0, 2, 4])).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(VertexId(0), VertexId(4))]);
        assert!(c5.induced_subgraph(&VertexSet::new()).unwrap().is_empty());
        assert!(c5.induced_subgraph(&ids(&[9])).is_err());
    }

    #[test]
    fn components_examples() {
        let mut g = Graph::complete(5);
        for i in 0..5 {
            g.add_vertex();
            for j in 0..i {
                g.add_edge(VertexId(5 + i), VertexId(5 + j)).unwrap();
            }
        }
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 5));
        assert_eq!(comps[0].first(), Some(&VertexId(0)));
        assert!(Graph::new().components().is_empty());
        assert_eq!(g.boundary_edge_count(&comps[0]).unwrap(), 0);
    }

    #[test]
    fn boundary_counts_in_k5() {
        let g = Graph::complete(5);
        assert_eq!(g.boundary_edge_count(&ids(&[3])).unwrap(), 4);
        assert_eq!(g.boundary_edge_count(&ids(&[1, 3])).unwrap(), 6);
    }

    #[test]
    fn separations() {
        let g = Graph::path(3);
        let sep = Separation::from_cutset(&g, &ids(&[1])).unwrap();
        assert_eq!(sep.order(), 1);
        assert_eq!(sep.left, ids(&[0, 1]));
        assert!(Separation::new(&g, ids(&[0, 1]), ids(&[2])).is_err());
        assert!(Separation::from_cutset(&Graph::complete(4), &ids(&[0])).is_err());
    }
}
