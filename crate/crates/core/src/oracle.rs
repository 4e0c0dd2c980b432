//! Exact minimum transversals: brute force, branch-and-reduce, K4-subdivision
//! obstructions and edge criticality.

use std::fmt;

use crate::dense::{self, bits, BitGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::reduction::{is_k4_minor_free, lift_transversal, reduce_core, ReductionTrace};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    BranchAndReduce,
    Greedy,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute-force",
            Method::BranchAndReduce => "branch-and-reduce",
            Method::Greedy => "greedy",
        })
    }
}

/// A transversal together with the reduction of what remains after removing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalResult {
    pub vertices: VertexSet,
    pub size: usize,
    pub method: Method,
    /// Reduction trace of `g - vertices`; its end is empty.
    pub certificate: ReductionTrace,
}

impl TransversalResult {
    pub fn new(g: &Graph, vertices: VertexSet, method: Method) -> Result<Self> {
        let certificate = reduce_core(&g.delete_vertices(&vertices)?);
        if !certificate.end.is_empty() {
            return Err(Error::domain("vertex set is not a transversal"));
        }
        Ok(TransversalResult {
            size: vertices.len(),
            vertices,
            method,
            certificate,
        })
    }

    /// Re-derives the certificate against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let Ok(rest) = g.delete_vertices(&self.vertices) else {
            return false;
        };
        self.size == self.vertices.len()
            && self.certificate.start == rest
            && self.certificate.end.is_empty()
            && self.certificate.replay().is_ok_and(|end| end.is_empty())
    }
}

fn to_ids(mask: u64, order: &[VertexId]) -> VertexSet {
    bits(mask).map(|i| order[i]).collect()
}

/// Minimum transversal by enumerating vertex subsets by size, then
/// lexicographically. Refuses graphs above `DEFAULT_BRUTE_FORCE_CAP` vertices.
pub fn brute_force_s(g: &Graph) -> Result<TransversalResult> {
    brute_force_s_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_s_capped(g: &Graph, cap: usize) -> Result<TransversalResult> {
    let cap = cap.min(dense::DENSE_LIMIT);
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded {
            n: g.vertex_count(),
            cap,
        });
    }
    let (bg, order) = BitGraph::from_graph(g).expect("within dense limit");
    let mask = dense::brute_force(&bg);
    TransversalResult::new(g, to_ids(mask, &order), Method::BruteForce)
}

/// A K4 subdivision: four branch vertices joined pairwise by internally
/// disjoint paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K4Subdivision {
    pub branch: [VertexId; 4],
    /// Six paths, each listed from its smaller branch endpoint to the larger.
    pub paths: Vec<Vec<VertexId>>,
}

impl K4Subdivision {
    /// Reads the subdivision off a graph whose non-isolated part is exactly one.
    fn from_skeleton(h: &Graph) -> Self {
        let branch: Vec<VertexId> = h
            .vertices()
            .filter(|&v| h.degree(v).unwrap() == 3)
            .collect();
        assert_eq!(branch.len(), 4, "skeleton must have four branch vertices");
        let mut paths = Vec::new();
        for &b in &branch {
            for &first in h.neighbors(b).unwrap() {
                let mut path = vec![b];
                let (mut prev, mut cur) = (b, first);
                while !branch.contains(&cur) {
                    path.push(cur);
                    let next = *h
                        .neighbors(cur)
                        .unwrap()
                        .iter()
                        .find(|&&x| x != prev)
                        .expect("interior vertex has degree 2");
                    prev = cur;
                    cur = next;
                }
                path.push(cur);
                if b < cur {
                    paths.push(path);
                }
            }
        }
        paths.sort();
        K4Subdivision {
            branch: branch.try_into().unwrap(),
            paths,
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flatten().copied().collect()
    }

    /// Checks the structure against `g`: distinct branch vertices, one path
    /// per branch pair, disjoint interiors, and every path edge present.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let branch: VertexSet = self.branch.iter().copied().collect();
        if branch.len() != 4 || self.paths.len() != 6 {
            return false;
        }
        let mut pairs = std::collections::BTreeSet::new();
        let mut interior = VertexSet::new();
        for p in &self.paths {
            let (Some(&a), Some(&b)) = (p.first(), p.last()) else {
                return false;
            };
            if p.len() < 2 || !branch.contains(&a) || !branch.contains(&b) || a == b {
                return false;
            }
            pairs.insert((a.min(b), a.max(b)));
            for &x in &p[1..p.len() - 1] {
                if branch.contains(&x) || !interior.insert(x) {
                    return false;
                }
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
        }
        pairs.len() == 6
    }
}

/// Finds a K4 subdivision in `g`, or `None` when `g` has no K4 minor.
///
/// Works by shrinking `g` to a vertex-minimal and then edge-minimal subgraph
/// that still has a K4 minor; what is left is a subdivision.
pub fn find_k4_subdivision(g: &Graph) -> Option<K4Subdivision> {
    let skeleton = match BitGraph::from_graph(g) {
        Some((bg, order)) => {
            let h = bg.minimal_k4()?;
            let ids: Vec<VertexId> = bits(h.alive()).map(|i| order[i]).collect();
            let order = &order;
            let edges: Vec<_> = bits(h.alive())
                .flat_map(|u| {
                    bits(h.neighbors(u))
                        .filter(move |&w| w > u)
                        .map(move |w| (order[u], order[w]))
                })
                .collect();
            Graph::from_ids(ids, edges).expect("subgraph of g")
        }
        None => minimal_k4_generic(g)?,
    };
    Some(K4Subdivision::from_skeleton(&skeleton))
}

fn minimal_k4_generic(g: &Graph) -> Option<Graph> {
    if is_k4_minor_free(g) {
        return None;
    }
    let mut h = g.clone();
    for v in g.vertices() {
        let t = h.delete_vertex(v).unwrap();
        if !is_k4_minor_free(&t) {
            h = t;
        }
    }
    let edges: Vec<_> = h.edges().collect();
    for (u, v) in edges {
        let t = h.delete_edge(u, v).unwrap();
        if !is_k4_minor_free(&t) {
            h = t;
        }
    }
    Some(h)
}

/// Minimum transversal by iterative deepening branch-and-reduce: reduce to
/// the core, pick a K4 subdivision there and branch on deleting each of its
/// vertices; lift the answer back through the reduction.
pub fn exact_s(g: &Graph) -> TransversalResult {
    let vertices = match BitGraph::from_graph(g) {
        Some((bg, order)) => to_ids(dense::exact(&bg), &order),
        None => (0..)
            .find_map(|budget| search_generic(g, budget))
            .expect("the full vertex set is a transversal"),
    };
    TransversalResult::new(g, vertices, Method::BranchAndReduce).expect("search returns transversals")
}

/// `s(g)` without building a certificate.
pub fn transversal_number(g: &Graph) -> usize {
    match BitGraph::from_graph(g) {
        Some((bg, _)) => dense::exact(&bg).count_ones() as usize,
        None => exact_s(g).size,
    }
}

fn search_generic(g: &Graph, budget: usize) -> Option<VertexSet> {
    let trace = reduce_core(g);
    if trace.end.is_empty() {
        return Some(VertexSet::new());
    }
    if budget == 0 {
        return None;
    }
    let obstruction = find_k4_subdivision(&trace.end).expect("nonempty core has a K4 minor");
    for x in obstruction.vertices() {
        let rest = trace.end.delete_vertex(x).unwrap();
        if let Some(mut s) = search_generic(&rest, budget - 1) {
            s.insert(x);
            return Some(lift_transversal(&trace, &s).expect("set lives in the core"));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub s: usize,
    /// `(u, v, critical)` for every edge `u < v`.
    pub edges: Vec<(VertexId, VertexId, bool)>,
    pub graph_is_critical: bool,
}

/// An edge is critical when deleting it lowers `s`; the graph is critical
/// when every edge is.
pub fn criticality(g: &Graph) -> CriticalityReport {
    let s = transversal_number(g);
    let edges: Vec<_> = g
        .edges()
        .map(|(u, v)| {
            let h = g.delete_edge(u, v).unwrap();
            (u, v, transversal_number(&h) < s)
        })
        .collect();
    let graph_is_critical = edges.iter().all(|e| e.2);
    CriticalityReport {
        s,
        edges,
        graph_is_critical,
    }
}

/// Same verdict as `criticality(g).graph_is_critical`, stopping at the first
/// non-critical edge.
pub fn is_critical(g: &Graph) -> bool {
    let s = transversal_number(g);
    if s == 0 {
        return g.edge_count() == 0;
    }
    match BitGraph::from_graph(g) {
        Some((bg, _)) => bits(bg.alive()).all(|u| {
            bits(bg.neighbors(u)).filter(|&w| w > u).all(|w| {
                let mut h = bg;
                h.delete_edge(u, w);
                (dense::exact(&h).count_ones() as usize) < s
            })
        }),
        None => criticality(g).graph_is_critical,
    }
}

/// For a critical edge `uv`, a set `S` avoiding `u` and `v` such that both
/// `S + u` and `S + v` are minimum transversals. Taken as a minimum
/// transversal of `g - uv`; `None` would contradict the include/exclude lemma.
pub fn lemma31_witness(g: &Graph, u: VertexId, v: VertexId) -> Result<Option<VertexSet>> {
    let h = g.delete_edge(u, v)?;
    let s = transversal_number(g);
    let sub = exact_s(&h);
    if sub.size >= s {
        return Err(Error::domain(format!("edge {u}-{v} is not critical")));
    }
    let witness = sub.vertices;
    let works = |x: VertexId| {
        let mut t = witness.clone();
        t.insert(x);
        t.len() == s && is_k4_minor_free(&g.delete_vertices(&t).unwrap())
    };
    if witness.contains(&u) || witness.contains(&v) || !works(u) || !works(v) {
        return Ok(None);
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subdivided_k4() -> Graph {
        Graph::from_edges(5, &[(0, 4), (1, 4), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn brute_force_on_cliques() {
        assert_eq!(brute_force_s(&Graph::complete(4)).unwrap().size, 1);
        assert_eq!(brute_force_s(&Graph::complete(5)).unwrap().size, 2);
        assert_eq!(brute_force_s(&Graph::complete(6)).unwrap().size, 3);
        let r = brute_force_s(&Graph::complete(5)).unwrap();
        assert_eq!(r.method, Method::BruteForce);
        assert!(r.verify(&Graph::complete(5)));
    }

    #[test]
    fn brute_force_refuses_large_graphs() {
        let g = Graph::cycle(17);
        assert_eq!(
            brute_force_s(&g).unwrap_err(),
            Error::CapExceeded { n: 17, cap: 16 }
        );
        assert_eq!(brute_force_s_capped(&g, 20).unwrap().size, 0);
    }

    #[test]
    fn subdivision_examples() {
        assert!(find_k4_subdivision(&Graph::cycle(6)).is_none());
        let k4 = find_k4_subdivision(&Graph::complete(4)).unwrap();
        assert_eq!(k4.vertices().len(), 4);
        assert!(k4.is_valid_in(&Graph::complete(4)));
        let g = subdivided_k4();
        let sub = find_k4_subdivision(&g).unwrap();
        assert_eq!(sub.vertices().len(), 5);
        assert!(sub.is_valid_in(&g));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_s(&Graph::cycle(8)).size, 0);
        let k7 = Graph::complete(7);
        let r = exact_s(&k7);
        assert_eq!(r.size, 4);
        assert!(r.verify(&k7));
    }

    #[test]
    fn generic_search_matches_dense() {
        for g in [Graph::complete(5), Graph::complete(6), subdivided_k4(), Graph::cycle(5)] {
            let generic = (0..).find_map(|b| search_generic(&g, b)).unwrap();
            assert_eq!(generic.len(), transversal_number(&g));
            assert!(is_k4_minor_free(&g.delete_vertices(&generic).unwrap()));
            let skeleton = minimal_k4_generic(&g);
            assert_eq!(skeleton.is_some(), !is_k4_minor_free(&g));
            if let Some(h) = skeleton {
                assert!(K4Subdivision::from_skeleton(&h).is_valid_in(&g));
            }
        }
    }

    #[test]
    fn criticality_examples() {
        let k5 = criticality(&Graph::complete(5));
        assert_eq!(k5.s, 2);
        assert!(k5.graph_is_critical && k5.edges.len() == 10);
        let c5 = criticality(&Graph::cycle(5));
        assert!(c5.edges.iter().all(|e| !e.2));
        assert!(!c5.graph_is_critical);
        assert!(criticality(&Graph::complete(6)).graph_is_critical);
        assert!(is_critical(&Graph::complete(6)));
        assert!(!is_critical(&Graph::cycle(5)));
    }

    #[test]
    fn witness_examples() {
        let k5 = Graph::complete(5);
        let s = lemma31_witness(&k5, VertexId(0), VertexId(1)).unwrap().unwrap();
        assert_eq!(s.len(), 1);
        assert!(!s.contains(&VertexId(0)) && !s.contains(&VertexId(1)));

        let k4 = Graph::complete(4);
        assert_eq!(lemma31_witness(&k4, VertexId(2), VertexId(3)).unwrap(), Some(VertexSet::new()));

        let k6 = Graph::complete(6);
        assert_eq!(lemma31_witness(&k6, VertexId(0), VertexId(5)).unwrap().unwrap().len(), 2);

        assert!(lemma31_witness(&Graph::cycle(5), VertexId(0), VertexId(1)).is_err());
        assert!(lemma31_witness(&Graph::cycle(5), VertexId(0), VertexId(2)).is_err());
    }

    #[test]
    fn large_graph_uses_generic_path() {
        // 70 vertices: a long cycle plus one K5 hanging off it.
        let mut g = Graph::cycle(65);
        let k: Vec<VertexId> = (0..5).map(|_| g.add_vertex()).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                g.add_edge(k[i], k[j]).unwrap();
            }
        }
        g.add_edge(k[0], VertexId(0)).unwrap();
        let r = exact_s(&g);
        assert_eq!(r.size, 2);
        assert!(r.verify(&g));
        assert!(find_k4_subdivision(&g).unwrap().is_valid_in(&g));
    }
}
