//! Structural predicates: small cutsets, shortest even cycles, neighborhood
//! graphs, stable sets, diamonds, sparse bipartitions and degree-5 classes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::oracle::is_critical;

/// Calls `f` on every `k`-subset of `items` in lexicographic order until it
/// returns `Some`.
fn first_combination<T: Copy, R>(
    items: &[T],
    k: usize,
    mut f: impl FnMut(&[T]) -> Option<R>,
) -> Option<R> {
    let n = items.len();
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut pick: Vec<T> = Vec::with_capacity(k);
    loop {
        pick.clear();
        pick.extend(idx.iter().map(|&i| items[i]));
        if let Some(r) = f(&pick) {
            return Some(r);
        }
        let pos = (0..k).rev().find(|&i| idx[i] < n - k + i)?;
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn disconnects(g: &Graph, cut: &VertexSet) -> bool {
    let Some(start) = g.vertices().find(|v| !cut.contains(v)) else {
        return false;
    };
    g.reach(start, cut).len() + cut.len() < g.vertex_count()
}

fn smallest_cutset(g: &Graph, k: usize) -> Option<VertexSet> {
    let verts: Vec<VertexId> = g.vertices().collect();
    (1..=k).find_map(|size| {
        first_combination(&verts, size, |pick| {
            let cut: VertexSet = pick.iter().copied().collect();
            disconnects(g, &cut).then_some(cut)
        })
    })
}

/// Smallest vertex cutset of size at most `k` (lexicographically least among
/// the smallest), for `k` in 1..=3.
pub fn vertex_connectivity_at_most(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    if !(1..=3).contains(&k) {
        return Err(Error::domain(format!("cutset size bound must be 1..=3, got {k}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(smallest_cutset(g, k))
}

/// More than `k` vertices, connected, and no cutset of fewer than `k` vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    g.vertex_count() > k && g.is_connected() && (k <= 1 || smallest_cutset(g, k - 1).is_none())
}

pub fn has_k4_subgraph(g: &Graph) -> bool {
    g.edges().any(|(a, b)| {
        let common: Vec<VertexId> = g
            .neighbors(a)
            .unwrap()
            .intersection(g.neighbors(b).unwrap())
            .copied()
            .collect();
        common
            .iter()
            .enumerate()
            .any(|(i, &x)| common[i + 1..].iter().any(|&y| g.has_edge(x, y)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenCycleReport {
    /// Cycle in traversal order, starting at its smallest vertex.
    pub cycle: Vec<VertexId>,
    pub chords: Vec<(VertexId, VertexId)>,
    pub almost_induced: bool,
}

impl EvenCycleReport {
    fn new(g: &Graph, cycle: Vec<VertexId>) -> Self {
        let len = cycle.len();
        let mut chords = Vec::new();
        let mut splits_odd = true;
        for i in 0..len {
            for j in i + 2..len {
                if i == 0 && j == len - 1 {
                    continue;
                }
                if g.has_edge(cycle[i], cycle[j]) {
                    let (a, b) = (cycle[i].min(cycle[j]), cycle[i].max(cycle[j]));
                    chords.push((a, b));
                    // the two sides have j-i+1 and len-(j-i)+1 vertices
                    splits_odd &= (j - i) % 2 == 0;
                }
            }
        }
        chords.sort();
        let almost_induced = chords.is_empty() || (chords.len() == 1 && splits_odd);
        EvenCycleReport {
            cycle,
            chords,
            almost_induced,
        }
    }

    /// Half of the cycle's vertices forming a stable set of `g`, when the
    /// cycle is almost induced: the positions of the parity class that avoids
    /// the chord's endpoints.
    pub fn stable_half(&self) -> Option<VertexSet> {
        if !self.almost_induced {
            return None;
        }
        let parity = match self.chords.first() {
            None => 0,
            Some(&(a, _)) => {
                let pos = self.cycle.iter().position(|&x| x == a).unwrap();
                1 - pos % 2
            }
        };
        Some(
            self.cycle
                .iter()
                .enumerate()
                .filter(|(i, _)| i % 2 == parity)
                .map(|(_, &v)| v)
                .collect(),
        )
    }
}

fn cycle_from(g: &Graph, path: &mut Vec<VertexId>, len: usize) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(last, start) && path[1] < last;
    }
    let next: Vec<VertexId> = g
        .neighbors(last)
        .unwrap()
        .range(start..)
        .copied()
        .filter(|&x| x != start && !path.contains(&x))
        .collect();
    for x in next {
        path.push(x);
        if cycle_from(g, path, len) {
            return true;
        }
        path.pop();
    }
    false
}

/// A shortest even cycle, lexicographically least as a vertex sequence
/// (starting at its minimum vertex, second vertex smaller than the last).
pub fn shortest_even_cycle(g: &Graph) -> Option<EvenCycleReport> {
    let n = g.vertex_count();
    for len in (4..=n).step_by(2) {
        for s in g.vertices() {
            let mut path = vec![s];
            if cycle_from(g, &mut path, len) {
                return Some(EvenCycleReport::new(g, path));
            }
        }
    }
    None
}

/// Subgraph induced by the neighbors of `v`, without `v` itself.
pub fn neighborhood_graph(g: &Graph, v: VertexId) -> Result<Graph> {
    let ns = g.neighbors(v)?.clone();
    g.induced_subgraph(&ns)
}

pub const STABLE_SET_CAP: usize = 10;

fn is_stable(g: &Graph, s: &[VertexId]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &a)| s[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
}

/// Maximum stable set by brute force, lexicographically least among the largest.
pub fn max_stable_set_small(g: &Graph) -> Result<VertexSet> {
    if g.vertex_count() > STABLE_SET_CAP {
        return Err(Error::CapExceeded {
            n: g.vertex_count(),
            cap: STABLE_SET_CAP,
        });
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    Ok((0..=verts.len())
        .rev()
        .find_map(|k| {
            first_combination(&verts, k, |pick| {
                is_stable(g, pick).then(|| pick.iter().copied().collect())
            })
        })
        .unwrap_or_default())
}

/// Induced copies of K4 minus an edge whose two non-adjacent vertices have
/// degree 5 in `g`.
pub fn find_diamonds(g: &Graph) -> Vec<VertexSet> {
    let mut found = BTreeSet::new();
    for (a, b) in g.edges() {
        let common: Vec<VertexId> = g
            .neighbors(a)
            .unwrap()
            .intersection(g.neighbors(b).unwrap())
            .copied()
            .filter(|&x| g.degree(x).unwrap() == 5)
            .collect();
        for (i, &x) in common.iter().enumerate() {
            for &y in &common[i + 1..] {
                if !g.has_edge(x, y) {
                    found.insert(VertexSet::from([a, b, x, y]));
                }
            }
        }
    }
    found.into_iter().collect()
}

fn edges_within(h: &Graph, s: &VertexSet) -> usize {
    s.iter()
        .map(|v| h.neighbors(*v).unwrap().intersection(s).count())
        .sum::<usize>()
        / 2
}

/// Partitions `(X, Y)` of a 5-vertex graph with `|X| = 3`, `|Y| = 2` and
/// exactly one edge inside each part, optionally forcing a vertex into `Y`.
pub fn sparse_bipartitions(
    h: &Graph,
    required_in_y: Option<VertexId>,
) -> Result<Vec<(VertexSet, VertexSet)>> {
    if h.vertex_count() != 5 {
        return Err(Error::domain(format!(
            "sparse bipartitions need exactly 5 vertices, got {}",
            h.vertex_count()
        )));
    }
    if let Some(w) = required_in_y {
        h.check_vertex(w)?;
    }
    let verts: Vec<VertexId> = h.vertices().collect();
    let mut out = Vec::new();
    first_combination(&verts, 2, |pair| {
        let y: VertexSet = pair.iter().copied().collect();
        let x: VertexSet = verts.iter().copied().filter(|v| !y.contains(v)).collect();
        let allowed = required_in_y.is_none_or(|w| y.contains(&w));
        if allowed && edges_within(h, &x) == 1 && edges_within(h, &y) == 1 {
            out.push((x, y));
        }
        None::<()>
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree5Kind {
    /// Degree 5, all neighbors of degree 5.
    Pure5,
    /// Degree 5, neighbors of degrees 5, 5, 5, 5, 4.
    FiveFour,
    NotDegree5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree5Class {
    pub vertex: VertexId,
    pub kind: Degree5Kind,
}

pub fn classify_degree5(g: &Graph, v: VertexId) -> Result<Degree5Class> {
    let ns = g.neighbors(v)?;
    let kind = if ns.len() != 5 {
        Degree5Kind::NotDegree5
    } else {
        let degs: Vec<usize> = ns.iter().map(|&x| g.degree(x).unwrap()).collect();
        let fives = degs.iter().filter(|&&d| d == 5).count();
        let fours = degs.iter().filter(|&&d| d == 4).count();
        match (fives, fours) {
            (5, 0) => Degree5Kind::Pure5,
            (4, 1) => Degree5Kind::FiveFour,
            _ => Degree5Kind::NotDegree5,
        }
    };
    Ok(Degree5Class { vertex: v, kind })
}

/// 2-connected, every degree in {3, 4, 5}, and every edge critical.
pub fn is_reduced(g: &Graph) -> bool {
    !g.is_empty()
        && g.vertices()
            .all(|v| (3..=5).contains(&g.degree(v).unwrap()))
        && is_k_connected(g, 2)
        && is_critical(g)
}
