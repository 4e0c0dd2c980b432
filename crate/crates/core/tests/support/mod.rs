//! Reference implementations that share no code with the library's solvers.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use k4mf::csp::CspInstance;
use k4mf::{Graph, Rational, VertexId};

/// Adjacency matrix over the graph's vertices in increasing id order.
pub fn matrix(g: &Graph) -> (Vec<VertexId>, Vec<Vec<bool>>) {
    let ids: Vec<VertexId> = g.vertices().collect();
    let idx: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut a = vec![vec![false; ids.len()]; ids.len()];
    for (u, v) in g.edges() {
        a[idx[&u]][idx[&v]] = true;
        a[idx[&v]][idx[&u]] = true;
    }
    (ids, a)
}

fn connected_within(a: &[Vec<bool>], members: &[usize]) -> bool {
    if members.is_empty() {
        return false;
    }
    let mut seen = vec![members[0]];
    let mut i = 0;
    while i < seen.len() {
        let x = seen[i];
        for &y in members {
            if a[x][y] && !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen.len() == members.len()
}

/// Searches all ways to place each vertex in one of four branch sets or in
/// none, for connected, pairwise-adjacent branch sets.
pub fn has_k4_minor_bruteforce(g: &Graph) -> bool {
    let (_, a) = matrix(g);
    let n = a.len();
    if n < 4 {
        return false;
    }
    let mut label = vec![4usize; n];
    search_labels(&a, &mut label, 0, 0)
}

fn search_labels(a: &[Vec<bool>], label: &mut Vec<usize>, i: usize, used: usize) -> bool {
    let n = a.len();
    if i == n {
        if used < 4 {
            return false;
        }
        let sets: Vec<Vec<usize>> = (0..4)
            .map(|b| (0..n).filter(|&v| label[v] == b).collect())
            .collect();
        if !sets.iter().all(|s| connected_within(a, s)) {
            return false;
        }
        return (0..4).all(|p| {
            (p + 1..4).all(|q| sets[p].iter().any(|&x| sets[q].iter().any(|&y| a[x][y])))
        });
    }
    // branch sets are opened in order, which removes relabelings
    for b in 0..=used.min(3) {
        label[i] = b;
        if search_labels(a, label, i + 1, used.max(b + 1)) {
            return true;
        }
    }
    label[i] = 4;
    search_labels(a, label, i + 1, used)
}

/// Minimum transversal size by subset enumeration over the reference minor test.
pub fn reference_s(g: &Graph) -> usize {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    (0..=n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
                let del: Vec<VertexId> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| ids[i]).collect();
                !has_k4_minor_bruteforce(&g.delete_vertices(&del).unwrap())
            })
        })
        .unwrap()
}

/// Maximum number of internally disjoint s-t paths, by unit-capacity
/// max-flow on the split-vertex network.
fn local_connectivity(a: &[Vec<bool>], s: usize, t: usize) -> usize {
    let n = a.len();
    // node 2v is v_in, 2v+1 is v_out
    let size = 2 * n;
    let mut cap = vec![vec![0i32; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { n as i32 } else { 1 };
        for w in 0..n {
            if a[v][w] {
                cap[2 * v + 1][2 * w] = n as i32;
            }
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; size];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in 0..size {
                if cap[x][y] > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[dst] == usize::MAX {
            return flow;
        }
        let mut y = dst;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Vertex connectivity of a connected graph; `n - 1` for complete graphs.
pub fn flow_connectivity(g: &Graph) -> usize {
    let (_, a) = matrix(g);
    let n = a.len();
    let mut best = n.saturating_sub(1);
    for s in 0..n {
        for t in s + 1..n {
            if !a[s][t] {
                best = best.min(local_connectivity(&a, s, t));
            }
        }
    }
    best
}

/// Isomorphism by trying every bijection.
pub fn permutation_isomorphic(g: &Graph, h: &Graph) -> bool {
    let (_, a) = matrix(g);
    let (_, b) = matrix(h);
    if a.len() != b.len() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]])) {
            return true;
        }
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Best objective over all `r^n` assignments, scored from the public tables.
pub fn csp_optimum(inst: &CspInstance) -> Rational {
    let vars: Vec<VertexId> = inst.variables().iter().copied().collect();
    let pairs: Vec<(VertexId, VertexId)> = inst.binary_pairs().collect();
    let r = inst.r();
    let total = r.pow(vars.len() as u32);
    let mut best: Option<Rational> = None;
    for code in 0..total {
        let mut c = code;
        let mut val = BTreeMap::new();
        for &v in vars.iter().rev() {
            val.insert(v, c % r);
            c /= r;
        }
        let mut obj = inst.constant();
        for &v in &vars {
            obj += inst.unary(v).unwrap()[val[&v]];
        }
        for &(u, v) in &pairs {
            obj += inst.binary_score(u, val[&u], v, val[&v]);
        }
        best = Some(best.map_or(obj, |b| b.max(obj)));
    }
    best.unwrap()
}

/// Graph on `0..n` whose edges are chosen by `bits` over the lexicographic pair list.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut i = 0;
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if bits[i] {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
            i += 1;
        }
    }
    g
}
