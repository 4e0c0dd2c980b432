//! Deterministic graph and CSP instance generators.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::CspInstance;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::Rational;

fn v(i: usize) -> VertexId {
    VertexId(i as u32)
}

/// `k` disjoint copies of K5 on vertices `5i..5i+5`.
pub fn gen_k5_union(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let mut g = Graph::with_vertices(5 * k);
    for c in 0..k {
        for a in 0..5 {
            for b in a + 1..5 {
                g.add_edge(v(5 * c + a), v(5 * c + b))?;
            }
        }
    }
    Ok(g)
}

/// `k` copies of K6 on vertices `6i..6i+6`, with vertex 0 of each copy joined
/// to vertex 0 of the next.
pub fn gen_k6_chain(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let mut g = Graph::with_vertices(6 * k);
    for c in 0..k {
        for a in 0..6 {
            for b in a + 1..6 {
                g.add_edge(v(6 * c + a), v(6 * c + b))?;
            }
        }
        if c + 1 < k {
            g.add_edge(v(6 * c), v(6 * (c + 1)))?;
        }
    }
    Ok(g)
}

/// Hub `0` joined to every vertex of the cycle `1..=rim`.
pub fn wheel(rim: usize) -> Result<Graph> {
    if rim < 3 {
        return Err(Error::domain("a wheel needs a rim of at least 3 vertices"));
    }
    let mut g = Graph::with_vertices(rim + 1);
    for i in 1..=rim {
        g.add_edge(v(0), v(i))?;
        g.add_edge(v(i), v(i % rim + 1))?;
    }
    Ok(g)
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of pair `(a, b)`, `a < b`, in the lexicographic list of pairs of `0..n`.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Uniform random labeled tree on `0..n` from a Prüfer sequence.
fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Connected graph on `0..n` with `m` edges: a uniform spanning tree plus
/// `m - (n - 1)` further pairs drawn uniformly without replacement.
pub fn gen_random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n) {
        return Err(Error::domain(format!(
            "no connected graph on {n} vertices has {m} edges"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, &mut rng);
    let mut used = vec![false; max_edges(n)];
    for &(a, b) in &tree {
        used[pair_index(n, a, b)] = true;
    }
    let free: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .filter(|&(a, b)| !used[pair_index(n, a, b)])
        .collect();
    let extra = sample(&mut rng, free.len(), m + 1 - n);
    let mut g = Graph::with_vertices(n);
    for (a, b) in tree.into_iter().chain(extra.into_iter().map(|i| free[i])) {
        g.add_edge(v(a), v(b))?;
    }
    Ok(g)
}

/// Graph on `0..n` with `m` distinct edges drawn uniformly; may be disconnected.
pub fn gen_random(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m > max_edges(n) {
        return Err(Error::domain(format!("{n} vertices admit at most {} edges", max_edges(n))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = pairs(n);
    let mut g = Graph::with_vertices(n);
    for i in sample(&mut rng, all.len(), m) {
        let (a, b) = all[i];
        g.add_edge(v(a), v(b))?;
    }
    Ok(g)
}

/// Random CSP over `0..n` with domain `r`: each pair is constrained with
/// probability `density`, and every score is an integer in `-5..=5`.
pub fn gen_random_csp(n: usize, r: usize, density: f64, seed: u64) -> Result<CspInstance> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::domain("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = CspInstance::new(r, n)?;
    let score = |rng: &mut ChaCha8Rng| Rational::from_integer(rng.gen_range(-5..=5));
    for i in 0..n {
        let s = (0..r).map(|_| score(&mut rng)).collect();
        inst.set_unary(v(i), s)?;
    }
    for (a, b) in pairs(n) {
        if rng.gen_bool(density) {
            let t = (0..r * r).map(|_| score(&mut rng)).collect();
            inst.set_binary(v(a), v(b), t)?;
        }
    }
    inst.set_constant(score(&mut rng));
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use crate::reduction::is_k4_minor_free;

    #[test]
    fn extremal_family_sizes() {
        for k in 1..=3 {
            let u = gen_k5_union(k).unwrap();
            assert_eq!((u.vertex_count(), u.edge_count()), (5 * k, 10 * k));
            let c = gen_k6_chain(k).unwrap();
            assert_eq!((c.vertex_count(), c.edge_count()), (6 * k, 16 * k - 1));
            assert!(c.is_connected());
        }
        assert!(gen_k5_union(0).is_err());
        assert!(gen_k6_chain(0).is_err());
        assert_eq!(gen_k6_chain(1).unwrap(), Graph::complete(6));
    }

    #[test]
    fn random_connected_examples() {
        let tree = gen_random_connected(5, 4, 1).unwrap();
        assert!(tree.is_connected() && is_k4_minor_free(&tree));
        assert_eq!(gen_random_connected(6, 15, 9).unwrap(), Graph::complete(6));
        let a = gen_random_connected(9, 17, 42).unwrap();
        let b = gen_random_connected(9, 17, 42).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert_eq!(a.edge_count(), 17);
        assert!(gen_random_connected(5, 3, 0).is_err());
        assert!(gen_random_connected(5, 11, 0).is_err());
        assert!(gen_random_connected(0, 0, 0).is_err());
        assert_eq!(gen_random_connected(1, 0, 0).unwrap().vertex_count(), 1);
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..12 {
            let edges = random_tree(n, &mut rng);
            let g = Graph::from_edges(
                n,
                &edges.iter().map(|&(a, b)| (a as u32, b as u32)).collect::<Vec<_>>(),
            )
            .unwrap();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), n - 1);
        }
    }

    #[test]
    fn wheel_shapes() {
        assert!(is_isomorphic(&wheel(3).unwrap(), &Graph::complete(4)));
        let w = wheel(5).unwrap();
        assert_eq!((w.vertex_count(), w.edge_count()), (6, 10));
        assert!(wheel(2).is_err());
    }

    #[test]
    fn random_graph_edge_counts() {
        let g = gen_random(10, 12, 5).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 12));
        assert!(gen_random(4, 7, 0).is_err());
    }

    #[test]
    fn pair_indexing() {
        let n = 7;
        for (i, (a, b)) in pairs(n).into_iter().enumerate() {
            assert_eq!(pair_index(n, a, b), i);
        }
    }
}
