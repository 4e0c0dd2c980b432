use super::{Graph, VertexId};

/// Brute-force isomorphism test by backtracking with degree pruning.
/// Meant for the small graphs (cores, neighborhood graphs) this crate compares.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return false;
    }
    let va: Vec<VertexId> = a.vertices().collect();
    let vb: Vec<VertexId> = b.vertices().collect();
    let mut image: Vec<Option<usize>> = vec![None; va.len()];
    let mut used = vec![false; vb.len()];
    extend(a, b, &va, &vb, 0, &mut image, &mut used)
}

fn extend(
    a: &Graph,
    b: &Graph,
    va: &[VertexId],
    vb: &[VertexId],
    i: usize,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if i == va.len() {
        return true;
    }
    let x = va[i];
    let dx = a.degree(x).unwrap();
    for j in 0..vb.len() {
        if used[j] || b.degree(vb[j]).unwrap() != dx {
            continue;
        }
        let consistent = (0..i).all(|k| {
            let mapped = vb[image[k].unwrap()];
            a.has_edge(x, va[k]) == b.has_edge(vb[j], mapped)
        });
        if !consistent {
            continue;
        }
        image[i] = Some(j);
        used[j] = true;
        if extend(a, b, va, vb, i + 1, image, used) {
            return true;
        }
        used[j] = false;
        image[i] = None;
    }
    false
}
