//! Degree-at-most-2 reductions, the reduced core `r(G)`, transversal lifting
//! and delete-reduction-depth witnesses.
//!
//! The three reductions preserve the minimum transversal size:
//!
//! * delete a vertex of degree at most 1,
//! * delete a degree-2 vertex whose neighbors are adjacent,
//! * contract an edge at a degree-2 vertex whose neighbors are not adjacent.
//!
//! A graph has no K4 minor exactly when these reductions empty it.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::dense::BitGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    DeleteLowDegree,
    DeleteTriangleDeg2,
    ContractDeg2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionStep {
    DeleteLowDegree(VertexId),
    DeleteTriangleDeg2(VertexId),
    /// The degree-2 vertex `removed` and its neighbor `kept` become `fresh`.
    ContractDeg2 {
        kept: VertexId,
        removed: VertexId,
        fresh: VertexId,
    },
}

impl ReductionStep {
    pub fn kind(&self) -> ReductionKind {
        match self {
            ReductionStep::DeleteLowDegree(_) => ReductionKind::DeleteLowDegree,
            ReductionStep::DeleteTriangleDeg2(_) => ReductionKind::DeleteTriangleDeg2,
            ReductionStep::ContractDeg2 { .. } => ReductionKind::ContractDeg2,
        }
    }

    /// The low-degree vertex this step eliminates.
    pub fn removed(&self) -> VertexId {
        match *self {
            ReductionStep::DeleteLowDegree(v) | ReductionStep::DeleteTriangleDeg2(v) => v,
            ReductionStep::ContractDeg2 { removed, .. } => removed,
        }
    }

    /// Applies the step to `g` after checking its precondition.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let v = self.removed();
        let d = g.degree(v)?;
        let ns = g.neighbors(v)?;
        match *self {
            ReductionStep::DeleteLowDegree(_) if d <= 1 => g.delete_vertex(v),
            ReductionStep::DeleteTriangleDeg2(_) if d == 2 && neighbors_adjacent(g, ns) => {
                g.delete_vertex(v)
            }
            ReductionStep::ContractDeg2 { kept, fresh, .. }
                if d == 2 && !neighbors_adjacent(g, ns) && ns.contains(&kept) =>
            {
                if VertexId(g.next_id()) != fresh {
                    return Err(Error::domain(format!(
                        "contraction would mint {} rather than {fresh}",
                        g.next_id()
                    )));
                }
                Ok(g.contract_edge(kept, v)?.0)
            }
            _ => Err(Error::domain(format!("step {self} is not applicable"))),
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::DeleteLowDegree(v) => write!(f, "D {v}"),
            ReductionStep::DeleteTriangleDeg2(v) => write!(f, "T {v}"),
            ReductionStep::ContractDeg2 {
                kept,
                removed,
                fresh,
            } => write!(f, "C {kept} {removed} {fresh}"),
        }
    }
}

fn neighbors_adjacent(g: &Graph, ns: &VertexSet) -> bool {
    let mut it = ns.iter();
    match (it.next(), it.next()) {
        (Some(&a), Some(&b)) => g.has_edge(a, b),
        _ => false,
    }
}

/// The step the canonical order would take at `v`, if `v` is eligible.
/// Contractions merge into the smaller neighbor.
fn step_at(g: &Graph, v: VertexId) -> Option<ReductionStep> {
    let ns = g.neighbors(v).ok()?;
    match ns.len() {
        0 | 1 => Some(ReductionStep::DeleteLowDegree(v)),
        2 if neighbors_adjacent(g, ns) => Some(ReductionStep::DeleteTriangleDeg2(v)),
        2 => Some(ReductionStep::ContractDeg2 {
            kept: *ns.first().unwrap(),
            removed: v,
            fresh: VertexId(g.next_id()),
        }),
        _ => None,
    }
}

/// Every reduction applicable to `g`, including both contraction directions.
pub fn applicable_steps(g: &Graph) -> Vec<ReductionStep> {
    let mut out = Vec::new();
    for v in g.vertices() {
        match step_at(g, v) {
            Some(ReductionStep::ContractDeg2 { removed, fresh, .. }) => {
                for &kept in g.neighbors(v).unwrap() {
                    out.push(ReductionStep::ContractDeg2 {
                        kept,
                        removed,
                        fresh,
                    });
                }
            }
            Some(step) => out.push(step),
            None => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: Graph,
    pub steps: Vec<ReductionStep>,
    pub end: Graph,
}

impl ReductionTrace {
    /// Re-applies every step to `start`.
    pub fn replay(&self) -> Result<Graph> {
        self.steps.iter().try_fold(self.start.clone(), |g, s| s.apply(&g))
    }

    /// One step per line: `D v`, `T v` or `C u v w`.
    pub fn to_log(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    /// Rebuilds a trace from `start` and a step log, checking every step.
    pub fn from_log(start: &Graph, log: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, line) in log.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
            let fields: Vec<&str> = line.split(' ').collect();
            let id = |s: &str| {
                s.parse::<u32>()
                    .map(VertexId)
                    .map_err(|_| Error::parse(i + 1, format!("bad vertex {s:?}")))
            };
            let step = match fields.as_slice() {
                ["D", v] => ReductionStep::DeleteLowDegree(id(v)?),
                ["T", v] => ReductionStep::DeleteTriangleDeg2(id(v)?),
                ["C", u, v, w] => ReductionStep::ContractDeg2 {
                    kept: id(u)?,
                    removed: id(v)?,
                    fresh: id(w)?,
                },
                _ => return Err(Error::parse(i + 1, format!("unrecognised step {line:?}"))),
            };
            steps.push(step);
        }
        let mut trace = ReductionTrace {
            start: start.clone(),
            steps,
            end: Graph::new(),
        };
        trace.end = trace.replay()?;
        Ok(trace)
    }

    /// Where `v` of the start graph ends up: `None` if it was deleted.
    pub fn forward(&self, v: VertexId) -> Option<VertexId> {
        let mut cur = v;
        for step in &self.steps {
            match *step {
                ReductionStep::DeleteLowDegree(x) | ReductionStep::DeleteTriangleDeg2(x) => {
                    if x == cur {
                        return None;
                    }
                }
                ReductionStep::ContractDeg2 {
                    kept,
                    removed,
                    fresh,
                } => {
                    if cur == kept || cur == removed {
                        cur = fresh;
                    }
                }
            }
        }
        Some(cur)
    }

    /// For every vertex of `end`, the start vertex it descends from by
    /// following the kept side of each contraction.
    pub fn representatives(&self) -> BTreeMap<VertexId, VertexId> {
        let mut rep: BTreeMap<VertexId, VertexId> =
            self.start.vertices().map(|v| (v, v)).collect();
        for step in &self.steps {
            match *step {
                ReductionStep::DeleteLowDegree(x) | ReductionStep::DeleteTriangleDeg2(x) => {
                    rep.remove(&x);
                }
                ReductionStep::ContractDeg2 {
                    kept,
                    removed,
                    fresh,
                } => {
                    let r = rep.remove(&kept).expect("kept vertex alive");
                    rep.remove(&removed);
                    rep.insert(fresh, r);
                }
            }
        }
        rep
    }

    /// The end graph with each merged vertex renamed to its representative.
    pub fn canonical_end(&self) -> Graph {
        self.end
            .relabeled(&self.representatives())
            .expect("representatives are distinct start vertices")
    }
}

fn run_reduction(g: &Graph, mut choose: impl FnMut(&Graph, &VertexSet) -> ReductionStep) -> ReductionTrace {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut eligible: VertexSet = cur
        .vertices()
        .filter(|&v| cur.degree(v).unwrap() <= 2)
        .collect();
    while !eligible.is_empty() {
        let step = choose(&cur, &eligible);
        let v = step.removed();
        eligible.remove(&v);
        let touched: Vec<VertexId> = match step {
            ReductionStep::DeleteLowDegree(_) | ReductionStep::DeleteTriangleDeg2(_) => {
                cur.remove_vertex_mut(v).into_iter().collect()
            }
            ReductionStep::ContractDeg2 { kept, .. } => {
                let other = *cur.neighbors(v).unwrap().iter().find(|&&x| x != kept).unwrap();
                eligible.remove(&kept);
                let w = cur.contract_mut(kept, v);
                vec![w, other]
            }
        };
        for x in touched {
            if cur.degree(x).unwrap() <= 2 {
                eligible.insert(x);
            }
        }
        steps.push(step);
    }
    ReductionTrace {
        start: g.clone(),
        steps,
        end: cur,
    }
}

/// Reduces `g` to its core, always acting on the smallest eligible vertex.
pub fn reduce_core(g: &Graph) -> ReductionTrace {
    run_reduction(g, |cur, eligible| {
        step_at(cur, *eligible.first().unwrap()).expect("eligible vertex")
    })
}

/// Reduces `g` choosing the eligible vertex and the contraction side at random.
pub fn reduce_core_random<R: Rng>(g: &Graph, rng: &mut R) -> ReductionTrace {
    run_reduction(g, |cur, eligible| {
        let v = *eligible.iter().nth(rng.gen_range(0..eligible.len())).unwrap();
        match step_at(cur, v).expect("eligible vertex") {
            ReductionStep::ContractDeg2 { removed, fresh, .. } => {
                let ns: Vec<VertexId> = cur.neighbors(v).unwrap().iter().copied().collect();
                ReductionStep::ContractDeg2 {
                    kept: ns[rng.gen_range(0..ns.len())],
                    removed,
                    fresh,
                }
            }
            step => step,
        }
    })
}

pub fn is_k4_minor_free(g: &Graph) -> bool {
    match BitGraph::from_graph(g) {
        Some((bg, _)) => bg.is_minor_free(),
        None => reduce_core(g).end.is_empty(),
    }
}

/// Maps a vertex set of `trace.end` back to `trace.start`, preserving size
/// and transversality: a merged vertex in the set is replaced by the
/// neighbor that absorbed the degree-2 vertex, which then has degree at
/// most 1 once the set is removed.
pub fn lift_transversal(trace: &ReductionTrace, s_end: &VertexSet) -> Result<VertexSet> {
    trace.end.check_set(s_end)?;
    let mut s = s_end.clone();
    for step in trace.steps.iter().rev() {
        if let ReductionStep::ContractDeg2 { kept, fresh, .. } = *step {
            if s.remove(&fresh) {
                s.insert(kept);
            }
        }
    }
    Ok(s)
}

/// Rounds of vertex deletions, interleaved with reduction to the core, that
/// empty the graph. Each round takes at most one vertex per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrdWitness {
    pub rounds: Vec<VertexSet>,
}

impl DrdWitness {
    pub fn depth(&self) -> usize {
        self.rounds.len()
    }

    /// Replays the rounds on `g` and checks every constraint.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut cur = reduce_core(g).end;
        for round in &self.rounds {
            if round.iter().any(|&v| !cur.contains(v)) {
                return false;
            }
            let comps = cur.components();
            if comps.iter().any(|c| c.intersection(round).count() > 1) {
                return false;
            }
            cur = reduce_core(&cur.delete_vertices(round).unwrap()).end;
        }
        cur.is_empty()
    }
}

fn drd_rounds(g: &Graph, x: &[VertexId], one_per_round: bool) -> Result<DrdWitness> {
    g.check_set(x)?;
    if !is_k4_minor_free(&g.delete_vertices(x)?) {
        return Err(Error::domain("vertex list is not a transversal"));
    }
    let mut trace = reduce_core(g);
    let mut pending: Vec<VertexId> = Vec::new();
    for &v in x {
        if let Some(w) = trace.forward(v) {
            if !pending.contains(&w) {
                pending.push(w);
            }
        }
    }
    let mut rounds = Vec::new();
    while !trace.end.is_empty() {
        let cur = &trace.end;
        let comps = cur.components();
        let mut used = vec![false; comps.len()];
        let mut round = VertexSet::new();
        let mut rest = Vec::new();
        for &v in &pending {
            let c = comps.iter().position(|c| c.contains(&v)).expect("pending vertex alive");
            if used[c] || (one_per_round && !round.is_empty()) {
                rest.push(v);
            } else {
                used[c] = true;
                round.insert(v);
            }
        }
        assert!(!round.is_empty(), "a nonempty core must meet the transversal");
        trace = reduce_core(&cur.delete_vertices(&round)?);
        pending = Vec::new();
        for v in rest {
            if let Some(w) = trace.forward(v) {
                if !pending.contains(&w) {
                    pending.push(w);
                }
            }
        }
        rounds.push(round);
    }
    Ok(DrdWitness { rounds })
}

/// Packs the transversal `x` greedily into rounds, as many vertices per
/// round as component-disjointness allows, in list order.
pub fn drd_witness_from_transversal(g: &Graph, x: &[VertexId]) -> Result<DrdWitness> {
    drd_rounds(g, x, false)
}

/// Like [`drd_witness_from_transversal`] but with a single vertex per round.
pub fn sequential_witness_from_transversal(g: &Graph, x: &[VertexId]) -> Result<DrdWitness> {
    drd_rounds(g, x, true)
}
