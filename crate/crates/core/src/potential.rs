//! Degree potentials, the greedy `m/5` transversal and exact checks of the
//! potential inequalities.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::oracle::{transversal_number, Method, TransversalResult};
use crate::reduction::{lift_transversal, reduce_core};
use crate::structure::{is_k_connected, is_reduced};
use crate::Rational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Per-degree vertex weight. Both variants vanish below degree 3 and equal
/// `d/2` from degree 4 on; they differ only at degree 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Potential {
    /// `5/4` at degree 3; drives the greedy `m/5` bound.
    Fifth,
    /// `4/3` at degree 3; used for the connected `3(m+1)/16` bound.
    Main,
}

impl Potential {
    pub fn value(self, degree: usize) -> Rational {
        match degree {
            0..=2 => Rational::zero(),
            3 => match self {
                Potential::Fifth => r(5, 4),
                Potential::Main => r(4, 3),
            },
            d => r(d as i64, 2),
        }
    }
}

pub fn phi_graph(g: &Graph, p: Potential) -> Rational {
    g.vertices()
        .map(|v| p.value(g.degree(v).unwrap()))
        .fold(Rational::zero(), |a, b| a + b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRound {
    pub removed: VertexId,
    pub degree: usize,
    /// `phi_Fifth(core) - phi_Fifth(core - removed)`.
    pub phi_drop: Rational,
}

#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub result: TransversalResult,
    pub rounds: Vec<GreedyRound>,
}

/// Alternates full reduction with deleting a maximum-degree vertex of the
/// core (smallest id on ties) until nothing is left.
pub fn greedy_fifth_run(g: &Graph) -> GreedyRun {
    let mut traces = Vec::new();
    let mut rounds = Vec::new();
    let mut cur = g.clone();
    loop {
        let trace = reduce_core(&cur);
        let core = trace.end.clone();
        traces.push(trace);
        if core.is_empty() {
            break;
        }
        let top = core.max_degree().unwrap();
        let v = core
            .vertices()
            .find(|&v| core.degree(v).unwrap() == top)
            .unwrap();
        let next = core.delete_vertex(v).unwrap();
        rounds.push(GreedyRound {
            removed: v,
            degree: top,
            phi_drop: phi_graph(&core, Potential::Fifth) - phi_graph(&next, Potential::Fifth),
        });
        cur = next;
    }
    let mut s = VertexSet::new();
    for (i, trace) in traces.iter().enumerate().rev() {
        if let Some(round) = rounds.get(i) {
            s.insert(round.removed);
        }
        s = lift_transversal(trace, &s).expect("set lives in the trace end");
    }
    let result = TransversalResult::new(g, s, Method::Greedy).expect("greedy output is a transversal");
    GreedyRun { result, rounds }
}

pub fn greedy_fifth_transversal(g: &Graph) -> TransversalResult {
    greedy_fifth_run(g).result
}

/// The four potential inequalities for `Potential::Main`:
///
/// * (A) `phi(a) >= phi(a-1) + 1/2`
/// * (B) `phi(a) >= phi(a-2) + 1`
/// * (C) `phi(b+c-1) >= phi(b) + phi(c) - 1/2`
/// * (D) `phi(b+c) >= phi(b) + phi(c) + 1` when `b, c >= 2` and `b + c <= 5`
pub fn lemma42_check(a: usize, b: usize, c: usize) -> Result<bool> {
    if a < 3 || b < 1 || c < 1 {
        return Err(Error::domain(format!(
            "need a >= 3 and b, c >= 1, got a={a}, b={b}, c={c}"
        )));
    }
    let phi = |d| Potential::Main.value(d);
    let half = r(1, 2);
    let one = r(1, 1);
    let ineq_a = phi(a) >= phi(a - 1) + half;
    let ineq_b = phi(a) >= phi(a - 2) + one;
    let ineq_c = phi(b + c - 1) >= phi(b) + phi(c) - half;
    let ineq_d = !(b >= 2 && c >= 2 && b + c <= 5) || phi(b + c) >= phi(b) + phi(c) + one;
    Ok(ineq_a && ineq_b && ineq_c && ineq_d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem41Report {
    pub phi: Rational,
    pub s: usize,
    /// `phi >= 16/3 s - 1`
    pub part_a_ok: bool,
    /// `g` is reduced (2-connected, critical, degrees in {3,4,5}) but not 3-connected.
    pub part_b_applicable: bool,
    /// `phi >= 16/3 s` whenever part (b) applies.
    pub part_b_ok: bool,
}

impl Theorem41Report {
    pub fn holds(&self) -> bool {
        self.part_a_ok && self.part_b_ok
    }
}

/// Checks `phi_Main(g) >= (16/3) s(g) - 1` exactly, and the sharper
/// `phi_Main(g) >= (16/3) s(g)` for reduced graphs that are not 3-connected.
pub fn theorem41_check(g: &Graph) -> Result<Theorem41Report> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let phi = phi_graph(g, Potential::Main);
    let s = transversal_number(g);
    let target = r(16, 3) * r(s as i64, 1);
    let part_a_ok = phi >= target - r(1, 1);
    let part_b_applicable = is_reduced(g) && !is_k_connected(g, 3);
    let part_b_ok = !part_b_applicable || phi >= target;
    Ok(Theorem41Report {
        phi,
        s,
        part_a_ok,
        part_b_applicable,
        part_b_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_match_the_definitions() {
        for p in [Potential::Fifth, Potential::Main] {
            for d in 0..=2 {
                assert_eq!(p.value(d), Rational::zero());
            }
            assert_eq!(p.value(4), r(2, 1));
            assert_eq!(p.value(7), r(7, 2));
        }
        assert_eq!(Potential::Fifth.value(3), r(5, 4));
        assert_eq!(Potential::Main.value(3), r(4, 3));
    }

    #[test]
    fn graph_potentials() {
        assert_eq!(phi_graph(&Graph::complete(6), Potential::Main), r(15, 1));
        assert_eq!(phi_graph(&Graph::cycle(5), Potential::Main), Rational::zero());
        assert_eq!(phi_graph(&Graph::cycle(5), Potential::Fifth), Rational::zero());
        // K4 is 3-regular, so the variants disagree there.
        assert_eq!(phi_graph(&Graph::complete(4), Potential::Main), r(16, 3));
        assert_eq!(phi_graph(&Graph::complete(4), Potential::Fifth), r(5, 1));
        assert_eq!(phi_graph(&Graph::complete(5), Potential::Fifth), r(10, 1));
    }

    #[test]
    fn greedy_examples() {
        let k5 = Graph::complete(5);
        let run = greedy_fifth_run(&k5);
        assert_eq!(run.result.size, 2);
        assert!(run.result.verify(&k5));
        assert!(run.rounds.iter().all(|r| r.phi_drop >= r_five()));
        assert_eq!(greedy_fifth_transversal(&Graph::cycle(9)).size, 0);
    }

    fn r_five() -> Rational {
        r(5, 1)
    }

    #[test]
    fn inequality_examples() {
        assert!(lemma42_check(3, 1, 1).unwrap());
        assert!(lemma42_check(4, 2, 3).unwrap());
        assert!(lemma42_check(10, 5, 5).unwrap());
        assert!(lemma42_check(2, 1, 1).is_err());
        assert!(lemma42_check(3, 0, 1).is_err());
    }

    #[test]
    fn potential_bound_examples() {
        let k6 = theorem41_check(&Graph::complete(6)).unwrap();
        assert_eq!((k6.phi, k6.s), (r(15, 1), 3));
        assert!(k6.part_a_ok);
        assert_eq!(k6.phi, r(16, 1) - r(1, 1));

        let c5 = theorem41_check(&Graph::cycle(5)).unwrap();
        assert_eq!((c5.phi, c5.s, c5.part_a_ok), (Rational::zero(), 0, true));

        let k4 = theorem41_check(&Graph::complete(4)).unwrap();
        assert_eq!((k4.phi, k4.s), (r(16, 3), 1));
        assert!(k4.holds());

        let mut two = Graph::complete(3);
        two.add_vertex();
        assert_eq!(theorem41_check(&two), Err(Error::Disconnected));
    }
}
