//! Verification campaigns over the exhaustive corpus and seeded samples.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::corpus::{connected_corpus, LabeledGraphs};
use super::generators::{gen_k5_union, gen_k6_chain, gen_random, gen_random_connected, gen_random_csp, wheel};
use super::report::{CampaignReport, GraphTag, Record};
use crate::csp::{brute_force_csp, encode_maxcut, solve, TransversalMethod};
use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, Graph};
use crate::oracle::{is_critical, lemma31_witness, transversal_number};
use crate::potential::{greedy_fifth_run, greedy_fifth_transversal, lemma42_check, theorem41_check};
use crate::reduction::{applicable_steps, reduce_core, reduce_core_random};
use crate::structure::{has_k4_subgraph, is_k_connected, max_stable_set_small, shortest_even_cycle, sparse_bipartitions};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Bounds,
    Lemmas,
    Csp,
    Extremal,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bounds => "bounds",
            Suite::Lemmas => "lemmas",
            Suite::Csp => "csp",
            Suite::Extremal => "extremal",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "lemmas" => Ok(Suite::Lemmas),
            "csp" => Ok(Suite::Csp),
            "extremal" => Ok(Suite::Extremal),
            other => Err(Error::domain(format!("unknown suite `{other}`"))),
        }
    }
}

pub const SUITE_MAX_N: usize = 7;
pub const SUITE_MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    /// Exhaustive connected corpus on `1..=max_n` vertices; 0 skips it.
    pub max_n: usize,
    /// Number of seeded random instances on top of the corpus.
    pub samples: usize,
    pub seed: u64,
    /// Keep only failing records in the report.
    pub failures_only: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_n: 6,
            samples: 200,
            seed: 42,
            failures_only: false,
        }
    }
}

impl SuiteParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_n > SUITE_MAX_N {
            return Err(Error::domain(format!(
                "exhaustive corpus is limited to {SUITE_MAX_N} vertices, got {}",
                self.max_n
            )));
        }
        if self.samples > SUITE_MAX_SAMPLES {
            return Err(Error::domain(format!(
                "at most {SUITE_MAX_SAMPLES} samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<CampaignReport> {
    params.validate()?;
    let mut rep = CampaignReport::new(
        &suite.to_string(),
        params.seed,
        params.max_n,
        params.samples,
        params.failures_only,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    match suite {
        Suite::Bounds => bounds_suite(&mut rep, params, &mut rng)?,
        Suite::Lemmas => lemmas_suite(&mut rep, params, &mut rng)?,
        Suite::Csp => csp_suite(&mut rep, params, &mut rng)?,
        Suite::Extremal => extremal_suite(&mut rep)?,
    }
    Ok(rep)
}

fn random_connected<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Result<Graph> {
    let n = rng.gen_range(lo..=hi);
    let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(3 * n));
    gen_random_connected(n, m, rng.gen())
}

fn m_over_5(m: usize) -> i64 {
    (m / 5) as i64
}

fn three_sixteenths(m: usize) -> i64 {
    (3 * (m + 1) / 16) as i64
}

/// Records the `m/5` bound, the connected `3(m+1)/16` bound and the greedy
/// guarantee for one graph.
pub fn bounds_checks(rep: &mut CampaignReport, g: &Graph) {
    let tag = GraphTag::of(g);
    let s = transversal_number(g) as i64;
    let b5 = m_over_5(g.edge_count());
    rep.push(Record::new("m/5", &tag, Some(s), Some(b5), s <= b5));
    if g.is_connected() {
        let b16 = three_sixteenths(g.edge_count());
        rep.push(Record::new("3(m+1)/16", &tag, Some(s), Some(b16), s <= b16));
    }
    let greedy = greedy_fifth_transversal(g);
    let size = greedy.size as i64;
    rep.push(Record::new(
        "greedy-m/5",
        &tag,
        Some(size),
        Some(b5),
        size <= b5 && greedy.verify(g),
    ));
}

fn bounds_suite(rep: &mut CampaignReport, p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<()> {
    for g in connected_corpus(p.max_n) {
        bounds_checks(rep, &g);
    }
    for i in 0..p.samples {
        let g = if i % 2 == 0 {
            random_connected(rng, 8, 12)?
        } else {
            let n = rng.gen_range(8..=12);
            let m = rng.gen_range(0..=(n * (n - 1) / 2).min(3 * n));
            gen_random(n, m, rng.gen())?
        };
        bounds_checks(rep, &g);
    }
    Ok(())
}

/// Random elimination orders all reach the same core once merged vertices
/// are renamed to their representatives.
pub fn confluence_check<R: Rng>(g: &Graph, orders: usize, rng: &mut R) -> bool {
    let reference = reduce_core(g).canonical_end();
    (0..orders).all(|_| reduce_core_random(g, rng).canonical_end() == reference)
}

/// The five-vertex graphs, up to isomorphism, with stability number 2, no
/// sparse bipartition and at most one vertex of degree 4.
pub fn lemma48_graphs() -> Vec<Graph> {
    let mut found: Vec<Graph> = Vec::new();
    for h in LabeledGraphs::new(5, false) {
        let alpha = max_stable_set_small(&h).expect("five vertices").len();
        let fours = h.vertices().filter(|&v| h.degree(v).unwrap() == 4).count();
        if alpha == 2
            && fours <= 1
            && sparse_bipartitions(&h, None).expect("five vertices").is_empty()
            && !found.iter().any(|f| is_isomorphic(f, &h))
        {
            found.push(h);
        }
    }
    found
}

/// K4 with one edge subdivided once.
pub fn subdivided_k4() -> Graph {
    Graph::from_edges(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)])
        .expect("valid edge list")
}

/// Per-graph checks of the reduction, potential and structural lemmas.
pub fn lemma_checks(rep: &mut CampaignReport, g: &Graph) -> Result<()> {
    let tag = GraphTag::of(g);
    let s = transversal_number(g);

    let invariant = applicable_steps(g)
        .iter()
        .all(|step| step.apply(g).is_ok_and(|h| transversal_number(&h) == s));
    rep.push(Record::new("reduction-invariance", &tag, Some(s as i64), None, invariant));

    let run = greedy_fifth_run(g);
    let five = Rational::from_integer(5);
    let drops = run.rounds.iter().all(|r| r.phi_drop >= five);
    rep.push(Record::new("greedy-drop", &tag, Some(run.result.size as i64), None, drops));

    if g.is_connected() {
        let t = theorem41_check(g)?;
        rep.push(Record::new("potential-a", &tag, Some(t.s as i64), None, t.part_a_ok));
        if t.part_b_applicable {
            rep.push(Record::new("potential-b", &tag, Some(t.s as i64), None, t.part_b_ok));
        }
    }

    if g.min_degree().is_some_and(|d| d >= 3) && !has_k4_subgraph(g) {
        let ok = shortest_even_cycle(g).is_some_and(|c| {
            c.almost_induced
                && c.stable_half().is_some_and(|half| {
                    half.len() * 2 == c.cycle.len()
                        && half.iter().all(|&a| half.iter().all(|&b| !g.has_edge(a, b)))
                })
        });
        rep.push(Record::new("even-cycle", &tag, None, None, ok));
    }

    if g.vertex_count() >= 2 && g.is_connected() && is_critical(g) {
        let two = is_k_connected(g, 2);
        let witnesses = g
            .edges()
            .all(|(u, v)| lemma31_witness(g, u, v).is_ok_and(|w| w.is_some()));
        rep.push(Record::new("critical-structure", &tag, Some(s as i64), None, two && witnesses));
    }
    Ok(())
}

fn lemmas_suite(rep: &mut CampaignReport, p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<()> {
    let table = (3..=50).all(|a| {
        (1..=50).all(|b| (1..=50).all(|c| lemma42_check(a, b, c).unwrap_or(false)))
    });
    rep.push(Record::standalone("potential-inequalities", table));

    let h = lemma48_graphs();
    let expected = [Graph::cycle(5), subdivided_k4(), wheel(4)?];
    let matches = h.len() == 3 && expected.iter().all(|e| h.iter().any(|x| is_isomorphic(x, e)));
    rep.push(Record::standalone("five-vertex-fixtures", matches));

    for g in connected_corpus(p.max_n) {
        lemma_checks(rep, &g)?;
    }
    for _ in 0..p.samples {
        let g = random_connected(rng, 5, 9)?;
        lemma_checks(rep, &g)?;
        let tag = GraphTag::of(&g);
        let ok = confluence_check(&g, 5, rng);
        rep.push(Record::new("confluence", &tag, None, None, ok));
    }
    Ok(())
}

fn csp_suite(rep: &mut CampaignReport, p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<()> {
    for (g, want) in [(Graph::cycle(5), 4), (Graph::complete(5), 6), (Graph::complete(6), 9)] {
        let tag = GraphTag::of(&g);
        let inst = encode_maxcut(&g);
        let sol = solve(&inst, TransversalMethod::Exact).assignment.objective;
        let brute = brute_force_csp(&inst).objective;
        let want = Rational::from_integer(want);
        let ok = sol == want && brute == want;
        rep.push(Record::new("maxcut", &tag, Some(*sol.numer()), Some(*want.numer()), ok));
    }
    for _ in 0..p.samples {
        let n = rng.gen_range(1..=8);
        let r = rng.gen_range(1..=3);
        let density = rng.gen_range(0.2..=0.8);
        let inst = gen_random_csp(n, r, density, rng.gen())?;
        let brute = brute_force_csp(&inst).objective;
        let tag = GraphTag::of(&inst.constraint_graph());
        let mut ok = true;
        let mut x = 0;
        for method in [TransversalMethod::Exact, TransversalMethod::Greedy] {
            let sol = solve(&inst, method);
            let recomputed = inst.evaluate(&sol.assignment.values)?;
            ok &= sol.assignment.objective == brute
                && recomputed == sol.assignment.objective
                && sol.branches == (r as u64).pow(sol.transversal.len() as u32);
            if method == TransversalMethod::Exact {
                x = sol.transversal.len() as i64;
            }
        }
        rep.push(Record::new("csp-optimum", &tag, Some(x), None, ok));
    }
    Ok(())
}

fn extremal_suite(rep: &mut CampaignReport) -> Result<()> {
    for k in 1..=3 {
        let chain = gen_k6_chain(k)?;
        let tag = GraphTag::of(&chain);
        let s = transversal_number(&chain) as i64;
        let bound = three_sixteenths(chain.edge_count());
        let ok = s == 3 * k as i64 && chain.edge_count() == 16 * k - 1 && s == bound;
        rep.push(Record::new("k6-chain", &tag, Some(s), Some(bound), ok));

        let union = gen_k5_union(k)?;
        let tag = GraphTag::of(&union);
        let s = transversal_number(&union) as i64;
        let bound = m_over_5(union.edge_count());
        let ok = s == 2 * k as i64 && union.edge_count() == 10 * k && s == bound;
        rep.push(Record::new("k5-union", &tag, Some(s), Some(bound), ok));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn shifted(g: &Graph, by: u32) -> Graph {
        let map = g.vertices().map(|v| (v, VertexId(v.0 + by))).collect();
        g.relabeled(&map).unwrap()
    }

    fn small() -> SuiteParams {
        SuiteParams {
            max_n: 4,
            samples: 10,
            seed: 7,
            failures_only: false,
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in [Suite::Bounds, Suite::Lemmas, Suite::Csp, Suite::Extremal] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn infeasible_params_are_rejected() {
        let p = SuiteParams {
            max_n: 9,
            ..small()
        };
        assert!(run_suite(Suite::Bounds, &p).is_err());
    }

    #[test]
    fn small_suites_pass_and_repeat() {
        for suite in [Suite::Bounds, Suite::Lemmas, Suite::Csp, Suite::Extremal] {
            let a = run_suite(suite, &small()).unwrap();
            assert!(a.passed(), "{suite}: {:?}", a.records.iter().find(|r| !r.pass));
            assert!(a.records.iter().all(Record::is_consistent));
            let b = run_suite(suite, &small()).unwrap();
            assert_eq!(a.to_json(), b.to_json());
        }
    }

    #[test]
    fn extremal_records_are_tight() {
        let rep = run_suite(Suite::Extremal, &small()).unwrap();
        assert_eq!(rep.records.len(), 6);
        assert!(rep.records.iter().all(|r| r.slack == Some(0)));
    }

    #[test]
    fn five_vertex_fixtures() {
        let h = lemma48_graphs();
        assert_eq!(h.len(), 3);
        let mut degs: Vec<Vec<usize>> = h.iter().map(|g| g.degree_sequence()).collect();
        degs.sort();
        assert_eq!(degs, vec![vec![2; 5], vec![3, 3, 3, 3, 2], vec![4, 3, 3, 3, 3]]);
    }

    #[test]
    fn confluence_on_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = shifted(&subdivided_k4(), 10);
        assert!(confluence_check(&g, 20, &mut rng));
    }
}
