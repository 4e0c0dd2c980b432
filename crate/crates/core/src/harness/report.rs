//! Campaign reports: per-instance records plus an aggregate, serialized as
//! JSON with a fixed field order.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::Graph;

/// SHA-256 over the degree sequence and the sorted edge list. Labeled, so
/// isomorphic graphs with different labels hash differently.
pub fn graph_hash(g: &Graph) -> String {
    let (h, _) = g.compacted();
    let mut text = String::new();
    for d in h.degree_sequence() {
        text.push_str(&format!("{d},"));
    }
    text.push('|');
    for (u, v) in h.edges() {
        text.push_str(&format!("{u}-{v},"));
    }
    hex(&Sha256::digest(text.as_bytes()))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub index: u64,
    pub check: String,
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub s: Option<i64>,
    pub bound: Option<i64>,
    /// `bound - s` when both are present.
    pub slack: Option<i64>,
    pub pass: bool,
}

/// Identifying fields of a graph, computed once and shared by its records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTag {
    pub hash: String,
    pub n: usize,
    pub m: usize,
}

impl GraphTag {
    pub fn of(g: &Graph) -> Self {
        GraphTag {
            hash: graph_hash(g),
            n: g.vertex_count(),
            m: g.edge_count(),
        }
    }
}

impl Record {
    pub fn new(check: &str, g: &GraphTag, s: Option<i64>, bound: Option<i64>, pass: bool) -> Self {
        Record {
            index: 0,
            check: check.to_string(),
            graph: g.hash.clone(),
            n: g.n,
            m: g.m,
            s,
            bound,
            slack: s.zip(bound).map(|(s, b)| b - s),
            pass,
        }
    }

    /// Record for a check that does not concern a particular graph.
    pub fn standalone(check: &str, pass: bool) -> Self {
        Record {
            index: 0,
            check: check.to_string(),
            graph: String::new(),
            n: 0,
            m: 0,
            s: None,
            bound: None,
            slack: None,
            pass,
        }
    }

    /// A record is consistent when its slack is recomputable from its own fields.
    pub fn is_consistent(&self) -> bool {
        self.slack == self.s.zip(self.bound).map(|(s, b)| b - s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub count: u64,
    pub failures: u64,
    pub max_slack: Option<i64>,
    pub min_slack: Option<i64>,
}

impl Aggregate {
    fn add(&mut self, r: &Record) {
        self.count += 1;
        self.failures += u64::from(!r.pass);
        if let Some(s) = r.slack {
            self.max_slack = Some(self.max_slack.map_or(s, |x| x.max(s)));
            self.min_slack = Some(self.min_slack.map_or(s, |x| x.min(s)));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub library: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub suite: String,
    pub seed: u64,
    pub max_n: usize,
    pub samples: usize,
    /// Whether passing records were dropped; the aggregate always covers all.
    pub failures_only: bool,
    pub versions: Versions,
    pub records: Vec<Record>,
    pub aggregate: Aggregate,
}

impl CampaignReport {
    pub fn new(suite: &str, seed: u64, max_n: usize, samples: usize, failures_only: bool) -> Self {
        CampaignReport {
            suite: suite.to_string(),
            seed,
            max_n,
            samples,
            failures_only,
            versions: Versions {
                library: env!("CARGO_PKG_VERSION").to_string(),
            },
            records: Vec::new(),
            aggregate: Aggregate::default(),
        }
    }

    pub fn push(&mut self, mut r: Record) {
        r.index = self.aggregate.count;
        self.aggregate.add(&r);
        if !self.failures_only || !r.pass {
            self.records.push(r);
        }
    }

    pub fn passed(&self) -> bool {
        self.aggregate.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// SHA-256 of the JSON form.
    pub fn digest(&self) -> String {
        hex(&Sha256::digest(self.to_json().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_labeled() {
        let a = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_ne!(graph_hash(&a), graph_hash(&b));
        assert_eq!(graph_hash(&a), graph_hash(&a.clone()));
        assert_eq!(graph_hash(&a).len(), 64);
    }

    #[test]
    fn aggregate_tracks_slack() {
        let g = GraphTag::of(&Graph::complete(6));
        let mut rep = CampaignReport::new("t", 1, 3, 0, false);
        rep.push(Record::new("x", &g, Some(3), Some(3), true));
        rep.push(Record::new("y", &g, Some(1), Some(4), true));
        rep.push(Record::standalone("z", false));
        assert_eq!(rep.aggregate.count, 3);
        assert_eq!(rep.aggregate.failures, 1);
        assert_eq!((rep.aggregate.min_slack, rep.aggregate.max_slack), (Some(0), Some(3)));
        assert_eq!(rep.records[2].index, 2);
        assert!(rep.records.iter().all(Record::is_consistent));
        assert_eq!(CampaignReport::from_json(&rep.to_json()).unwrap(), rep);
    }

    #[test]
    fn failures_only_keeps_the_aggregate() {
        let g = GraphTag::of(&Graph::complete(3));
        let mut rep = CampaignReport::new("t", 1, 3, 0, true);
        rep.push(Record::new("x", &g, Some(0), Some(0), true));
        rep.push(Record::new("x", &g, Some(2), Some(0), false));
        assert_eq!(rep.records.len(), 1);
        assert_eq!(rep.records[0].index, 1);
        assert_eq!(rep.aggregate.count, 2);
    }
}
