//! Generators, the exhaustive small-graph corpus, verification suites and
//! their reports.

pub mod corpus;
pub mod generators;
pub mod report;
pub mod suites;

pub use corpus::{connected_corpus, LabeledGraphs};
pub use generators::{gen_k5_union, gen_k6_chain, gen_random, gen_random_connected, gen_random_csp, wheel};
pub use report::{graph_hash, CampaignReport, GraphTag, Record};
pub use suites::{run_suite, Suite, SuiteParams};
