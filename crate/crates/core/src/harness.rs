//! Conjecture and theorem suites over generated corpora, with versioned
//! JSON reports.
//!
//! A suite turns into a list of per-graph tasks. Each task carries the claim
//! it tests; running it yields a [`GraphRecord`] whose status says whether
//! the graph supports the claim, refutes it, or was left open by the budget.
//! Refutations are ordinary results, never panics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::blocks;
use crate::canon::canonical_key;
use crate::corpus::{generated_corpus, CorpusGraph};
use crate::euler::{
    classify_epsilon, decomposition_census, edge_cycle_parity, edge_disjoint_path_count, epsilon_class,
    find_rosa_golomb_subgraph, rosa_golomb, AuditStatus, EpsilonClass, RosaGolomb, DEFAULT_DECOMPOSITION_CAP,
};
use crate::families::{self, make, FamilyError, FamilySpec};
use crate::graph::Graph;
use crate::graph6;
use crate::labeling::{golomb_parity_check, Labeling};
use crate::search::{optimal_labeling, solve_graceful, SearchConfig, Verdict};

pub const SCHEMA_VERSION: u32 = 1;
/// Node expansions per graph unless the caller overrides it.
pub const DEFAULT_SUITE_BUDGET: u64 = 20_000_000;
/// Rosa–Golomb verdicts up to this size are re-derived by exhaustive search.
pub const RG_CROSS_CHECK_MAX_Q: usize = 15;
/// Cycle-space dimension searched for Rosa–Golomb subgraphs.
pub const RG_SUBGRAPH_BOUND: usize = 16;
/// Largest size whose connected subgraphs are all checked.
pub const HIGHLY_GRACEFUL_MAX_Q: usize = 14;
const PARITY_CYCLE_CAP: usize = 200_000;
const RECORD_CYCLE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{param} = {value} exceeds the cap {cap} for suite {suite}")]
    Cap { suite: String, param: &'static str, value: usize, cap: usize },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("report JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Cycles,
    Wheels,
    Dutch,
    French,
    WindmillC4,
    NongracefulCatalog,
    H22n,
    Kn,
    Unicyclic,
    Trees,
    EulerforestEps,
    GraphforestGraceful,
    BipartiteEulerOpt,
    StructureAudit,
    EulerCharacterization,
    EpsilonGraceful,
    RosaGolombForbidden,
    Custom,
}

impl Suite {
    pub const ALL: [Suite; 18] = [
        Suite::Cycles,
        Suite::Wheels,
        Suite::Dutch,
        Suite::French,
        Suite::WindmillC4,
        Suite::NongracefulCatalog,
        Suite::H22n,
        Suite::Kn,
        Suite::Unicyclic,
        Suite::Trees,
        Suite::EulerforestEps,
        Suite::GraphforestGraceful,
        Suite::BipartiteEulerOpt,
        Suite::StructureAudit,
        Suite::EulerCharacterization,
        Suite::EpsilonGraceful,
        Suite::RosaGolombForbidden,
        Suite::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cycles => "cycles",
            Suite::Wheels => "wheels",
            Suite::Dutch => "dutch",
            Suite::French => "french",
            Suite::WindmillC4 => "windmill_c4",
            Suite::NongracefulCatalog => "nongraceful_catalog",
            Suite::H22n => "h22n",
            Suite::Kn => "kn",
            Suite::Unicyclic => "unicyclic",
            Suite::Trees => "trees",
            Suite::EulerforestEps => "eulerforest_eps",
            Suite::GraphforestGraceful => "graphforest_graceful",
            Suite::BipartiteEulerOpt => "bipartite_euler_opt",
            Suite::StructureAudit => "structure_audit",
            Suite::EulerCharacterization => "euler_characterization",
            Suite::EpsilonGraceful => "epsilon_graceful",
            Suite::RosaGolombForbidden => "rosa_golomb_forbidden",
            Suite::Custom => "custom",
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Suite::Cycles => "C_n is graceful iff n ≡ 0, 3 (mod 4)",
            Suite::Wheels => "wheels are graceful",
            Suite::Dutch => "the Dutch m-windmill mK_3 is graceful iff m ≡ 0, 1 (mod 4)",
            Suite::French => "the French m-windmill mK_4 is graceful for m ≥ 4",
            Suite::WindmillC4 => "mC_4 is graceful",
            Suite::NongracefulCatalog => "2K_3, 3K_3, 2K_4 and K_4K_3 are nongraceful; Gallian's products are nongraceful under some reading of ×",
            Suite::H22n => "H(2,2,n) is nongraceful",
            Suite::Kn => "K_n is graceful iff n ≤ 4",
            Suite::Unicyclic => "the only nongraceful unicyclic graphs are C_n with n ≡ 1, 2 (mod 4)",
            Suite::Trees => "all trees are graceful",
            Suite::EulerforestEps => "Eulerforests of ε_i graphs are graceful (ε_0: iff the base is graceful)",
            Suite::GraphforestGraceful => "graphforests of graceful pendant-free graphs are graceful",
            Suite::BipartiteEulerOpt => "bipartite Euler graphs have opt(G) ∈ {q, q+1}",
            Suite::StructureAudit => "Theorems 2–19 hold on every ε_i graph",
            Suite::EulerCharacterization => "Theorems B–F agree with the degree test",
            Suite::EpsilonGraceful => "ε_1 with 0,3 blocks, ε_2 with ξ_2 even, ε_3 with 0,1 blocks (mod 4) are graceful; ε_0 is highly graceful",
            Suite::RosaGolombForbidden => "graphs without Rosa–Golomb subgraphs are highly graceful",
            Suite::Custom => "no claim; verdicts are recorded",
        }
    }

    /// Default for the suite's size parameter.
    pub fn default_max(self) -> Option<usize> {
        match self {
            Suite::Cycles => Some(14),
            Suite::Wheels => Some(8),
            Suite::Dutch => Some(6),
            Suite::French => Some(5),
            Suite::WindmillC4 => Some(5),
            Suite::H22n => Some(4),
            Suite::Kn => Some(7),
            Suite::Unicyclic => Some(7),
            Suite::Trees => Some(9),
            Suite::BipartiteEulerOpt => Some(10),
            Suite::StructureAudit => Some(16),
            Suite::EulerCharacterization => Some(7),
            Suite::EpsilonGraceful => Some(12),
            Suite::RosaGolombForbidden => Some(6),
            _ => None,
        }
    }

    fn max_cap(self) -> usize {
        match self {
            Suite::Unicyclic => families::DEFAULT_UNICYCLIC_CAP,
            Suite::Trees => families::DEFAULT_TREE_CAP,
            Suite::BipartiteEulerOpt => families::DEFAULT_BIPARTITE_EULER_CAP,
            Suite::EulerCharacterization | Suite::RosaGolombForbidden => families::DEFAULT_CONNECTED_CAP,
            Suite::Cycles => 64,
            _ => 32,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    /// Size parameter: largest n, m or order, depending on the suite.
    pub max: Option<usize>,
    pub samples: Option<usize>,
    /// Residue i for `eulerforest_eps`.
    pub residue: Option<usize>,
    pub seed: u64,
    /// Node expansions per search.
    pub budget: u64,
    /// Worker threads; has no effect on the records.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { max: None, samples: None, residue: None, seed: 0, budget: DEFAULT_SUITE_BUDGET, workers: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Supported,
    Refuted,
    Inconclusive,
    /// No claim applies; the verdict is recorded for reference.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub family: String,
    pub p: usize,
    pub q: usize,
    pub epsilon_class: Option<EpsilonClass>,
    pub expected: String,
    pub verdict: Option<Verdict>,
    pub opt: Option<usize>,
    pub witness: Option<Labeling>,
    pub nodes_expanded: u64,
    pub wall_time_ms: f64,
    pub status: Status,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub supported: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub recorded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub family: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub claim: String,
    pub params: SuiteParams,
    pub summary: Summary,
    pub counterexamples: Vec<Counterexample>,
    pub records: Vec<GraphRecord>,
}

impl SuiteReport {
    /// Copy with wall times zeroed and the worker count reset, for
    /// reproducibility checks.
    pub fn without_wall_time(&self) -> SuiteReport {
        let mut r = self.clone();
        r.params.workers = 1;
        for rec in &mut r.records {
            rec.wall_time_ms = 0.0;
        }
        r
    }

    pub fn has_counterexamples(&self) -> bool {
        self.summary.refuted > 0
    }
}

#[derive(Debug, Clone)]
enum Claim {
    Graceful(bool),
    NoClaim,
    /// Exhaustively nongraceful, with an optimal labeling.
    NongracefulWithOpt,
    OptAtMostQPlusOne,
    Audit,
    Characterization,
    HighlyGraceful,
    /// Graceful exactly when `base` is.
    GracefulLikeBase(Box<Graph>),
    /// Predicted graceful when the condition holds, otherwise recorded.
    GracefulIf(bool, String),
}

struct Task {
    family: String,
    graph: Graph,
    claim: Claim,
    /// Records in a group jointly support a claim about one item read in
    /// several ways.
    group: Option<String>,
}

impl Task {
    fn new(family: impl Into<String>, graph: Graph, claim: Claim) -> Self {
        Task { family: family.into(), graph, claim, group: None }
    }
}

struct Decision {
    verdict: Verdict,
    witness: Option<Labeling>,
    nodes_expanded: u64,
    notes: Vec<String>,
    violation: Option<String>,
}

/// Solves `g`, re-deriving small Rosa–Golomb verdicts by search and
/// checking Golomb parity on every witness.
fn decide(g: &Graph, cfg: &SearchConfig) -> Decision {
    if g.q() == 0 {
        let graceful = g.p() == 1;
        return Decision {
            verdict: if graceful { Verdict::Graceful } else { Verdict::NongracefulExhausted },
            witness: graceful.then(|| Labeling::new(vec![0]).expect("single label")),
            nodes_expanded: 0,
            notes: Vec::new(),
            violation: None,
        };
    }
    let out = solve_graceful(g, cfg).expect("q ≥ 1");
    let mut d = Decision {
        verdict: out.verdict,
        witness: out.witness,
        nodes_expanded: out.nodes_expanded,
        notes: Vec::new(),
        violation: None,
    };
    if d.verdict == Verdict::NongracefulRosaGolomb && g.q() <= RG_CROSS_CHECK_MAX_Q {
        let check = solve_graceful(g, &SearchConfig { rosa_golomb_shortcut: false, ..cfg.clone() }).expect("q ≥ 1");
        d.nodes_expanded += check.nodes_expanded;
        match check.verdict {
            Verdict::Graceful => d.violation = Some("search found a graceful labeling of a Rosa–Golomb graph".into()),
            Verdict::NongracefulExhausted => d.notes.push("Rosa–Golomb verdict confirmed by exhaustive search".into()),
            _ => d.notes.push("Rosa–Golomb cross-check hit the budget".into()),
        }
    }
    if let Some(w) = &d.witness {
        check_parity(g, w, &mut d.notes, &mut d.violation);
    }
    d
}

fn check_parity(g: &Graph, w: &Labeling, notes: &mut Vec<String>, violation: &mut Option<String>) {
    match golomb_parity_check(g, w, PARITY_CYCLE_CAP) {
        Ok(r) if !r.holds => *violation = Some(format!("odd edge-label sum on cycle {:?}", r.odd_cycle)),
        Ok(r) if r.truncated => notes.push(format!("Golomb parity checked on the first {} cycles", r.cycles_checked)),
        Ok(_) => {}
        Err(e) => *violation = Some(format!("witness rejected: {e}")),
    }
}

fn status_for(verdict: Verdict, predicted: bool) -> Status {
    match verdict.is_graceful() {
        None => Status::Inconclusive,
        Some(b) if b == predicted => Status::Supported,
        Some(_) => Status::Refuted,
    }
}

fn graceful_word(b: bool) -> &'static str {
    if b {
        "graceful"
    } else {
        "nongraceful"
    }
}

fn run_task(task: &Task, budget: u64) -> GraphRecord {
    let start = Instant::now();
    let g = &task.graph;
    let cfg = SearchConfig { budget: Some(budget), ..SearchConfig::default() };
    let mut rec = GraphRecord {
        graph6: graph6::encode(g),
        family: task.family.clone(),
        p: g.p(),
        q: g.q(),
        epsilon_class: g.is_euler().then(|| epsilon_class(g, RECORD_CYCLE_CAP)),
        expected: String::new(),
        verdict: None,
        opt: None,
        witness: None,
        nodes_expanded: 0,
        wall_time_ms: 0.0,
        status: Status::Recorded,
        notes: Vec::new(),
    };
    let adopt = |rec: &mut GraphRecord, d: Decision, predicted: Option<bool>| {
        rec.verdict = Some(d.verdict);
        rec.opt = (d.verdict == Verdict::Graceful).then_some(g.q());
        rec.witness = d.witness;
        rec.nodes_expanded += d.nodes_expanded;
        rec.notes.extend(d.notes);
        rec.status = match predicted {
            Some(p) => status_for(d.verdict, p),
            None if d.verdict == Verdict::BudgetExceeded => Status::Inconclusive,
            None => Status::Recorded,
        };
        if let Some(v) = d.violation {
            rec.status = Status::Refuted;
            rec.notes.push(v);
        }
    };
    match &task.claim {
        Claim::Graceful(pred) => {
            rec.expected = graceful_word(*pred).into();
            adopt(&mut rec, decide(g, &cfg), Some(*pred));
        }
        Claim::NoClaim => {
            rec.expected = "no claim".into();
            adopt(&mut rec, decide(g, &cfg), None);
        }
        Claim::GracefulIf(cond, why) => {
            rec.expected = if *cond { format!("graceful ({why})") } else { format!("no claim ({why})") };
            adopt(&mut rec, decide(g, &cfg), cond.then_some(true));
        }
        Claim::GracefulLikeBase(base) => {
            let b = decide(base, &cfg);
            rec.nodes_expanded += b.nodes_expanded;
            match b.verdict.is_graceful() {
                Some(pred) => {
                    rec.expected = format!("{} like its base", graceful_word(pred));
                    adopt(&mut rec, decide(g, &cfg), Some(pred));
                }
                None => {
                    rec.expected = "same verdict as the base".into();
                    adopt(&mut rec, decide(g, &cfg), None);
                    rec.status = Status::Inconclusive;
                    rec.notes.push("base verdict not decided within budget".into());
                }
            }
        }
        Claim::NongracefulWithOpt => {
            rec.expected = "nongraceful by exhaustion".into();
            let exhaustive = SearchConfig { budget: Some(budget), ..SearchConfig::exhaustive() };
            adopt(&mut rec, decide(g, &exhaustive), Some(false));
            let opt = optimal_labeling(g, &exhaustive).expect("q ≥ 1");
            rec.nodes_expanded += opt.nodes_expanded;
            rec.opt = opt.opt;
            if let Some(w) = opt.witness {
                rec.witness = Some(w);
            } else if rec.status == Status::Supported {
                rec.status = Status::Inconclusive;
                rec.notes.push(format!("opt not settled; opt ≥ {}", opt.opt_lower_bound));
            }
        }
        Claim::OptAtMostQPlusOne => {
            rec.expected = "opt ∈ {q, q+1}".into();
            let out = optimal_labeling(g, &cfg).expect("q ≥ 1");
            rec.verdict = Some(if out.opt == Some(g.q()) {
                Verdict::Graceful
            } else if out.opt.is_some() {
                out.verdict
            } else {
                Verdict::BudgetExceeded
            });
            rec.opt = out.opt;
            rec.nodes_expanded = out.nodes_expanded;
            rec.status = match out.opt {
                Some(o) if o <= g.q() + 1 => Status::Supported,
                Some(_) => Status::Refuted,
                None if out.opt_lower_bound > g.q() + 1 => Status::Refuted,
                None => Status::Inconclusive,
            };
            if out.opt == Some(g.q() + 1) && rosa_golomb(g) != RosaGolomb::CertifiedNongraceful {
                rec.notes.push("nongraceful but not Rosa–Golomb: the alternative reading of Conjecture 10 fails".into());
            }
            if let Some(w) = &out.witness {
                if out.opt == Some(g.q()) {
                    let mut v = None;
                    check_parity(g, w, &mut rec.notes, &mut v);
                    if let Some(v) = v {
                        rec.status = Status::Refuted;
                        rec.notes.push(v);
                    }
                }
            }
            rec.witness = out.witness;
        }
        Claim::Audit => {
            rec.expected = "every applicable theorem holds".into();
            let report = classify_epsilon(g);
            for a in &report.audit {
                if a.status == AuditStatus::Fail {
                    let tag = if a.gated { "violation" } else { "informational failure" };
                    rec.notes.push(format!("{} {tag}: {}", a.theorem, a.witness.clone().unwrap_or_default()));
                }
            }
            if let Some(c) = report.decomposition_class {
                rec.notes.push(format!("decomposition view gives {c:?}"));
            }
            rec.status = if report.cycles_truncated {
                Status::Inconclusive
            } else if report.audit_passed() {
                Status::Supported
            } else {
                Status::Refuted
            };
        }
        Claim::Characterization => {
            rec.expected = "Theorems B, C, D, E, F agree".into();
            characterize(g, &mut rec);
        }
        Claim::HighlyGraceful => {
            rec.expected = "every connected subgraph graceful".into();
            highly_graceful(g, &cfg, &mut rec);
        }
    }
    rec.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

fn characterize(g: &Graph, rec: &mut GraphRecord) {
    let c = g.is_euler();
    let census = decomposition_census(g, DEFAULT_DECOMPOSITION_CAP);
    let d = g.q() > 0 && g.is_connected() && census.count > 0;
    let mut agree = c == d;
    rec.notes.push(format!("C: {c}, D: {d} ({} decompositions{})", census.count, if census.truncated { "+" } else { "" }));
    match edge_cycle_parity(g, RECORD_CYCLE_CAP) {
        Ok(e) => {
            rec.notes.push(format!("E: {}", e.euler_by_parity));
            agree &= e.euler_by_parity == c;
        }
        Err(_) => {
            rec.notes.push("E: cycle census truncated".into());
            rec.status = Status::Inconclusive;
        }
    }
    if c {
        match census.odd {
            Some(odd) => {
                rec.notes.push(format!("F: odd count = {odd}"));
                agree &= odd;
            }
            None => rec.notes.push("F: census truncated".into()),
        }
        let odd_pair = g.nodes().flat_map(|u| (u + 1..g.p()).map(move |v| (u, v))).find(|&(u, v)| {
            edge_disjoint_path_count(g, u, v).expect("distinct nodes") % 2 == 1
        });
        if let Some((u, v)) = odd_pair {
            rec.notes.push(format!("B: nodes {u},{v} have an odd number of edge-disjoint paths"));
            agree = false;
        }
    }
    if !agree {
        rec.status = Status::Refuted;
    } else if rec.status != Status::Inconclusive {
        rec.status = Status::Supported;
    }
}

/// Connected subgraphs of `g` on at least one edge, one per isomorphism
/// class.
pub fn connected_subgraphs(g: &Graph) -> Vec<Graph> {
    assert!(g.q() <= 24, "subgraph enumeration is exponential in q");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << g.q()) {
        let ids: Vec<usize> = (0..g.q()).filter(|&e| mask >> e & 1 == 1).collect();
        let sub = g.edge_induced(&ids).graph;
        if sub.is_connected() && seen.insert(canonical_key(&sub)) {
            out.push(sub);
        }
    }
    out
}

fn highly_graceful(g: &Graph, cfg: &SearchConfig, rec: &mut GraphRecord) {
    if g.q() > HIGHLY_GRACEFUL_MAX_Q {
        rec.status = Status::Inconclusive;
        rec.notes.push(format!("q > {HIGHLY_GRACEFUL_MAX_Q}: subgraphs not checked"));
        return;
    }
    let subs = connected_subgraphs(g);
    let mut open = 0;
    rec.status = Status::Supported;
    for sub in &subs {
        let d = decide(sub, cfg);
        rec.nodes_expanded += d.nodes_expanded;
        if sub.q() == g.q() {
            rec.verdict = Some(d.verdict);
            rec.witness = d.witness.clone();
        }
        match d.verdict.is_graceful() {
            Some(true) => {}
            Some(false) => {
                rec.status = Status::Refuted;
                rec.notes.push(format!("nongraceful subgraph {}", graph6::encode(sub)));
                return;
            }
            None => open += 1,
        }
    }
    rec.notes.push(format!("{} connected subgraphs checked", subs.len()));
    if open > 0 {
        rec.status = Status::Inconclusive;
        rec.notes.push(format!("{open} subgraphs undecided within budget"));
    }
}

fn spec_task(spec: FamilySpec, claim: Claim) -> Result<Task, HarnessError> {
    let g = make(&spec)?;
    Ok(Task::new(spec.to_string(), g, claim))
}

fn check_max(suite: Suite, value: usize) -> Result<usize, HarnessError> {
    let cap = suite.max_cap();
    if value > cap {
        return Err(HarnessError::Cap { suite: suite.name().into(), param: "max", value, cap });
    }
    Ok(value)
}

fn sample_forests(
    pool: &[CorpusGraph],
    samples: usize,
    seed: u64,
    mut claim: impl FnMut(&CorpusGraph) -> Claim,
) -> Result<Vec<Task>, HarnessError> {
    if pool.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(samples);
    for _ in 0..samples {
        let base = &pool[rng.gen_range(0..pool.len())];
        let extra = rng.gen_range(1..=4);
        let forest_seed: u64 = rng.gen();
        let g = families::random_graphforest(&base.graph, base.graph.p() + extra, forest_seed)?;
        let family = format!(
            "graphforest {} {forest_seed} of {} [{}]",
            base.graph.p() + extra,
            graph6::encode(&base.graph),
            base.family
        );
        tasks.push(Task::new(family, g, claim(base)));
    }
    Ok(tasks)
}

fn block_count(g: &Graph) -> usize {
    blocks(g).map(|d| d.blocks.len()).unwrap_or(0)
}

fn build_tasks(suite: Suite, params: &SuiteParams, custom: &[Graph]) -> Result<Vec<Task>, HarnessError> {
    use FamilySpec::*;
    let max = check_max(suite, params.max.or(suite.default_max()).unwrap_or(0))?;
    let samples = params.samples.unwrap_or(20);
    let mut tasks = Vec::new();
    match suite {
        Suite::Cycles => {
            for n in 3..=max {
                tasks.push(spec_task(Cycle { n }, Claim::Graceful(n % 4 == 0 || n % 4 == 3))?);
            }
        }
        Suite::Wheels => {
            for n in 3..=max {
                tasks.push(spec_task(Wheel { n }, Claim::Graceful(true))?);
            }
        }
        Suite::Dutch => {
            for m in 1..=max {
                tasks.push(spec_task(DutchWindmill { m }, Claim::Graceful(m % 4 <= 1))?);
            }
        }
        Suite::French => {
            for m in 1..=max {
                let claim = if m >= 4 { Claim::Graceful(true) } else { Claim::NoClaim };
                tasks.push(spec_task(WindmillComplete { m, n: 4 }, claim)?);
            }
        }
        Suite::WindmillC4 => {
            for m in 2..=max {
                tasks.push(spec_task(WindmillCycles { m, n: 4 }, Claim::Graceful(true))?);
            }
        }
        Suite::NongracefulCatalog => {
            let k4k3 = Join { left: Box::new(Complete { n: 4 }), right: Box::new(Complete { n: 3 }) };
            for spec in [DutchWindmill { m: 2 }, DutchWindmill { m: 3 }, WindmillComplete { m: 2, n: 4 }, k4k3] {
                tasks.push(spec_task(spec, Claim::NongracefulWithOpt)?);
            }
            // K_4K_3 read literally as two cliques on one common node.
            tasks.push(spec_task(TwoCliquesSharedNode { m: 4, n: 3 }, Claim::NoClaim)?);
            let k = |n| Box::new(Complete { n });
            let c = |n| Box::new(Cycle { n });
            let pth = |n| Box::new(Path { n });
            let items: [(&str, Box<FamilySpec>, Box<FamilySpec>); 4] = [
                ("K_3 × C_3", k(3), c(3)),
                ("K_3 × C_4", k(3), c(4)),
                ("K_4 × C_4", k(4), c(4)),
                ("K_6 × P_2", k(6), pth(2)),
            ];
            for (name, left, right) in items {
                for spec in [Join { left: left.clone(), right: right.clone() }, CartesianProduct { left, right }] {
                    let mut t = spec_task(spec, Claim::Graceful(false))?;
                    t.group = Some(name.to_string());
                    tasks.push(t);
                }
            }
        }
        Suite::H22n => {
            for n in 1..=max {
                tasks.push(spec_task(HJoin { l: 2, m: 2, n }, Claim::Graceful(false))?);
            }
        }
        Suite::Kn => {
            for n in 2..=max {
                tasks.push(spec_task(Complete { n }, Claim::Graceful(n <= 4))?);
            }
        }
        Suite::Unicyclic => {
            for order in 3..=max {
                for g in families::enumerate_unicyclic(order)? {
                    let pred = !(g.is_cycle_graph() && matches!(order % 4, 1 | 2));
                    tasks.push(Task::new(format!("unicyclic {order}"), g, Claim::Graceful(pred)));
                }
            }
        }
        Suite::Trees => {
            for order in 1..=max {
                for g in families::enumerate_trees(order)? {
                    tasks.push(Task::new(format!("tree {order}"), g, Claim::Graceful(true)));
                }
            }
        }
        Suite::EulerforestEps => {
            let i = params.residue.unwrap_or(0) % 4;
            let pool: Vec<CorpusGraph> = generated_corpus(6, 10, 12)
                .into_iter()
                .filter(|c| c.graph.q() <= 16 && epsilon_class(&c.graph, RECORD_CYCLE_CAP).residue() == Some(i))
                .collect();
            tasks = sample_forests(&pool, samples, params.seed, |base| {
                if i == 0 {
                    Claim::GracefulLikeBase(Box::new(base.graph.clone()))
                } else {
                    Claim::Graceful(true)
                }
            })?;
        }
        Suite::GraphforestGraceful => {
            let cfg = SearchConfig { budget: Some(params.budget), ..SearchConfig::default() };
            let pool: Vec<CorpusGraph> = generated_corpus(6, 0, 10)
                .into_iter()
                .filter(|c| c.graph.q() > 0 && c.graph.pendant_nodes().is_empty() && c.graph.is_connected())
                .filter(|c| decide(&c.graph, &cfg).verdict == Verdict::Graceful)
                .collect();
            tasks = sample_forests(&pool, samples, params.seed, |_| Claim::Graceful(true))?;
        }
        Suite::BipartiteEulerOpt => {
            for order in 1..=max {
                for g in families::enumerate_bipartite_euler(order)? {
                    if g.q() > 0 {
                        tasks.push(Task::new(format!("bipartite_euler {order}"), g, Claim::OptAtMostQPlusOne));
                    }
                }
            }
        }
        Suite::StructureAudit => {
            for c in generated_corpus(7, 10, max) {
                if epsilon_class(&c.graph, RECORD_CYCLE_CAP).residue().is_some() {
                    tasks.push(Task::new(c.family, c.graph, Claim::Audit));
                }
            }
        }
        Suite::EulerCharacterization => {
            for c in generated_corpus(max, 10, 10) {
                tasks.push(Task::new(c.family, c.graph, Claim::Characterization));
            }
        }
        Suite::EpsilonGraceful => {
            for c in generated_corpus(7, 10, 16) {
                let g = c.graph;
                if g.q() > 20 {
                    continue;
                }
                let claim = match epsilon_class(&g, RECORD_CYCLE_CAP) {
                    EpsilonClass::Eps0 if g.q() <= max => Claim::HighlyGraceful,
                    EpsilonClass::Eps1 => {
                        let b = block_count(&g);
                        Claim::GracefulIf(b % 4 == 0 || b % 4 == 3, format!("Conjecture 3, {b} blocks"))
                    }
                    EpsilonClass::Eps2 => {
                        let xi = crate::euler::simple_cycles(&g, RECORD_CYCLE_CAP).xi.map_or(0, |x| x[2]);
                        Claim::GracefulIf(xi % 2 == 0, format!("Conjecture 5, ξ_2 = {xi}"))
                    }
                    EpsilonClass::Eps3 => {
                        let b = block_count(&g);
                        Claim::GracefulIf(b % 4 <= 1, format!("Conjecture 7, {b} blocks"))
                    }
                    _ => continue,
                };
                tasks.push(Task::new(c.family, g, claim));
            }
        }
        Suite::RosaGolombForbidden => {
            for order in 2..=max {
                for g in families::enumerate_connected(order)? {
                    let search = find_rosa_golomb_subgraph(&g, RG_SUBGRAPH_BOUND);
                    if search.witness.is_none() && !search.exceeded_bound {
                        let family = format!("connected {order}{}", if g.is_euler() { " euler" } else { "" });
                        tasks.push(Task::new(family, g, Claim::HighlyGraceful));
                    }
                }
            }
        }
        Suite::Custom => {
            for (i, g) in custom.iter().enumerate() {
                tasks.push(Task::new(format!("custom {}", i + 1), g.clone(), Claim::NoClaim));
            }
        }
    }
    Ok(tasks)
}

fn settle_groups(tasks: &[Task], records: &mut [GraphRecord]) {
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, t) in tasks.iter().enumerate() {
        if let Some(g) = &t.group {
            groups.entry(g).or_default().push(i);
        }
    }
    for (name, members) in groups {
        let verdicts: Vec<Option<bool>> = members.iter().map(|&i| records[i].verdict.and_then(Verdict::is_graceful)).collect();
        let status = if verdicts.contains(&Some(false)) {
            Status::Supported
        } else if verdicts.iter().all(|v| *v == Some(true)) {
            Status::Refuted
        } else {
            Status::Inconclusive
        };
        for &i in &members {
            let reading = if tasks[i].family.starts_with("join") { "join" } else { "cartesian product" };
            records[i].notes.push(format!("{name} read as {reading}"));
            if !records[i].notes.iter().any(|n| n.contains("Rosa–Golomb shortcut contradicted")) {
                records[i].status = status;
            }
        }
    }
}

/// Runs a registered suite. `custom` feeds the `custom` suite and is ignored
/// otherwise.
pub fn run_suite(suite: Suite, params: &SuiteParams, custom: &[Graph]) -> Result<SuiteReport, HarnessError> {
    let tasks = build_tasks(suite, params, custom)?;
    let budget = params.budget;
    let mut records: Vec<GraphRecord> = if params.workers <= 1 {
        tasks.iter().map(|t| run_task(t, budget)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(params.workers).build().expect("worker pool");
        pool.install(|| tasks.par_iter().map(|t| run_task(t, budget)).collect())
    };
    settle_groups(&tasks, &mut records);
    records.sort_by(|a, b| (&a.graph6, &a.family).cmp(&(&b.graph6, &b.family)));
    let mut summary = Summary::default();
    let mut counterexamples = Vec::new();
    for r in &records {
        match r.status {
            Status::Supported => summary.supported += 1,
            Status::Inconclusive => summary.inconclusive += 1,
            Status::Recorded => summary.recorded += 1,
            Status::Refuted => {
                summary.refuted += 1;
                let reason = if r.notes.is_empty() {
                    format!(
                        "expected {}, found {}",
                        r.expected,
                        r.verdict.map_or("no verdict".to_string(), |v| serde_json::to_string(&v).expect("verdict"))
                    )
                } else {
                    r.notes.join("; ")
                };
                counterexamples.push(Counterexample { graph6: r.graph6.clone(), family: r.family.clone(), reason });
            }
        }
    }
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite,
        claim: suite.claim().to_string(),
        params: SuiteParams { max: params.max.or(suite.default_max()), samples: params.samples, ..params.clone() },
        summary,
        counterexamples,
        records,
    })
}

pub fn report_json(r: &SuiteReport) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

pub fn emit_report(r: &SuiteReport, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, report_json(r) + "\n")
        .map_err(|e| HarnessError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_report(path: &Path) -> Result<SuiteReport, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Json(e.to_string()))
}
