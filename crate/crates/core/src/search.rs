//! Exact backtracking search for graceful and optimal labelings.
//!
//! Two strategies share one state machine:
//!
//! * [`Strategy::EdgeLabel`] realises edge labels from the largest down. Label
//!   `k` must be carried by some edge whose endpoints get `a` and `a + k`, and
//!   for large `k` there are few such pairs, so the tree stays narrow.
//! * [`Strategy::NodeOrder`] labels nodes in a fixed order (descending degree,
//!   ties by id) and prunes on the first repeated edge label.
//!
//! Both fix the orientation of the first edge placed (the smaller node id gets
//! the smaller label). Complementation `φ ↦ M − φ` maps the discarded half
//! onto the kept half, so enumeration can restore it exactly.
//!
//! The budget counts search-tree node expansions. The first-level branches
//! (placements of the first edge) are independent and can be spread over a
//! worker pool; results are merged in branch order so parallel and sequential
//! runs return the same witness.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::{rosa_golomb, RosaGolomb};
use crate::graph::{Graph, Node};
use crate::labeling::{evaluate_labeling, Labeling};

/// Node expansions allowed when the caller does not choose.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;
/// Largest size accepted by the enumeration entry points.
pub const ENUMERATION_Q_CAP: usize = 40;

const NONE: u32 = u32::MAX;
const FLUSH_EVERY: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    EdgeLabel,
    NodeOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum node expansions; `None` is unbounded.
    pub budget: Option<u64>,
    pub strategy: Strategy,
    pub workers: usize,
    /// Certify Euler graphs with `q ≡ 1, 2 (mod 4)` without searching.
    pub rosa_golomb_shortcut: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: Some(DEFAULT_BUDGET), strategy: Strategy::EdgeLabel, workers: 1, rosa_golomb_shortcut: true }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig { budget: Some(budget), ..Default::default() }
    }

    pub fn exhaustive() -> Self {
        SearchConfig { rosa_golomb_shortcut: false, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Graceful,
    NongracefulExhausted,
    NongracefulRosaGolomb,
    BudgetExceeded,
}

impl Verdict {
    pub fn is_graceful(self) -> Option<bool> {
        match self {
            Verdict::Graceful => Some(true),
            Verdict::NongracefulExhausted | Verdict::NongracefulRosaGolomb => Some(false),
            Verdict::BudgetExceeded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub witness: Option<Labeling>,
    /// Proven optimum of the largest node label, when known.
    pub opt: Option<usize>,
    /// Every smaller maximum label has been ruled out.
    pub opt_lower_bound: usize,
    pub nodes_expanded: u64,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("budget exhausted after {nodes_expanded} node expansions")]
    BudgetExceeded { nodes_expanded: u64 },
    #[error("size {q} exceeds the enumeration cap {cap}")]
    TooLarge { q: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationMode {
    Raw,
    UpToComplement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GracefulEnumeration {
    pub mode: EnumerationMode,
    /// Sorted lexicographically.
    pub labelings: Vec<Labeling>,
    /// Number of labelings per set of missing node labels.
    pub by_missing_node_labels: Vec<(Vec<usize>, usize)>,
    pub nodes_expanded: u64,
}

/// Per-node attainable labels and per-edge attainable differences over all
/// graceful labelings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractSpectrum {
    pub graceful: bool,
    pub labelings: usize,
    pub node_labels: Vec<Vec<usize>>,
    pub edge_labels: Vec<Vec<usize>>,
}

impl AttractSpectrum {
    /// Node `u` takes label `i` in some graceful labeling.
    pub fn is_attractive(&self, u: Node, i: usize) -> bool {
        self.node_labels[u].binary_search(&i).is_ok()
    }

    /// Edge `e` never carries difference `i` in a graceful labeling.
    pub fn is_repelling(&self, e: usize, i: usize) -> bool {
        self.edge_labels[e].binary_search(&i).is_err()
    }
}

struct Problem {
    q: usize,
    top: usize,
    slack: usize,
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    isolated: Vec<u32>,
    order: Vec<u32>,
    strategy: Strategy,
}

impl Problem {
    fn new(g: &Graph, top: usize, strategy: Strategy) -> Self {
        let adj: Vec<Vec<u32>> = g.nodes().map(|u| g.neighbors(u).iter().map(|&v| v as u32).collect()).collect();
        let mut order: Vec<u32> = (0..g.p() as u32).collect();
        order.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u as usize)), u));
        Problem {
            q: g.q(),
            top,
            slack: top - g.q(),
            adj,
            edges: g.edges().iter().map(|&(u, v)| (u as u32, v as u32)).collect(),
            isolated: g.nodes().filter(|&u| g.degree(u) == 0).map(|u| u as u32).collect(),
            order,
            strategy,
        }
    }

    /// Initial placements, in canonical order.
    fn branches(&self) -> Vec<Branch> {
        let mut out = Vec::new();
        match self.strategy {
            Strategy::EdgeLabel => {
                for k in (self.top - self.slack..=self.top).rev().filter(|&k| k > 0) {
                    for a in 0..=self.top - k {
                        for &(u, v) in &self.edges {
                            out.push(Branch {
                                assign: vec![(u, a as u32), (v, (a + k) as u32)],
                                skips_used: self.top - k,
                                next_k: k - 1,
                            });
                        }
                    }
                }
            }
            Strategy::NodeOrder if self.slack == 0 => {
                for &(u, v) in &self.edges {
                    out.push(Branch { assign: vec![(u, 0), (v, self.top as u32)], skips_used: 0, next_k: 0 });
                }
            }
            Strategy::NodeOrder => {
                for u in 0..self.adj.len() as u32 {
                    out.push(Branch { assign: vec![(u, 0)], skips_used: 0, next_k: 0 });
                }
            }
        }
        out
    }
}

struct Branch {
    assign: Vec<(u32, u32)>,
    skips_used: usize,
    next_k: usize,
}

struct Shared {
    expanded: AtomicU64,
    budget: Option<u64>,
    exceeded: AtomicBool,
    /// Lowest branch index that produced a decision witness.
    best_branch: AtomicUsize,
}

enum Flow {
    Continue,
    Stop,
    Abort,
}

struct State<'a> {
    prob: &'a Problem,
    shared: &'a Shared,
    branch: usize,
    decision: bool,
    label: Vec<u32>,
    node_at: Vec<u32>,
    used: Vec<bool>,
    used_stack: Vec<u32>,
    edges_done: usize,
    local: u64,
    found: Vec<Vec<u32>>,
}

impl<'a> State<'a> {
    fn new(prob: &'a Problem, shared: &'a Shared, branch: usize, decision: bool) -> Self {
        State {
            prob,
            shared,
            branch,
            decision,
            label: vec![NONE; prob.adj.len()],
            node_at: vec![NONE; prob.top + 1],
            used: vec![false; prob.top + 1],
            used_stack: Vec::with_capacity(prob.q),
            edges_done: 0,
            local: 0,
            found: Vec::new(),
        }
    }

    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local % FLUSH_EVERY == 0 {
            self.shared.expanded.fetch_add(FLUSH_EVERY, Ordering::Relaxed);
            if self.decision && self.shared.best_branch.load(Ordering::Relaxed) < self.branch {
                return false;
            }
        }
        if let Some(b) = self.shared.budget {
            let total = self.shared.expanded.load(Ordering::Relaxed) + self.local % FLUSH_EVERY;
            if total > b {
                self.shared.exceeded.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    fn flush(&mut self) {
        self.shared.expanded.fetch_add(self.local % FLUSH_EVERY, Ordering::Relaxed);
        self.local = 0;
    }

    /// Labels `v` with `l`; every new edge label must be unused and at most
    /// `limit`. Returns the undo mark.
    fn assign(&mut self, v: u32, l: u32, limit: usize) -> Option<usize> {
        let base = self.used_stack.len();
        for &w in &self.prob.adj[v as usize] {
            let lw = self.label[w as usize];
            if lw == NONE {
                continue;
            }
            let d = l.abs_diff(lw) as usize;
            if d > limit || self.used[d] {
                self.rollback(base);
                return None;
            }
            self.used[d] = true;
            self.used_stack.push(d as u32);
        }
        self.edges_done += self.used_stack.len() - base;
        self.label[v as usize] = l;
        self.node_at[l as usize] = v;
        Some(base)
    }

    fn rollback(&mut self, base: usize) {
        while self.used_stack.len() > base {
            let d = self.used_stack.pop().expect("above base") as usize;
            self.used[d] = false;
        }
    }

    fn unassign(&mut self, v: u32, base: usize) {
        self.edges_done -= self.used_stack.len() - base;
        self.rollback(base);
        let l = self.label[v as usize];
        self.node_at[l as usize] = NONE;
        self.label[v as usize] = NONE;
    }

    fn complete(&mut self) -> Flow {
        self.found.push(self.label.clone());
        if self.decision {
            Flow::Stop
        } else {
            Flow::Continue
        }
    }

    fn try_child(&mut self, v: u32, l: u32, limit: usize, next: impl FnOnce(&mut Self) -> Flow) -> Flow {
        match self.assign(v, l, limit) {
            Some(mark) => {
                let flow = next(self);
                self.unassign(v, mark);
                flow
            }
            None => Flow::Continue,
        }
    }

    fn edge_label_dfs(&mut self, mut k: usize, skips_left: usize) -> Flow {
        if !self.tick() {
            return Flow::Abort;
        }
        if self.edges_done == self.prob.q {
            return self.complete();
        }
        while self.used[k] {
            k -= 1;
        }
        let prob = self.prob;
        for a in 0..=prob.top - k {
            let b = a + k;
            let (at_a, at_b) = (self.node_at[a], self.node_at[b]);
            let flow = match (at_a, at_b) {
                (NONE, NONE) => self.place_free_pair(a as u32, b as u32, k, skips_left),
                (x, NONE) => self.place_next_to(x, b as u32, k, skips_left),
                (NONE, y) => self.place_next_to(y, a as u32, k, skips_left),
                _ => Flow::Continue,
            };
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        if skips_left > 0 {
            return self.edge_label_dfs(k - 1, skips_left - 1);
        }
        Flow::Continue
    }

    fn place_next_to(&mut self, anchor: u32, l: u32, k: usize, skips_left: usize) -> Flow {
        let prob = self.prob;
        for &v in &prob.adj[anchor as usize] {
            if self.label[v as usize] != NONE {
                continue;
            }
            let flow = self.try_child(v, l, k, |s| s.edge_label_dfs(k - 1, skips_left));
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }

    fn place_free_pair(&mut self, a: u32, b: u32, k: usize, skips_left: usize) -> Flow {
        let prob = self.prob;
        for &(u, v) in &prob.edges {
            if self.label[u as usize] != NONE || self.label[v as usize] != NONE {
                continue;
            }
            for (x, y) in [(u, v), (v, u)] {
                let flow = self.try_child(x, a, k, |s| s.try_child(y, b, k, |s| s.edge_label_dfs(k - 1, skips_left)));
                if !matches!(flow, Flow::Continue) {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn node_order_dfs(&mut self, idx: usize) -> Flow {
        if !self.tick() {
            return Flow::Abort;
        }
        let prob = self.prob;
        let Some(&v) = prob.order.get(idx) else {
            return if self.edges_done == prob.q { self.complete() } else { Flow::Continue };
        };
        if self.label[v as usize] != NONE {
            return self.node_order_dfs(idx + 1);
        }
        for l in 0..=prob.top as u32 {
            if self.node_at[l as usize] != NONE {
                continue;
            }
            let flow = self.try_child(v, l, prob.top, |s| s.node_order_dfs(idx + 1));
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }

    fn run_branch(&mut self, branch: &Branch) -> Flow {
        let mut marks = Vec::new();
        for &(v, l) in &branch.assign {
            match self.assign(v, l, self.prob.top) {
                Some(m) => marks.push((v, m)),
                None => {
                    for (v, m) in marks.into_iter().rev() {
                        self.unassign(v, m);
                    }
                    return Flow::Continue;
                }
            }
        }
        let flow = match self.prob.strategy {
            Strategy::EdgeLabel => {
                if self.edges_done == self.prob.q {
                    self.complete()
                } else {
                    self.edge_label_dfs(branch.next_k, self.prob.slack - branch.skips_used)
                }
            }
            Strategy::NodeOrder => self.node_order_dfs(0),
        };
        for (v, m) in marks.into_iter().rev() {
            self.unassign(v, m);
        }
        flow
    }
}

struct RunResult {
    found: Vec<Vec<u32>>,
    expanded: u64,
    exceeded: bool,
}

fn run(prob: &Problem, decision: bool, budget: Option<u64>, workers: usize) -> RunResult {
    let shared = Shared {
        expanded: AtomicU64::new(0),
        budget,
        exceeded: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
    };
    if prob.adj.len() > prob.top + 1 {
        return RunResult { found: Vec::new(), expanded: 0, exceeded: false };
    }
    let branches = prob.branches();
    let solve_one = |i: usize, b: &Branch| -> (Vec<Vec<u32>>, bool) {
        let mut st = State::new(prob, &shared, i, decision);
        let flow = st.run_branch(b);
        st.flush();
        if decision && !st.found.is_empty() {
            shared.best_branch.fetch_min(i, Ordering::Relaxed);
        }
        (st.found, matches!(flow, Flow::Abort))
    };

    let per_branch: Vec<(Vec<Vec<u32>>, bool)> = if workers <= 1 {
        let mut out = Vec::new();
        for (i, b) in branches.iter().enumerate() {
            let r = solve_one(i, b);
            let stop = r.1 || (decision && !r.0.is_empty());
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("worker pool");
        pool.install(|| branches.par_iter().enumerate().map(|(i, b)| solve_one(i, b)).collect())
    };

    let mut found = Vec::new();
    let mut exceeded = false;
    for (labels, aborted) in per_branch {
        if decision && !labels.is_empty() {
            found = labels;
            break;
        }
        // an aborted branch before the first witness leaves the answer open;
        // in parallel mode later branches may also stop after a witness appears
        if aborted && shared.exceeded.load(Ordering::Relaxed) {
            exceeded = true;
            break;
        }
        found.extend(labels);
    }
    if exceeded {
        found.clear();
    }
    RunResult { found, expanded: shared.expanded.load(Ordering::Relaxed), exceeded }
}

/// Assigns the free labels to isolated nodes (all ways, or just the first).
fn fill_isolated(raw: &[u32], top: usize, isolated: &[u32], all: bool) -> Vec<Vec<usize>> {
    let mut base: Vec<usize> = raw.iter().map(|&x| x as usize).collect();
    if isolated.is_empty() {
        return vec![base];
    }
    let mut free: Vec<bool> = vec![true; top + 1];
    for &x in raw.iter().filter(|&&x| x != NONE) {
        free[x as usize] = false;
    }
    let mut out = Vec::new();
    fn rec(i: usize, iso: &[u32], free: &mut [bool], cur: &mut Vec<usize>, all: bool, out: &mut Vec<Vec<usize>>) {
        if i == iso.len() {
            out.push(cur.clone());
            return;
        }
        for l in 0..free.len() {
            if free[l] {
                free[l] = false;
                cur[iso[i] as usize] = l;
                rec(i + 1, iso, free, cur, all, out);
                free[l] = true;
                if !all && !out.is_empty() {
                    return;
                }
            }
        }
    }
    rec(0, isolated, &mut free, &mut base, all, &mut out);
    out
}

fn to_witness(g: &Graph, raw: &[u32], prob: &Problem) -> Labeling {
    let labels = fill_isolated(raw, prob.top, &prob.isolated, false).remove(0);
    let low = labels.iter().copied().min().unwrap_or(0);
    let l = Labeling::new(labels.into_iter().map(|x| x - low).collect()).expect("search labels are distinct");
    let eval = evaluate_labeling(g, &l).expect("witness covers every node");
    assert!(eval.distinct_edges, "search produced repeated edge labels");
    l
}

fn shortcut_applies(g: &Graph, cfg: &SearchConfig) -> bool {
    cfg.rosa_golomb_shortcut && rosa_golomb(g) == RosaGolomb::CertifiedNongraceful
}

/// Decides gracefulness exactly, within the node-expansion budget.
pub fn solve_graceful(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let q = g.q();
    if q == 0 {
        return Err(SearchError::NoEdges);
    }
    let start = Instant::now();
    let outcome = |verdict, witness, nodes_expanded| SearchOutcome {
        verdict,
        opt: (verdict == Verdict::Graceful).then_some(q),
        opt_lower_bound: if verdict == Verdict::BudgetExceeded { q } else { q + (verdict != Verdict::Graceful) as usize },
        witness,
        nodes_expanded,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if shortcut_applies(g, cfg) {
        return Ok(outcome(Verdict::NongracefulRosaGolomb, None, 0));
    }
    let prob = Problem::new(g, q, cfg.strategy);
    let r = run(&prob, true, cfg.budget, cfg.workers);
    Ok(match r.found.first() {
        Some(raw) => {
            let w = to_witness(g, raw, &prob);
            assert!(evaluate_labeling(g, &w).expect("full labeling").graceful, "witness must be graceful");
            outcome(Verdict::Graceful, Some(w), r.expanded)
        }
        None if r.exceeded => outcome(Verdict::BudgetExceeded, None, r.expanded),
        None => outcome(Verdict::NongracefulExhausted, None, r.expanded),
    })
}

/// Smallest `M` such that some injective labeling into `0..=M` gives
/// distinct edge labels, with a witness using both `0` and `M`.
pub fn optimal_labeling(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let q = g.q();
    if q == 0 {
        return Err(SearchError::NoEdges);
    }
    let start = Instant::now();
    let mut expanded = 0u64;
    let mut used_shortcut = false;
    let mut top = q.max(g.p() - 1);
    loop {
        if top == q && shortcut_applies(g, cfg) {
            used_shortcut = true;
            top += 1;
            continue;
        }
        let budget = cfg.budget.map(|b| b.saturating_sub(expanded));
        let prob = Problem::new(g, top, cfg.strategy);
        let r = run(&prob, true, budget, cfg.workers);
        expanded += r.expanded;
        if let Some(raw) = r.found.first() {
            let w = to_witness(g, raw, &prob);
            debug_assert_eq!(w.max_label(), top);
            let verdict = if top == q {
                Verdict::Graceful
            } else if used_shortcut {
                Verdict::NongracefulRosaGolomb
            } else {
                Verdict::NongracefulExhausted
            };
            return Ok(SearchOutcome {
                verdict,
                witness: Some(w),
                opt: Some(top),
                opt_lower_bound: top,
                nodes_expanded: expanded,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        if r.exceeded {
            return Ok(SearchOutcome {
                verdict: Verdict::BudgetExceeded,
                witness: None,
                opt: None,
                opt_lower_bound: top,
                nodes_expanded: expanded,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        top += 1;
    }
}

/// Every graceful labeling, optionally one per complementary pair.
pub fn enumerate_graceful(
    g: &Graph,
    mode: EnumerationMode,
    cfg: &SearchConfig,
) -> Result<GracefulEnumeration, SearchError> {
    let q = g.q();
    if q == 0 {
        return Err(SearchError::NoEdges);
    }
    if q > ENUMERATION_Q_CAP {
        return Err(SearchError::TooLarge { q, cap: ENUMERATION_Q_CAP });
    }
    let mut labelings = Vec::new();
    let mut nodes_expanded = 0;
    if !shortcut_applies(g, cfg) {
        let prob = Problem::new(g, q, cfg.strategy);
        let r = run(&prob, false, cfg.budget, cfg.workers);
        if r.exceeded {
            return Err(SearchError::BudgetExceeded { nodes_expanded: r.expanded });
        }
        nodes_expanded = r.expanded;
        for raw in &r.found {
            for labels in fill_isolated(raw, q, &prob.isolated, true) {
                labelings.push(Labeling::new(labels).expect("distinct labels"));
            }
        }
    }
    if mode == EnumerationMode::Raw {
        let complements: Vec<Labeling> = labelings.iter().map(|l| l.complement(q)).collect();
        labelings.extend(complements);
    }
    labelings.sort();
    let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for l in &labelings {
        let mut present = vec![false; q + 1];
        for &x in l.labels() {
            present[x] = true;
        }
        let missing: Vec<usize> = (0..=q).filter(|&x| !present[x]).collect();
        *classes.entry(missing).or_default() += 1;
    }
    Ok(GracefulEnumeration { mode, labelings, by_missing_node_labels: classes.into_iter().collect(), nodes_expanded })
}

pub fn attract_spectrum(g: &Graph, cfg: &SearchConfig) -> Result<AttractSpectrum, SearchError> {
    let all = enumerate_graceful(g, EnumerationMode::Raw, cfg)?;
    let mut node_labels = vec![Vec::new(); g.p()];
    let mut edge_labels = vec![Vec::new(); g.q()];
    for l in &all.labelings {
        for u in g.nodes() {
            node_labels[u].push(l.get(u));
        }
        for (e, d) in l.edge_labels(g).into_iter().enumerate() {
            edge_labels[e].push(d);
        }
    }
    for v in node_labels.iter_mut().chain(edge_labels.iter_mut()) {
        v.sort_unstable();
        v.dedup();
    }
    Ok(AttractSpectrum { graceful: !all.labelings.is_empty(), labelings: all.labelings.len(), node_labels, edge_labels })
}
