//! Graceful-preserving constructions and graceful embeddings.
//!
//! Every emitted [`ConstructionRecord`] is re-checked with
//! [`evaluate_labeling`]; the constructions never vouch for themselves.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_key;
use crate::graph::{Graph, GraphError, Node};
use crate::graph6;
use crate::labeling::{evaluate_labeling, Labeling, LabelingError};
use crate::search::{
    enumerate_graceful, optimal_labeling, solve_graceful, EnumerationMode, SearchConfig, SearchError, Verdict,
};

/// Largest tree accepted by [`tree_plus_edge_survey`].
pub const SURVEY_ORDER_CAP: usize = 9;
/// Largest input accepted by [`optimal_graceful_embedding`].
pub const OPTIMAL_EMBEDDING_ORDER_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("labeling is not graceful for this graph")]
    NotGraceful,
    #[error("invalid caterpillar: {0}")]
    InvalidCaterpillar(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("budget exhausted; optimal order is at least {lower_bound}")]
    BudgetExceeded { lower_bound: usize },
    #[error("construction output failed verification")]
    VerificationFailed,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub construction: String,
    #[serde(with = "graph6::as_string")]
    pub input: Graph,
    pub input_labeling: Option<Labeling>,
    #[serde(with = "graph6::as_string")]
    pub output: Graph,
    pub output_labeling: Labeling,
    /// Output node of every input node.
    pub embedding: Vec<Node>,
    pub verified: bool,
}

fn record(
    construction: &str,
    input: &Graph,
    input_labeling: Option<Labeling>,
    output: Graph,
    output_labeling: Labeling,
    embedding: Vec<Node>,
) -> Result<ConstructionRecord, ConstructError> {
    let verified = evaluate_labeling(&output, &output_labeling)?.graceful;
    if !verified {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(ConstructionRecord {
        construction: construction.to_string(),
        input: input.clone(),
        input_labeling,
        output,
        output_labeling,
        embedding,
        verified,
    })
}

fn require_graceful(g: &Graph, l: &Labeling) -> Result<(), ConstructError> {
    if evaluate_labeling(g, l)?.graceful {
        Ok(())
    } else {
        Err(ConstructError::NotGraceful)
    }
}

/// `ψ(v) = q − φ(v)`.
pub fn complement_labeling(g: &Graph, l: &Labeling) -> Result<Labeling, ConstructError> {
    require_graceful(g, l)?;
    Ok(l.complement(g.q()))
}

/// Hangs `k` pendant nodes labelled `q+1..=q+k` on the node labelled 0.
pub fn attach_star_at_zero(g: &Graph, l: &Labeling, k: usize) -> Result<ConstructionRecord, ConstructError> {
    require_graceful(g, l)?;
    if k == 0 {
        return record("attach_star_at_zero", g, Some(l.clone()), g.clone(), l.clone(), g.nodes().collect());
    }
    let (h, hl) = star_step(g, l, k);
    record("attach_star_at_zero", g, Some(l.clone()), h, hl, g.nodes().collect())
}

fn star_step(g: &Graph, l: &Labeling, k: usize) -> (Graph, Labeling) {
    let zero = g.nodes().find(|&u| l.get(u) == 0).expect("graceful labelings use 0");
    let (p, q) = (g.p(), g.q());
    let edges: Vec<(Node, Node)> = (0..k).map(|j| (zero, p + j)).collect();
    let h = g.extended(k, &edges).expect("new pendant nodes");
    let mut labels = l.labels().to_vec();
    labels.extend((1..=k).map(|j| q + j));
    (h, Labeling::new(labels).expect("new labels exceed q"))
}

/// Plants a caterpillar at the node labelled 0. `spine_leaves[0]` is the
/// number of leaves on the planting node itself; each further entry adds a
/// spine node carrying that many leaves.
///
/// Each step hangs a star on the current 0-node whose newest node is the
/// next spine node, then complements so that node becomes the new 0-node.
pub fn plant_caterpillar_graceful(
    g: &Graph,
    l: &Labeling,
    spine_leaves: &[usize],
) -> Result<ConstructionRecord, ConstructError> {
    require_graceful(g, l)?;
    if spine_leaves.is_empty() {
        return Err(ConstructError::InvalidCaterpillar("spine must contain the planting node".into()));
    }
    let (mut h, mut hl) = (g.clone(), l.clone());
    for (i, &leaves) in spine_leaves.iter().enumerate() {
        let more = i + 1 < spine_leaves.len();
        let k = leaves + more as usize;
        if k > 0 {
            (h, hl) = star_step(&h, &hl, k);
        }
        if more {
            hl = hl.complement(h.q());
        }
    }
    record("plant_caterpillar", g, Some(l.clone()), h, hl, g.nodes().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub labeling: Labeling,
    pub u: Node,
    pub v: Node,
    /// Canonical graph6 of `T + uv`.
    pub graph6: String,
    pub verdict: Verdict,
    /// `φ'(u) = 0` and `φ'(v) = p − 1`.
    pub tree_corollary_case: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreePlusEdgeSurvey {
    #[serde(with = "graph6::as_string")]
    pub tree: Graph,
    pub labelings: usize,
    pub entries: Vec<SurveyEntry>,
    /// Distinct unicyclic graphs reached, by canonical graph6.
    pub unicyclic_graphs: usize,
    /// Unicyclic graphs reached that are not graceful: counterexamples to
    /// the literal Unicyclic Corollary.
    pub nongraceful: Vec<String>,
    pub inconclusive: Vec<String>,
    pub tree_corollary_pairs: usize,
}

/// For every graceful labeling of `t` and every non-edge `uv`, decides
/// whether `t + uv` is graceful.
pub fn tree_plus_edge_survey(t: &Graph, cfg: &SearchConfig) -> Result<TreePlusEdgeSurvey, ConstructError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    if t.p() > SURVEY_ORDER_CAP {
        return Err(ConstructError::TooLarge { order: t.p(), cap: SURVEY_ORDER_CAP });
    }
    let all = enumerate_graceful(t, EnumerationMode::Raw, cfg)?;
    let mut verdicts: BTreeMap<String, Verdict> = BTreeMap::new();
    let mut entries = Vec::new();
    for (u, v) in t.nodes().flat_map(|u| (u + 1..t.p()).map(move |v| (u, v))) {
        if t.has_edge(u, v) {
            continue;
        }
        let h = t.extended(0, &[(u, v)])?;
        let key = canonical_key(&h);
        let verdict = match verdicts.get(&key) {
            Some(&v) => v,
            None => {
                let v = solve_graceful(&h, cfg)?.verdict;
                verdicts.insert(key.clone(), v);
                v
            }
        };
        for l in &all.labelings {
            let (a, b) = (l.get(u), l.get(v));
            entries.push(SurveyEntry {
                labeling: l.clone(),
                u,
                v,
                graph6: key.clone(),
                verdict,
                tree_corollary_case: a.min(b) == 0 && a.max(b) == t.p() - 1,
            });
        }
    }
    let pick = |want: fn(Verdict) -> bool| verdicts.iter().filter(|(_, &v)| want(v)).map(|(k, _)| k.clone()).collect();
    Ok(TreePlusEdgeSurvey {
        tree: t.clone(),
        labelings: all.labelings.len(),
        tree_corollary_pairs: entries.iter().filter(|e| e.tree_corollary_case).count(),
        entries,
        unicyclic_graphs: verdicts.len(),
        nongraceful: pick(|v| v.is_graceful() == Some(false)),
        inconclusive: pick(|v| v == Verdict::BudgetExceeded),
    })
}

/// `g` maps onto an induced subgraph of `h` through `map`.
pub fn is_induced_embedding(g: &Graph, h: &Graph, map: &[Node]) -> bool {
    let image: BTreeSet<Node> = map.iter().copied().collect();
    if map.len() != g.p() || image.len() != g.p() || map.iter().any(|&x| x >= h.p()) {
        return false;
    }
    g.nodes().all(|u| (u + 1..g.p()).all(|v| g.has_edge(u, v) == h.has_edge(map[u], map[v])))
}

/// Embeds `g` as an induced subgraph of a graceful graph.
///
/// Starting from an optimal labeling with maximum `M` and missing edge
/// labels `D`, new nodes `x_1..x_t` get labels `M+1..M+t` and are joined
/// to the 0-node (edge labels `M+j`). Each `d ∈ D` is realised by an edge
/// from the lowest `x_j` that has a partner labelled `M+j−d`, either an
/// input node other than the 0-node or an earlier new node.
pub fn embed_graceful_induced(g: &Graph, cfg: &SearchConfig) -> Result<ConstructionRecord, ConstructError> {
    let opt = optimal_labeling(g, cfg)?;
    let Some(base) = opt.witness else {
        return Err(ConstructError::BudgetExceeded { lower_bound: g.p() });
    };
    let m = base.max_label();
    let eval = evaluate_labeling(g, &base)?;
    if eval.graceful {
        return record("embed_induced", g, Some(base.clone()), g.clone(), base, g.nodes().collect());
    }
    let node_of: BTreeMap<usize, Node> = g.nodes().map(|u| (base.get(u), u)).collect();
    let zero = node_of[&0];
    let mut plan: Vec<(usize, usize)> = Vec::new(); // (j, partner label)
    for &d in &eval.missing_edge_labels {
        let j = (1..=d + 1)
            .find(|&j| {
                let target = m + j - d;
                (target != 0 && node_of.contains_key(&target)) || (target > m && target < m + j)
            })
            .expect("j = d reaches the node labelled M");
        plan.push((j, m + j - d));
    }
    let t = plan.iter().map(|&(j, _)| j).max().unwrap_or(0);
    let p = g.p();
    let label_node = |x: usize| if x > m { p + x - m - 1 } else { node_of[&x] };
    let mut edges: Vec<(Node, Node)> = (0..t).map(|j| (zero, p + j)).collect();
    edges.extend(plan.iter().map(|&(j, partner)| (p + j - 1, label_node(partner))));
    let h = g.extended(t, &edges)?;
    let mut labels = base.labels().to_vec();
    labels.extend((1..=t).map(|j| m + j));
    let out = record("embed_induced", g, Some(base), h, Labeling::new(labels)?, g.nodes().collect())?;
    debug_assert!(is_induced_embedding(g, &out.output, &out.embedding));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalEmbedding {
    pub record: ConstructionRecord,
    pub optimal_order: usize,
    pub host_connected: bool,
    /// Some graceful host of the optimal order is disconnected.
    pub disconnected_host_exists: bool,
    pub nodes_expanded: u64,
}

struct HostSearch<'a> {
    g: &'a Graph,
    top: usize,
    t: usize,
    budget: Option<u64>,
    expanded: u64,
    label: Vec<usize>,
    used_node: Vec<bool>,
    used_edge: Vec<bool>,
    /// First feasible (old labels, new labels) and whether any feasible
    /// configuration admits a disconnected host.
    found: Option<(Vec<usize>, Vec<usize>)>,
    disconnected: bool,
    exceeded: bool,
}

impl HostSearch<'_> {
    fn dfs(&mut self, u: Node) {
        if self.exceeded || (self.found.is_some() && self.disconnected) {
            return;
        }
        self.expanded += 1;
        if self.budget.is_some_and(|b| self.expanded > b) {
            self.exceeded = true;
            return;
        }
        if u == self.g.p() {
            self.choose_new(0, &mut Vec::new());
            return;
        }
        for x in 0..=self.top {
            if self.used_node[x] {
                continue;
            }
            let diffs: Vec<usize> =
                self.g.neighbors(u).iter().filter(|&&w| w < u).map(|&w| x.abs_diff(self.label[w])).collect();
            let mut seen = BTreeSet::new();
            if diffs.iter().any(|&d| self.used_edge[d] || !seen.insert(d)) {
                continue;
            }
            for &d in &diffs {
                self.used_edge[d] = true;
            }
            self.used_node[x] = true;
            self.label[u] = x;
            self.dfs(u + 1);
            self.used_node[x] = false;
            for &d in &diffs {
                self.used_edge[d] = false;
            }
        }
    }

    fn choose_new(&mut self, from: usize, chosen: &mut Vec<usize>) {
        if self.exceeded || (self.found.is_some() && self.disconnected) {
            return;
        }
        if chosen.len() == self.t {
            self.expanded += 1;
            if self.budget.is_some_and(|b| self.expanded > b) {
                self.exceeded = true;
                return;
            }
            self.check(chosen);
            return;
        }
        for x in from..=self.top {
            if !self.used_node[x] {
                chosen.push(x);
                self.choose_new(x + 1, chosen);
                chosen.pop();
            }
        }
    }

    /// Every missing edge label needs a pair with a new endpoint; with a
    /// subset `S` of new nodes cut off, the pair must lie inside `S` or
    /// avoid it entirely.
    fn check(&mut self, new: &[usize]) {
        let missing: Vec<usize> = (1..=self.top).filter(|&d| !self.used_edge[d]).collect();
        let old = &self.label;
        // pairs as (first, second) label with at least one new endpoint,
        // new endpoints given by index into `new`
        let covers = |d: usize, allowed: &dyn Fn(Option<usize>, Option<usize>) -> bool| -> bool {
            new.iter().enumerate().any(|(i, &x)| {
                old.iter().any(|&y| x.abs_diff(y) == d && allowed(Some(i), None))
                    || new.iter().enumerate().any(|(k, &y)| k > i && x.abs_diff(y) == d && allowed(Some(i), Some(k)))
            })
        };
        if !missing.iter().all(|&d| covers(d, &|_, _| true)) {
            return;
        }
        if self.found.is_none() {
            self.found = Some((old.clone(), new.to_vec()));
        }
        if self.g.is_connected() && !self.disconnected {
            for mask in 1u32..(1 << self.t) {
                let inside = |i: usize| mask >> i & 1 == 1;
                let ok = missing.iter().all(|&d| {
                    covers(d, &|a, b| match (a, b) {
                        (Some(i), None) => !inside(i),
                        (Some(i), Some(k)) => inside(i) == inside(k),
                        _ => false,
                    })
                });
                if ok {
                    self.disconnected = true;
                    break;
                }
            }
        }
    }
}

/// A graceful host of minimum order containing `g` as an induced subgraph.
///
/// Host orders are tried upwards from `p`. For a fixed number `t` of new
/// nodes and host size `Q`, a host exists iff some labeling of `g` into
/// `0..=Q` with distinct edge labels and some labels for the new nodes let
/// every missing edge label be realised by a pair with a new endpoint.
pub fn optimal_graceful_embedding(g: &Graph, cfg: &SearchConfig) -> Result<OptimalEmbedding, ConstructError> {
    if g.p() > OPTIMAL_EMBEDDING_ORDER_CAP {
        return Err(ConstructError::TooLarge { order: g.p(), cap: OPTIMAL_EMBEDDING_ORDER_CAP });
    }
    let upper = embed_graceful_induced(g, cfg)?;
    let t_upper = upper.output.p() - g.p();
    let (p, q) = (g.p(), g.q());
    let mut expanded = 0u64;
    for t in 1..=t_upper {
        for top in q.max(p + t - 1)..=q + t * p + t * (t - 1) / 2 {
            let mut s = HostSearch {
                g,
                top,
                t,
                budget: cfg.budget.map(|b| b.saturating_sub(expanded)),
                expanded: 0,
                label: vec![0; p],
                used_node: vec![false; top + 1],
                used_edge: vec![false; top + 1],
                found: None,
                disconnected: false,
                exceeded: false,
            };
            s.dfs(0);
            expanded += s.expanded;
            if s.exceeded {
                return Err(ConstructError::BudgetExceeded { lower_bound: p + t });
            }
            if let Some((old, new)) = s.found {
                let rec = build_host(g, &old, &new, top)?;
                // other host sizes with the same t may admit a disconnected host
                let disconnected = s.disconnected || disconnected_at_other_sizes(g, t, top, cfg, &mut expanded)?;
                return Ok(OptimalEmbedding {
                    host_connected: rec.output.is_connected(),
                    optimal_order: p + t,
                    record: rec,
                    disconnected_host_exists: disconnected,
                    nodes_expanded: expanded,
                });
            }
        }
    }
    Ok(OptimalEmbedding {
        host_connected: upper.output.is_connected(),
        optimal_order: upper.output.p(),
        disconnected_host_exists: false,
        record: upper,
        nodes_expanded: expanded,
    })
}

fn disconnected_at_other_sizes(
    g: &Graph,
    t: usize,
    found_top: usize,
    cfg: &SearchConfig,
    expanded: &mut u64,
) -> Result<bool, ConstructError> {
    if !g.is_connected() {
        return Ok(false);
    }
    let (p, q) = (g.p(), g.q());
    for top in found_top + 1..=q + t * p + t * (t - 1) / 2 {
        let mut s = HostSearch {
            g,
            top,
            t,
            budget: cfg.budget.map(|b| b.saturating_sub(*expanded)),
            expanded: 0,
            label: vec![0; p],
            used_node: vec![false; top + 1],
            used_edge: vec![false; top + 1],
            found: None,
            disconnected: false,
            exceeded: false,
        };
        s.dfs(0);
        *expanded += s.expanded;
        if s.exceeded {
            return Err(ConstructError::BudgetExceeded { lower_bound: p + t });
        }
        if s.disconnected {
            return Ok(true);
        }
    }
    Ok(false)
}

fn build_host(g: &Graph, old: &[usize], new: &[usize], top: usize) -> Result<ConstructionRecord, ConstructError> {
    let p = g.p();
    let mut node_of: BTreeMap<usize, Node> = old.iter().enumerate().map(|(u, &x)| (x, u)).collect();
    node_of.extend(new.iter().enumerate().map(|(i, &x)| (x, p + i)));
    let used: BTreeSet<usize> = g.edges().iter().map(|&(u, v)| old[u].abs_diff(old[v])).collect();
    let mut edges = Vec::new();
    for d in (1..=top).filter(|d| !used.contains(d)) {
        let pair = new
            .iter()
            .flat_map(|&x| [x.checked_sub(d), x.checked_add(d)].into_iter().flatten().map(move |y| (x, y)))
            .find(|&(_, y)| y <= top && node_of.contains_key(&y))
            .expect("feasible configuration covers every label");
        edges.push((node_of[&pair.0], node_of[&pair.1]));
    }
    let h = g.extended(new.len(), &edges)?;
    let mut labels = old.to_vec();
    labels.extend_from_slice(new);
    let base = Labeling::new(old.to_vec())?;
    record("optimal_embedding", g, Some(base), h, Labeling::new(labels)?, g.nodes().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Closure {
    #[serde(with = "graph6::as_string")]
    pub graph: Graph,
    pub added_nodes: usize,
    pub added_edges: usize,
}

/// Adds at most two nodes to make a connected bipartite graph Euler,
/// following the case analysis of Theorem 20.
pub fn euler_bipartite_closure(g: &Graph) -> Result<Closure, ConstructError> {
    let Some((a, b)) = g.bipartition() else {
        return Err(ConstructError::NotBipartite);
    };
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if g.is_euler() {
        return Ok(Closure { graph: g.clone(), added_nodes: 0, added_edges: 0 });
    }
    let odd = |side: &[Node]| -> Vec<Node> { side.iter().copied().filter(|&u| g.degree(u) % 2 == 1).collect() };
    let (odd_a, odd_b) = (odd(&a), odd(&b));
    let p = g.p();
    let mut edges = Vec::new();
    let added_nodes = if odd_a.is_empty() || odd_b.is_empty() {
        edges.extend(odd_a.iter().chain(&odd_b).map(|&u| (u, p)));
        1
    } else {
        // p joins side A (adjacent to odd nodes of B), p + 1 joins side B
        edges.extend(odd_b.iter().map(|&u| (u, p)));
        edges.extend(odd_a.iter().map(|&u| (u, p + 1)));
        if odd_a.len() % 2 == 1 {
            edges.push((p, p + 1));
        }
        2
    };
    let h = g.extended(added_nodes, &edges)?;
    debug_assert!(h.is_euler() && h.is_bipartite());
    Ok(Closure { graph: h, added_nodes, added_edges: edges.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_graph;
    use crate::families::{complete, cycle, make, path, FamilySpec};

    fn witness(g: &Graph) -> Labeling {
        solve_graceful(g, &SearchConfig::default()).unwrap().witness.unwrap()
    }

    #[test]
    fn complement_examples() {
        let k3 = complete(3);
        let l = Labeling::new(vec![0, 1, 3]).unwrap();
        assert_eq!(complement_labeling(&k3, &l).unwrap().labels(), &[3, 2, 0]);
        let p4 = path(4);
        let l = Labeling::new(vec![0, 3, 1, 2]).unwrap();
        assert_eq!(complement_labeling(&p4, &l).unwrap().labels(), &[3, 0, 2, 1]);
        let bad = Labeling::new(vec![0, 1, 2]).unwrap();
        assert_eq!(complement_labeling(&k3, &bad), Err(ConstructError::NotGraceful));
    }

    #[test]
    fn stars() {
        let k3 = complete(3);
        let r = attach_star_at_zero(&k3, &Labeling::new(vec![0, 1, 3]).unwrap(), 2).unwrap();
        assert_eq!((r.output.p(), r.output.q()), (5, 5));
        assert_eq!(&r.output_labeling.labels()[3..], &[4, 5]);
        let p2 = path(2);
        let r = attach_star_at_zero(&p2, &Labeling::new(vec![0, 1]).unwrap(), 1).unwrap();
        assert!(r.verified && r.output.p() == 3);
        let c4 = cycle(4);
        let r = attach_star_at_zero(&c4, &witness(&c4), 3).unwrap();
        assert_eq!((r.output.p(), r.output.q()), (7, 7));
    }

    #[test]
    fn caterpillars() {
        let k3 = complete(3);
        let l = Labeling::new(vec![0, 1, 3]).unwrap();
        let r = plant_caterpillar_graceful(&k3, &l, &[0, 1, 0]).unwrap();
        assert_eq!((r.output.p(), r.output.q()), (6, 6));
        assert!(r.verified);
        assert_eq!(core_graph(&r.output).graph, k3);
        let same = plant_caterpillar_graceful(&k3, &l, &[0]).unwrap();
        assert_eq!(same.output, k3);
        let c4 = cycle(4);
        let w = witness(&c4);
        assert_eq!(plant_caterpillar_graceful(&c4, &w, &[3]).unwrap().output, attach_star_at_zero(&c4, &w, 3).unwrap().output);
        let long = plant_caterpillar_graceful(&c4, &w, &[2, 0, 3, 1, 0]).unwrap();
        assert_eq!(long.output.p(), 4 + 2 + 4 + 3 + 1);
        assert!(plant_caterpillar_graceful(&c4, &w, &[]).is_err());
    }

    #[test]
    fn survey_of_small_trees() {
        let s = tree_plus_edge_survey(&path(4), &SearchConfig::default()).unwrap();
        assert!(s.nongraceful.is_empty());
        // a graceful labeling of a tree puts 0 and q on adjacent nodes
        assert_eq!(s.tree_corollary_pairs, 0);
        let star = make(&FamilySpec::CompleteBipartite { m: 1, n: 3 }).unwrap();
        let s = tree_plus_edge_survey(&star, &SearchConfig::default()).unwrap();
        assert!(s.nongraceful.is_empty() && s.unicyclic_graphs == 1);
        let s = tree_plus_edge_survey(&path(5), &SearchConfig::default()).unwrap();
        assert_eq!(s.nongraceful, vec![canonical_key(&cycle(5))]);
    }

    #[test]
    fn induced_embeddings() {
        let k3 = complete(3);
        assert_eq!(embed_graceful_induced(&k3, &SearchConfig::default()).unwrap().output, k3);
        for g in [cycle(5), cycle(6), make(&FamilySpec::DutchWindmill { m: 2 }).unwrap(), complete(5)] {
            let r = embed_graceful_induced(&g, &SearchConfig::default()).unwrap();
            assert!(r.verified);
            assert!(is_induced_embedding(&g, &r.output, &r.embedding));
            assert!(evaluate_labeling(&r.output, &r.output_labeling).unwrap().graceful);
        }
    }

    #[test]
    fn optimal_embeddings() {
        let c4 = cycle(4);
        let e = optimal_graceful_embedding(&c4, &SearchConfig::default()).unwrap();
        assert_eq!(e.optimal_order, 4);
        for g in [cycle(5), cycle(6)] {
            let e = optimal_graceful_embedding(&g, &SearchConfig::default()).unwrap();
            assert_eq!(e.optimal_order, g.p() + 1);
            assert!(e.record.verified && is_induced_embedding(&g, &e.record.output, &e.record.embedding));
        }
    }

    #[test]
    fn closures() {
        let c6 = cycle(6);
        assert_eq!(euler_bipartite_closure(&c6).unwrap().graph, c6);
        let c = euler_bipartite_closure(&path(3)).unwrap();
        assert!(c.graph.is_cycle_graph() && c.graph.p() == 4);
        let star = make(&FamilySpec::CompleteBipartite { m: 1, n: 3 }).unwrap();
        let c = euler_bipartite_closure(&star).unwrap();
        assert_eq!((c.graph.p(), c.graph.q()), (6, 8));
        assert!(c.graph.is_euler() && c.graph.is_bipartite());
        assert_eq!(euler_bipartite_closure(&complete(3)), Err(ConstructError::NotBipartite));
    }
}
