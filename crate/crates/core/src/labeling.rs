//! Node labelings, their induced edge labels, and the graceful check.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::simple_cycles;
use crate::graph::{Graph, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labeling covers {found} nodes but the graph has {expected}")]
    WrongLength { found: usize, expected: usize },
    #[error("label {label} is used by nodes {first} and {second}")]
    NotInjective { label: usize, first: Node, second: Node },
    #[error("negative label {label} at node {node}")]
    Negative { label: i64, node: Node },
    #[error("labeling is not graceful")]
    NotGraceful,
    #[error("edge labels are not distinct")]
    RepeatedEdgeLabels,
}

/// An injective assignment of non-negative integers to nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<usize>")]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self, LabelingError> {
        let mut seen: Vec<(usize, Node)> = labels.iter().copied().zip(0..).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(LabelingError::NotInjective { label: w[0].0, first: w[0].1, second: w[1].1 });
        }
        Ok(Labeling(labels))
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, u: Node) -> usize {
        self.0[u]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_label(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `|φ(u) - φ(v)|` for every edge, in `Graph::edges` order.
    pub fn edge_labels(&self, g: &Graph) -> Vec<usize> {
        g.edges().iter().map(|&(u, v)| self.0[u].abs_diff(self.0[v])).collect()
    }

    /// `ψ(v) = top - φ(v)`.
    pub fn complement(&self, top: usize) -> Labeling {
        Labeling(self.0.iter().map(|&x| top - x).collect())
    }
}

impl TryFrom<Vec<i64>> for Labeling {
    type Error = LabelingError;

    fn try_from(raw: Vec<i64>) -> Result<Self, Self::Error> {
        let labels = raw
            .iter()
            .enumerate()
            .map(|(node, &label)| usize::try_from(label).map_err(|_| LabelingError::Negative { label, node }))
            .collect::<Result<Vec<_>, _>>()?;
        Labeling::new(labels)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Self {
        l.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub max_label: usize,
    pub edge_labels: Vec<usize>,
    pub distinct_edges: bool,
    pub graceful: bool,
    /// Unused labels in `0..=max_label`.
    pub missing_node_labels: Vec<usize>,
    /// Values of `1..=max_label` not realised by any edge.
    pub missing_edge_labels: Vec<usize>,
}

pub fn evaluate_labeling(g: &Graph, l: &Labeling) -> Result<Evaluation, LabelingError> {
    if l.len() != g.p() {
        return Err(LabelingError::WrongLength { found: l.len(), expected: g.p() });
    }
    let max_label = l.max_label();
    let edge_labels = l.edge_labels(g);
    let edge_set: BTreeSet<usize> = edge_labels.iter().copied().collect();
    let distinct_edges = edge_set.len() == edge_labels.len();
    let node_set: BTreeSet<usize> = l.labels().iter().copied().collect();
    let missing_node_labels = (0..=max_label).filter(|x| !node_set.contains(x)).collect();
    let missing_edge_labels = (1..=max_label).filter(|x| !edge_set.contains(x)).collect();
    let q = g.q();
    let graceful = distinct_edges && max_label == q && edge_set.iter().copied().eq(1..=q);
    Ok(Evaluation { max_label, edge_labels, distinct_edges, graceful, missing_node_labels, missing_edge_labels })
}

pub fn is_graceful_labeling(g: &Graph, l: &Labeling) -> bool {
    evaluate_labeling(g, l).is_ok_and(|e| e.graceful)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolombParity {
    pub holds: bool,
    pub cycles_checked: usize,
    /// Only the first `cap` cycles were examined.
    pub truncated: bool,
    pub odd_cycle: Option<Vec<Node>>,
}

/// Edge-label sums along every simple cycle are even.
pub fn golomb_parity_check(g: &Graph, l: &Labeling, cap: usize) -> Result<GolombParity, LabelingError> {
    if !evaluate_labeling(g, l)?.distinct_edges {
        return Err(LabelingError::RepeatedEdgeLabels);
    }
    let catalog = simple_cycles(g, cap);
    let odd_cycle = catalog
        .cycles
        .iter()
        .find(|c| (0..c.len()).map(|i| l.get(c[i]).abs_diff(l.get(c[(i + 1) % c.len()]))).sum::<usize>() % 2 == 1)
        .cloned();
    Ok(GolombParity {
        holds: odd_cycle.is_none(),
        cycles_checked: catalog.cycles.len(),
        truncated: catalog.truncated,
        odd_cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn triangle() {
        let e = evaluate_labeling(&cycle(3), &Labeling::new(vec![0, 1, 3]).unwrap()).unwrap();
        assert!(e.graceful && e.distinct_edges);
        assert_eq!(e.missing_node_labels, vec![2]);
        assert!(e.missing_edge_labels.is_empty());
        let mut el = e.edge_labels.clone();
        el.sort();
        assert_eq!(el, vec![1, 2, 3]);
    }

    #[test]
    fn pentagon_consecutive_labels() {
        let e = evaluate_labeling(&cycle(5), &Labeling::new(vec![0, 1, 2, 3, 4]).unwrap()).unwrap();
        let mut el = e.edge_labels.clone();
        el.sort();
        assert_eq!(el, vec![1, 1, 1, 1, 4]);
        assert!(!e.distinct_edges && !e.graceful);
        assert_eq!(e.missing_edge_labels, vec![2, 3]);
    }

    #[test]
    fn path_uses_every_label() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let e = evaluate_labeling(&p4, &Labeling::new(vec![0, 3, 1, 2]).unwrap()).unwrap();
        assert!(e.graceful);
        assert!(e.missing_node_labels.is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(
            Labeling::new(vec![0, 2, 2]),
            Err(LabelingError::NotInjective { label: 2, first: 1, second: 2 })
        );
        assert_eq!(Labeling::try_from(vec![0, -1]), Err(LabelingError::Negative { label: -1, node: 1 }));
        let l = Labeling::new(vec![0, 1]).unwrap();
        assert_eq!(evaluate_labeling(&cycle(3), &l), Err(LabelingError::WrongLength { found: 2, expected: 3 }));
        let parsed: Result<Labeling, _> = serde_json::from_str("[0, 3, -2]");
        assert!(parsed.is_err());
    }

    #[test]
    fn golomb_parity_examples() {
        let k3 = cycle(3);
        let r = golomb_parity_check(&k3, &Labeling::new(vec![0, 1, 3]).unwrap(), 100).unwrap();
        assert!(r.holds && r.cycles_checked == 1);
        let r = golomb_parity_check(&cycle(4), &Labeling::new(vec![0, 4, 1, 2]).unwrap(), 100).unwrap();
        assert!(r.holds);
        let bad = golomb_parity_check(&cycle(5), &Labeling::new(vec![0, 1, 2, 3, 4]).unwrap(), 100);
        assert_eq!(bad, Err(LabelingError::RepeatedEdgeLabels));
    }

    #[test]
    fn complement_of_triangle() {
        let l = Labeling::new(vec![0, 1, 3]).unwrap();
        assert_eq!(l.complement(3).labels(), &[3, 2, 0]);
        assert!(is_graceful_labeling(&cycle(3), &l.complement(3)));
    }
}
