//! Immutable simple undirected graphs on dense node ids `0..p`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a node outside 0..{p}")]
    NodeOutOfRange { u: Node, v: Node, p: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Node, Node),
    #[error("node {node} is not in a graph of order {p}")]
    UnknownNode { node: Node, p: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph has pendant nodes")]
    HasPendantNodes,
    #[error("graph order {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
}

/// A simple undirected `(p, q)`-graph.
///
/// Adjacency lists are sorted and the edge list holds each edge once as
/// `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Node>>,
    edges: Vec<(Node, Node)>,
}

impl Graph {
    pub fn new(p: usize, edge_list: &[(Node, Node)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= p || v >= p {
                return Err(GraphError::NodeOutOfRange { u, v, p });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); p];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edges })
    }

    /// Builds a graph from pairs that may repeat; duplicates are merged.
    pub(crate) fn from_pairs_dedup(p: usize, pairs: impl IntoIterator<Item = (Node, Node)>) -> Self {
        let mut edges: Vec<(Node, Node)> = pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::new(p, &edges).expect("pairs are in range and loop-free")
    }

    /// The edgeless graph on `p` nodes.
    pub fn empty(p: usize) -> Self {
        Graph { adj: vec![Vec::new(); p], edges: Vec::new() }
    }

    pub fn p(&self) -> usize {
        self.adj.len()
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn neighbors(&self, u: Node) -> &[Node] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Node) -> usize {
        self.adj[u].len()
    }

    pub fn nodes(&self) -> std::ops::Range<Node> {
        0..self.p()
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        u < self.p() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Node, v: Node) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn check_node(&self, node: Node) -> Result<(), GraphError> {
        if node < self.p() {
            Ok(())
        } else {
            Err(GraphError::UnknownNode { node, p: self.p() })
        }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.nodes().map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    pub fn pendant_nodes(&self) -> Vec<Node> {
        self.nodes().filter(|&u| self.degree(u) == 1).collect()
    }

    /// Component id per node, numbered in order of smallest member.
    pub fn component_ids(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.p()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in self.nodes() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// The empty graph (p = 0) is not considered connected.
    pub fn is_connected(&self) -> bool {
        self.p() > 0 && self.component_ids().0 == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.q() + 1 == self.p()
    }

    /// Side (0 or 1) of every node in a proper 2-colouring, or `None` when an
    /// odd cycle exists. The smallest node of each component gets side 0.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.p()];
        let mut queue = VecDeque::new();
        for s in self.nodes() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn bipartition(&self) -> Option<(Vec<Node>, Vec<Node>)> {
        let side = self.two_colouring()?;
        let (a, b): (Vec<Node>, Vec<Node>) = self.nodes().partition(|&u| side[u] == 0);
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Connected with every degree even.
    /// Connected, all degrees even and at least one edge, so K_3 is the
    /// smallest Euler graph.
    pub fn is_euler(&self) -> bool {
        self.q() > 0 && self.is_connected() && self.nodes().all(|u| self.degree(u) % 2 == 0)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d0 = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d0).then_some(d0)
    }

    /// Connected, 2-regular.
    pub fn is_cycle_graph(&self) -> bool {
        self.p() >= 3 && self.regular_degree() == Some(2) && self.is_connected()
    }

    /// Subgraph induced by `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[Node]) -> Induced {
        let mut pos = vec![usize::MAX; self.p()];
        for (i, &u) in nodes.iter().enumerate() {
            pos[u] = i;
        }
        let edges: Vec<(Node, Node)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        Induced { graph: Graph::new(nodes.len(), &edges).expect("induced edges are valid"), map: nodes.to_vec() }
    }

    /// Subgraph formed by a set of edges, on the nodes they touch (sorted).
    pub fn edge_induced(&self, edge_ids: &[usize]) -> Induced {
        let mut nodes: Vec<Node> = edge_ids.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut pos = vec![usize::MAX; self.p()];
        for (i, &u) in nodes.iter().enumerate() {
            pos[u] = i;
        }
        let edges: Vec<(Node, Node)> = edge_ids.iter().map(|&e| (pos[self.edges[e].0], pos[self.edges[e].1])).collect();
        Induced { graph: Graph::new(nodes.len(), &edges).expect("edge subset is valid"), map: nodes }
    }

    /// Same graph with node `u` renamed to `perm[u]`.
    pub fn relabel(&self, perm: &[Node]) -> Graph {
        let edges: Vec<(Node, Node)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.p(), &edges).expect("relabelling by a permutation")
    }

    /// Copy of the graph with extra nodes and edges appended.
    pub fn extended(&self, extra_nodes: usize, extra_edges: &[(Node, Node)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra_edges);
        Graph::new(self.p() + extra_nodes, &edges)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.p()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.p();
        let extra: Vec<(Node, Node)> = other.edges.iter().map(|&(u, v)| (u + shift, v + shift)).collect();
        self.extended(other.p(), &extra).expect("disjoint union is simple")
    }

    /// Plain text: `p q` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.p(), self.q());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>().map_err(|_| GraphError::EdgeList(format!("not a non-negative integer: {t:?}")))
        });
        let mut next = |what: &str| {
            tokens.next().unwrap_or_else(|| Err(GraphError::EdgeList(format!("missing {what}"))))
        };
        let p = next("node count")?;
        let q = next("edge count")?;
        let mut edges = Vec::with_capacity(q);
        for _ in 0..q {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            edges.push((u, v));
        }
        if tokens.next().is_some() {
            return Err(GraphError::EdgeList(format!("more than {q} edges")));
        }
        Graph::new(p, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(p={}, q={}, {:?})", self.p(), self.q(), self.edges)
    }
}

/// A subgraph together with the original id of each of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub map: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub connected: bool,
    pub bipartition: Option<(Vec<Node>, Vec<Node>)>,
    pub euler: bool,
    pub regular_degree: Option<usize>,
    pub degree_sequence: Vec<usize>,
    pub pendant_nodes: Vec<Node>,
}

pub fn structural_profile(g: &Graph) -> StructuralProfile {
    StructuralProfile {
        connected: g.is_connected(),
        bipartition: g.bipartition(),
        euler: g.is_euler(),
        regular_degree: g.regular_degree(),
        degree_sequence: g.degree_sequence(),
        pendant_nodes: g.pendant_nodes(),
    }
}

/// Recursively strips nodes of degree below two.
///
/// Trees reduce to the empty graph, unicyclic graphs to their cycle.
pub fn core_graph(g: &Graph) -> Induced {
    let mut degree: Vec<usize> = g.nodes().map(|u| g.degree(u)).collect();
    let mut alive = vec![true; g.p()];
    let mut stack: Vec<Node> = g.nodes().filter(|&u| degree[u] < 2).collect();
    while let Some(u) = stack.pop() {
        if !alive[u] {
            continue;
        }
        alive[u] = false;
        for &v in g.neighbors(u) {
            if alive[v] {
                degree[v] -= 1;
                if degree[v] == 1 {
                    stack.push(v);
                }
            }
        }
    }
    let keep: Vec<Node> = g.nodes().filter(|&u| alive[u]).collect();
    g.induced(&keep)
}

/// Identifies node `at` of `g` with node `t_root` of `t`.
///
/// Nodes of `g` keep their ids; the remaining nodes of `t` follow in
/// increasing order of their id in `t`.
pub fn plant(g: &Graph, at: Node, t: &Graph, t_root: Node) -> Result<Graph, GraphError> {
    g.check_node(at)?;
    t.check_node(t_root)?;
    let mut map = vec![0; t.p()];
    let mut next = g.p();
    for u in t.nodes() {
        if u == t_root {
            map[u] = at;
        } else {
            map[u] = next;
            next += 1;
        }
    }
    let extra: Vec<(Node, Node)> = t.edges().iter().map(|&(u, v)| (map[u], map[v])).collect();
    g.extended(t.p() - 1, &extra)
}

/// [`plant`] restricted to trees, as used for graphforests.
pub fn plant_tree(g: &Graph, at: Node, t: &Graph, t_root: Node) -> Result<Graph, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    plant(g, at, t, t_root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn build_triangle_and_empty() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!((g.p(), g.q()), (3, 3));
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let e = Graph::new(4, &[]).unwrap();
        assert_eq!((e.p(), e.q()), (4, 0));
    }

    #[test]
    fn build_errors_name_the_pair() {
        assert_eq!(Graph::new(3, &[(0, 1), (0, 1)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(2, 2)]), Err(GraphError::SelfLoop(2)));
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::NodeOutOfRange { u: 0, v: 3, p: 3 }));
    }

    #[test]
    fn profiles() {
        let k3 = structural_profile(&k(3));
        assert!(k3.euler && k3.bipartition.is_none());
        assert_eq!(k3.regular_degree, Some(2));
        assert!(!structural_profile(&k(4)).euler);

        let mut e = Vec::new();
        for a in 0..2 {
            for b in 2..6 {
                e.push((a, b));
            }
        }
        let k24 = structural_profile(&Graph::new(6, &e).unwrap());
        assert!(k24.euler);
        assert_eq!(k24.bipartition, Some((vec![0, 1], vec![2, 3, 4, 5])));
        assert_eq!(k24.degree_sequence, vec![2, 2, 2, 2, 4, 4]);
        assert_eq!(k24.regular_degree, None);
    }

    #[test]
    fn core_of_tree_unicyclic_and_cycle() {
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(core_graph(&path).graph.p(), 0);
        let uni = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 5)]).unwrap();
        let c = core_graph(&uni);
        assert!(c.graph.is_cycle_graph());
        assert_eq!(c.map, vec![0, 1, 2]);
        assert_eq!(core_graph(&cycle(6)).graph, cycle(6));
    }

    #[test]
    fn planting() {
        let p2 = Graph::new(2, &[(0, 1)]).unwrap();
        let g = plant(&cycle(4), 0, &p2, 0).unwrap();
        assert_eq!((g.p(), g.q()), (5, 5));
        assert_eq!(plant(&cycle(4), 2, &Graph::empty(1), 0).unwrap(), cycle(4));
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let h = plant(&k(3), 0, &p3, 1).unwrap();
        assert_eq!((h.p(), h.q(), h.degree(0)), (5, 5, 4));
        assert_eq!(plant_tree(&k(3), 0, &cycle(3), 0), Err(GraphError::NotATree));
        assert!(matches!(plant(&k(3), 5, &p3, 0), Err(GraphError::UnknownNode { node: 5, .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k(4);
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::from_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::from_edge_list("3 1\n0 1\n1 2\n").is_err());
    }
}
