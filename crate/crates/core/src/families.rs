//! Deterministic constructors for the named graph families, and exhaustive
//! small-order enumeration of trees, unicyclic and connected graphs.
//!
//! Node numbering conventions (all constructors are bit-exact):
//!
//! * `cycle n`: `i ~ i+1 (mod n)`; `path n`: `n` nodes `0 - 1 - ... - n-1`.
//! * `complete_bipartite m n`: parts `0..m` and `m..m+n`.
//! * `wheel n`: hub `0`, rim `1..=n` in cyclic order.
//! * `caterpillar c0,c1,..`: spine `0..s`, then the leaves of spine node 0,
//!   those of spine node 1, and so on.
//! * windmills: common node `0`, copy `i` occupies the next block of ids.
//! * `snake_triangular k`: spine path `0..=k`, apex of triangle `i` is `k+1+i`.
//! * `snake_cycles k n`: cycle `i` is entered at its shared node and leaves
//!   at the node `n/2` steps further round.
//! * `book n r m`: shared clique `0..r`, page `i` adds the next `n-r` ids.
//! * `h_join l m n`: the `m` copies of `K_l` first, then `n` independent nodes.
//! * `theta l1,l2,..`: end nodes `0` and `1`, interior path nodes follow.
//! * `subdivision`: interior nodes of edge `e = (u, v)` are appended per edge
//!   in edge order, running from `u` to `v`.
//! * `join`/`union`: nodes of the left operand first; `cartesian_product`
//!   maps `(i, j)` to `i * p(right) + j`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_graph;
use crate::graph::{Graph, GraphError, Node};
use crate::graph6;

pub const DEFAULT_TREE_CAP: usize = 10;
pub const DEFAULT_UNICYCLIC_CAP: usize = 9;
pub const DEFAULT_CONNECTED_CAP: usize = 8;
pub const DEFAULT_BIPARTITE_EULER_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: {message}")]
    InvalidParam { family: &'static str, message: String },
    #[error("order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("cannot parse family spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid(family: &'static str, message: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParam { family, message: message.into() }
}

/// A named family member. Identical specs build identical graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Empty { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Wheel { n: usize },
    Caterpillar { leaves: Vec<usize> },
    DutchWindmill { m: usize },
    WindmillComplete { m: usize, n: usize },
    WindmillCycles { m: usize, n: usize },
    SnakeTriangular { k: usize },
    SnakeCycles { k: usize, n: usize },
    Book { n: usize, r: usize, m: usize },
    TwoCliquesSharedNode { m: usize, n: usize },
    HJoin { l: usize, m: usize, n: usize },
    Theta { lengths: Vec<usize> },
    Copies { m: usize, base: Box<FamilySpec> },
    Union { left: Box<FamilySpec>, right: Box<FamilySpec> },
    Subdivision { k: usize, base: Box<FamilySpec> },
    Join { left: Box<FamilySpec>, right: Box<FamilySpec> },
    CartesianProduct { left: Box<FamilySpec>, right: Box<FamilySpec> },
    Graphforest { total_order: usize, seed: u64, base: Box<FamilySpec> },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Empty { .. } => "empty",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Wheel { .. } => "wheel",
            FamilySpec::Caterpillar { .. } => "caterpillar",
            FamilySpec::DutchWindmill { .. } => "dutch_windmill",
            FamilySpec::WindmillComplete { .. } => "windmill_complete",
            FamilySpec::WindmillCycles { .. } => "windmill_cycles",
            FamilySpec::SnakeTriangular { .. } => "snake_triangular",
            FamilySpec::SnakeCycles { .. } => "snake_cycles",
            FamilySpec::Book { .. } => "book",
            FamilySpec::TwoCliquesSharedNode { .. } => "two_cliques_shared_node",
            FamilySpec::HJoin { .. } => "h_join",
            FamilySpec::Theta { .. } => "theta",
            FamilySpec::Copies { .. } => "copies",
            FamilySpec::Union { .. } => "union",
            FamilySpec::Subdivision { .. } => "subdivision",
            FamilySpec::Join { .. } => "join",
            FamilySpec::CartesianProduct { .. } => "cartesian_product",
            FamilySpec::Graphforest { .. } => "graphforest",
        }
    }

    /// Parses the whitespace token form used on the command line, e.g.
    /// `h_join 2 2 3` or `subdivision 1 complete_bipartite 2 4`.
    pub fn parse(text: &str) -> Result<FamilySpec, FamilyError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let (spec, rest) = Self::parse_tokens(&tokens)?;
        if !rest.is_empty() {
            return Err(FamilyError::Parse(format!("trailing tokens {rest:?}")));
        }
        Ok(spec)
    }

    pub fn parse_tokens<'a>(tokens: &'a [&'a str]) -> Result<(FamilySpec, &'a [&'a str]), FamilyError> {
        let (name, mut rest) =
            tokens.split_first().ok_or_else(|| FamilyError::Parse("missing family name".into()))?;
        let mut int = || -> Result<usize, FamilyError> {
            let (t, r) = rest.split_first().ok_or_else(|| FamilyError::Parse(format!("{name}: missing parameter")))?;
            rest = r;
            t.parse().map_err(|_| FamilyError::Parse(format!("{name}: bad integer {t:?}")))
        };
        let spec = match *name {
            "cycle" => FamilySpec::Cycle { n: int()? },
            "path" => FamilySpec::Path { n: int()? },
            "complete" => FamilySpec::Complete { n: int()? },
            "empty" => FamilySpec::Empty { n: int()? },
            "complete_bipartite" => FamilySpec::CompleteBipartite { m: int()?, n: int()? },
            "wheel" => FamilySpec::Wheel { n: int()? },
            "dutch_windmill" => FamilySpec::DutchWindmill { m: int()? },
            "windmill_complete" => FamilySpec::WindmillComplete { m: int()?, n: int()? },
            "windmill_cycles" => FamilySpec::WindmillCycles { m: int()?, n: int()? },
            "snake_triangular" => FamilySpec::SnakeTriangular { k: int()? },
            "snake_cycles" => FamilySpec::SnakeCycles { k: int()?, n: int()? },
            "book" => FamilySpec::Book { n: int()?, r: int()?, m: int()? },
            "two_cliques_shared_node" => FamilySpec::TwoCliquesSharedNode { m: int()?, n: int()? },
            "h_join" => FamilySpec::HJoin { l: int()?, m: int()?, n: int()? },
            "caterpillar" | "theta" => {
                let (t, r) =
                    rest.split_first().ok_or_else(|| FamilyError::Parse(format!("{name}: missing list")))?;
                rest = r;
                let list = t
                    .split(',')
                    .map(|x| x.parse().map_err(|_| FamilyError::Parse(format!("{name}: bad list {t:?}"))))
                    .collect::<Result<Vec<usize>, _>>()?;
                if *name == "caterpillar" {
                    FamilySpec::Caterpillar { leaves: list }
                } else {
                    FamilySpec::Theta { lengths: list }
                }
            }
            "copies" => {
                let m = int()?;
                let (base, r) = Self::parse_tokens(rest)?;
                rest = r;
                FamilySpec::Copies { m, base: Box::new(base) }
            }
            "subdivision" => {
                let k = int()?;
                let (base, r) = Self::parse_tokens(rest)?;
                rest = r;
                FamilySpec::Subdivision { k, base: Box::new(base) }
            }
            "graphforest" => {
                let total_order = int()?;
                let seed = int()? as u64;
                let (base, r) = Self::parse_tokens(rest)?;
                rest = r;
                FamilySpec::Graphforest { total_order, seed, base: Box::new(base) }
            }
            "join" | "union" | "cartesian_product" => {
                let (left, r) = Self::parse_tokens(rest)?;
                let (right, r) = Self::parse_tokens(r)?;
                rest = r;
                let (left, right) = (Box::new(left), Box::new(right));
                match *name {
                    "join" => FamilySpec::Join { left, right },
                    "union" => FamilySpec::Union { left, right },
                    _ => FamilySpec::CartesianProduct { left, right },
                }
            }
            other => return Err(FamilyError::Parse(format!("unknown family {other:?}"))),
        };
        Ok((spec, rest))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", self.name())?;
        match self {
            FamilySpec::Cycle { n }
            | FamilySpec::Path { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Empty { n }
            | FamilySpec::Wheel { n } => write!(f, " {n}"),
            FamilySpec::DutchWindmill { m } => write!(f, " {m}"),
            FamilySpec::SnakeTriangular { k } => write!(f, " {k}"),
            FamilySpec::CompleteBipartite { m, n }
            | FamilySpec::WindmillComplete { m, n }
            | FamilySpec::WindmillCycles { m, n }
            | FamilySpec::TwoCliquesSharedNode { m, n } => write!(f, " {m} {n}"),
            FamilySpec::SnakeCycles { k, n } => write!(f, " {k} {n}"),
            FamilySpec::Book { n, r, m } => write!(f, " {n} {r} {m}"),
            FamilySpec::HJoin { l, m, n } => write!(f, " {l} {m} {n}"),
            FamilySpec::Caterpillar { leaves } => write!(f, " {}", list(leaves)),
            FamilySpec::Theta { lengths } => write!(f, " {}", list(lengths)),
            FamilySpec::Copies { m, base } => write!(f, " {m} {base}"),
            FamilySpec::Subdivision { k, base } => write!(f, " {k} {base}"),
            FamilySpec::Graphforest { total_order, seed, base } => write!(f, " {total_order} {seed} {base}"),
            FamilySpec::Union { left, right }
            | FamilySpec::Join { left, right }
            | FamilySpec::CartesianProduct { left, right } => write!(f, " {left} {right}"),
        }
    }
}

pub fn make(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    match *spec {
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle", format!("n = {n} must be at least 3")));
            }
            Ok(cycle(n))
        }
        FamilySpec::Path { n } => {
            if n < 1 {
                return Err(invalid("path", "n must be at least 1"));
            }
            Ok(path(n))
        }
        FamilySpec::Complete { n } => Ok(complete(n)),
        FamilySpec::Empty { n } => Ok(Graph::empty(n)),
        FamilySpec::CompleteBipartite { m, n } => {
            let edges: Vec<_> = (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))).collect();
            Ok(Graph::new(m + n, &edges)?)
        }
        FamilySpec::Wheel { n } => {
            if n < 3 {
                return Err(invalid("wheel", format!("rim size {n} must be at least 3")));
            }
            let mut edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            edges.extend((1..=n).map(|i| (i, i % n + 1)));
            Ok(Graph::new(n + 1, &edges)?)
        }
        FamilySpec::Caterpillar { ref leaves } => {
            if leaves.is_empty() {
                return Err(invalid("caterpillar", "spine must have at least one node"));
            }
            Ok(caterpillar(leaves))
        }
        FamilySpec::DutchWindmill { m } => make(&FamilySpec::WindmillComplete { m, n: 3 }),
        FamilySpec::WindmillComplete { m, n } => {
            if m < 1 || n < 3 {
                return Err(invalid("windmill_complete", format!("need m >= 1 and n >= 3, got m = {m}, n = {n}")));
            }
            let mut edges = Vec::new();
            for i in 0..m {
                let nodes: Vec<Node> = std::iter::once(0).chain((0..n - 1).map(|j| 1 + i * (n - 1) + j)).collect();
                clique_on(&nodes, &mut edges);
            }
            Ok(Graph::new(m * (n - 1) + 1, &edges)?)
        }
        FamilySpec::WindmillCycles { m, n } => {
            if m < 1 || n < 3 {
                return Err(invalid("windmill_cycles", format!("need m >= 1 and n >= 3, got m = {m}, n = {n}")));
            }
            let mut edges = Vec::new();
            for i in 0..m {
                let nodes: Vec<Node> = std::iter::once(0).chain((0..n - 1).map(|j| 1 + i * (n - 1) + j)).collect();
                cycle_on(&nodes, &mut edges);
            }
            Ok(Graph::new(m * (n - 1) + 1, &edges)?)
        }
        FamilySpec::SnakeTriangular { k } => {
            if k < 1 {
                return Err(invalid("snake_triangular", "k must be at least 1"));
            }
            let mut edges: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
            for i in 0..k {
                edges.push((i, k + 1 + i));
                edges.push((i + 1, k + 1 + i));
            }
            Ok(Graph::new(2 * k + 1, &edges)?)
        }
        FamilySpec::SnakeCycles { k, n } => {
            if k < 1 || n < 3 {
                return Err(invalid("snake_cycles", format!("need k >= 1 and n >= 3, got k = {k}, n = {n}")));
            }
            let mut edges = Vec::new();
            let mut entry = 0;
            let mut next = 1;
            for _ in 0..k {
                let mut nodes = vec![entry];
                nodes.extend(next..next + n - 1);
                next += n - 1;
                cycle_on(&nodes, &mut edges);
                entry = nodes[n / 2];
            }
            Ok(Graph::new(next, &edges)?)
        }
        FamilySpec::Book { n, r, m } => {
            if r >= n || m < 1 {
                return Err(invalid("book", format!("need r < n and m >= 1, got n = {n}, r = {r}, m = {m}")));
            }
            let mut edges = Vec::new();
            for i in 0..m {
                let nodes: Vec<Node> = (0..r).chain((0..n - r).map(|j| r + i * (n - r) + j)).collect();
                clique_on(&nodes, &mut edges);
            }
            Ok(Graph::from_pairs_dedup(r + m * (n - r), edges))
        }
        FamilySpec::TwoCliquesSharedNode { m, n } => {
            if m < 1 || n < 1 {
                return Err(invalid("two_cliques_shared_node", "clique sizes must be positive"));
            }
            let left = disjoint(&complete(m - 1), &complete(n - 1));
            Ok(join(&left, &Graph::empty(1)))
        }
        FamilySpec::HJoin { l, m, n } => {
            if l < 1 || m < 1 {
                return Err(invalid("h_join", format!("need l >= 1 and m >= 1, got l = {l}, m = {m}")));
            }
            let copies = (1..m).fold(complete(l), |acc, _| disjoint(&acc, &complete(l)));
            Ok(join(&copies, &Graph::empty(n)))
        }
        FamilySpec::Theta { ref lengths } => {
            if lengths.len() < 2 || lengths.contains(&0) || lengths.iter().filter(|&&l| l == 1).count() > 1 {
                return Err(invalid("theta", "need at least two paths, positive lengths, at most one of length 1"));
            }
            let mut edges = Vec::new();
            let mut next = 2;
            for &len in lengths {
                let mut nodes = vec![0];
                nodes.extend(next..next + len - 1);
                nodes.push(1);
                next += len - 1;
                edges.extend(nodes.windows(2).map(|w| (w[0], w[1])));
            }
            Ok(Graph::new(next, &edges)?)
        }
        FamilySpec::Copies { m, ref base } => {
            let b = make(base)?;
            Ok((0..m).fold(Graph::empty(0), |acc, _| disjoint(&acc, &b)))
        }
        FamilySpec::Union { ref left, ref right } => Ok(disjoint(&make(left)?, &make(right)?)),
        FamilySpec::Subdivision { k, ref base } => {
            if k < 1 {
                return Err(invalid("subdivision", "k must be at least 1"));
            }
            Ok(subdivision(&make(base)?, k))
        }
        FamilySpec::Join { ref left, ref right } => Ok(join(&make(left)?, &make(right)?)),
        FamilySpec::CartesianProduct { ref left, ref right } => Ok(cartesian_product(&make(left)?, &make(right)?)),
        FamilySpec::Graphforest { total_order, seed, ref base } => random_graphforest(&make(base)?, total_order, seed),
    }
}

fn clique_on(nodes: &[Node], edges: &mut Vec<(Node, Node)>) {
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            edges.push((u, v));
        }
    }
}

fn cycle_on(nodes: &[Node], edges: &mut Vec<(Node, Node)>) {
    edges.extend((0..nodes.len()).map(|i| (nodes[i], nodes[(i + 1) % nodes.len()])));
}

pub fn cycle(n: usize) -> Graph {
    let mut edges = Vec::new();
    cycle_on(&(0..n).collect::<Vec<_>>(), &mut edges);
    Graph::new(n, &edges).expect("n >= 3")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).expect("path is simple")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    clique_on(&(0..n).collect::<Vec<_>>(), &mut edges);
    Graph::new(n, &edges).expect("clique is simple")
}

pub fn caterpillar(leaves: &[usize]) -> Graph {
    let s = leaves.len();
    let mut edges: Vec<_> = (1..s).map(|i| (i - 1, i)).collect();
    let mut next = s;
    for (i, &c) in leaves.iter().enumerate() {
        for _ in 0..c {
            edges.push((i, next));
            next += 1;
        }
    }
    Graph::new(next, &edges).expect("caterpillar is a tree")
}

fn disjoint(a: &Graph, b: &Graph) -> Graph {
    a.disjoint_union(b)
}

/// Replaces every edge by a path with `k` new interior nodes.
pub fn subdivision(g: &Graph, k: usize) -> Graph {
    let mut edges = Vec::with_capacity((k + 1) * g.q());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let first = g.p() + e * k;
        let mut chain = vec![u];
        chain.extend(first..first + k);
        chain.push(v);
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    Graph::new(g.p() + k * g.q(), &edges).expect("subdivision is simple")
}

/// Disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let shift = g.p();
    let cross: Vec<_> = g.nodes().flat_map(|u| h.nodes().map(move |v| (u, v + shift))).collect();
    g.disjoint_union(h).extended(0, &cross).expect("join is simple")
}

/// Box product: `(a, b) ~ (a', b')` iff one coordinate agrees and the other
/// is an edge.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let id = |a: Node, b: Node| a * h.p() + b;
    let mut edges = Vec::new();
    for a in g.nodes() {
        for &(b, b2) in h.edges() {
            edges.push((id(a, b), id(a, b2)));
        }
    }
    for &(a, a2) in g.edges() {
        for b in h.nodes() {
            edges.push((id(a, b), id(a2, b)));
        }
    }
    Graph::new(g.p() * h.p(), &edges).expect("box product is simple")
}

/// A cycle of length `base_len` with a `petal_len`-cycle sharing each of its
/// edges. Base nodes are `0..base_len`; petal interior nodes follow.
pub fn cycle_with_edge_petals(base_len: usize, petal_len: usize) -> Graph {
    assert!(base_len >= 3 && petal_len >= 3);
    let mut edges = Vec::new();
    cycle_on(&(0..base_len).collect::<Vec<_>>(), &mut edges);
    let mut next = base_len;
    for i in 0..base_len {
        let mut chain = vec![i];
        chain.extend(next..next + petal_len - 2);
        chain.push((i + 1) % base_len);
        next += petal_len - 2;
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    Graph::new(next, &edges).expect("petals are simple")
}

/// Plants random trees on a pendant-free graph until it has `total_order`
/// nodes. Each new node hangs off a uniformly chosen existing node, so the
/// planted material is a forest of trees rooted at base nodes.
pub fn random_graphforest(g: &Graph, total_order: usize, seed: u64) -> Result<Graph, FamilyError> {
    if g.p() == 0 || g.nodes().any(|u| g.degree(u) < 2) {
        return Err(FamilyError::Graph(GraphError::HasPendantNodes));
    }
    if total_order < g.p() {
        return Err(invalid("graphforest", format!("total order {total_order} is below the base order {}", g.p())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.edges().to_vec();
    for new in g.p()..total_order {
        let parent = rng.gen_range(0..new);
        edges.push((parent, new));
    }
    Ok(Graph::new(total_order, &edges)?)
}

fn dedup_canonical(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
    for g in graphs {
        let c = canonical_graph(&g);
        seen.entry(graph6::encode(&c)).or_insert(c);
    }
    seen.into_values().collect()
}

fn leaf_extensions(gs: &[Graph]) -> Vec<Graph> {
    dedup_canonical(gs.iter().flat_map(|g| {
        g.nodes().map(move |u| g.extended(1, &[(u, g.p())]).expect("new leaf"))
    }))
}

/// One tree per isomorphism class, canonically numbered and sorted by
/// graph6 key.
pub fn enumerate_trees(order: usize) -> Result<Vec<Graph>, FamilyError> {
    enumerate_trees_capped(order, DEFAULT_TREE_CAP)
}

pub fn enumerate_trees_capped(order: usize, cap: usize) -> Result<Vec<Graph>, FamilyError> {
    if order > cap {
        return Err(FamilyError::CapExceeded { order, cap });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..order {
        level = leaf_extensions(&level);
    }
    Ok(level)
}

/// One connected unicyclic graph per isomorphism class.
pub fn enumerate_unicyclic(order: usize) -> Result<Vec<Graph>, FamilyError> {
    enumerate_unicyclic_capped(order, DEFAULT_UNICYCLIC_CAP)
}

pub fn enumerate_unicyclic_capped(order: usize, cap: usize) -> Result<Vec<Graph>, FamilyError> {
    if order > cap {
        return Err(FamilyError::CapExceeded { order, cap });
    }
    if order < 3 {
        return Ok(Vec::new());
    }
    // every unicyclic graph is its cycle or has a leaf whose removal leaves
    // a unicyclic graph of one order less
    let mut level = vec![cycle(3)];
    for n in 4..=order {
        let mut next = leaf_extensions(&level);
        next.push(canonical_graph(&cycle(n)));
        level = dedup_canonical(next);
    }
    Ok(level)
}

/// One connected graph per isomorphism class.
pub fn enumerate_connected(order: usize) -> Result<Vec<Graph>, FamilyError> {
    if order > DEFAULT_CONNECTED_CAP {
        return Err(FamilyError::CapExceeded { order, cap: DEFAULT_CONNECTED_CAP });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    // a connected graph keeps connectivity after deleting a leaf of any
    // spanning tree, so attaching a new node to a non-empty neighbour set of
    // every smaller connected graph reaches all of them
    let mut level = vec![Graph::empty(1)];
    for n in 1..order {
        let prev = std::mem::take(&mut level);
        level = dedup_canonical(prev.iter().flat_map(|g| {
            (1u32..1 << n).map(move |mask| {
                let extra: Vec<_> = (0..n).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n)).collect();
                g.extended(1, &extra).expect("new node")
            })
        }));
    }
    Ok(level)
}

/// Connected bipartite Euler graphs with at least one edge, one per
/// isomorphism class, built from the even subgraphs of `K_{a,b}`.
pub fn enumerate_bipartite_euler(order: usize) -> Result<Vec<Graph>, FamilyError> {
    if order > DEFAULT_BIPARTITE_EULER_CAP {
        return Err(FamilyError::CapExceeded { order, cap: DEFAULT_BIPARTITE_EULER_CAP });
    }
    let mut found = Vec::new();
    for a in 2..=order / 2 {
        let b = order - a;
        let bit = |i: usize, j: usize| 1u32 << (i * b + j);
        // basis of the cycle space of K_{a,b}: 4-cycles through A0 and B0
        let basis: Vec<u32> = (1..a)
            .flat_map(|i| (1..b).map(move |j| (i, j)))
            .map(|(i, j)| bit(0, 0) ^ bit(i, 0) ^ bit(i, j) ^ bit(0, j))
            .collect();
        let mut mask = 0u32;
        for step in 1u64..1 << basis.len() {
            mask ^= basis[step.trailing_zeros() as usize];
            let edges: Vec<(Node, Node)> = (0..a)
                .flat_map(|i| (0..b).map(move |j| (i, j)))
                .filter(|&(i, j)| mask & bit(i, j) != 0)
                .map(|(i, j)| (i, a + j))
                .collect();
            let g = Graph::new(order, &edges).expect("bipartite pairs");
            if g.nodes().all(|u| g.degree(u) > 0) && g.is_connected() {
                found.push(g);
            }
        }
    }
    Ok(dedup_canonical(found))
}
