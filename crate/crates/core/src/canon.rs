//! Canonical forms for small graphs by individualisation and refinement.
//!
//! The search tree branches on the first smallest non-singleton cell of an
//! equitable partition. Leaves are compared by the adjacency rows of the
//! relabelled graph and the largest one is canonical. Automorphisms found
//! between equal leaves prune sibling branches in the same orbit.

use crate::graph::{Graph, Node};
use crate::graph6;

/// Largest order handled (adjacency rows are `u64` bitsets).
pub const MAX_CANON_ORDER: usize = 64;

type Cells = Vec<Vec<Node>>;

struct Searcher {
    n: usize,
    rows: Vec<u64>,
    first_path: Vec<Node>,
    first_cert: Option<Vec<u64>>,
    first_perm: Vec<usize>,
    best_cert: Option<Vec<u64>>,
    best_perm: Vec<usize>,
    automorphisms: Vec<Vec<Node>>,
}

enum Flow {
    Continue,
    /// An automorphism with the first leaf was found; unwind to this depth.
    BackjumpTo(usize),
}

impl Searcher {
    fn refine(&self, cells: &mut Cells) {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (ci, cell) in cells.iter().enumerate() {
                for &u in cell {
                    cell_of[u] = ci;
                }
            }
            let k = cells.len();
            let mut changed = false;
            let mut next: Cells = Vec::with_capacity(k);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, Node)> = cell
                    .iter()
                    .map(|&u| {
                        let mut counts = vec![0u32; k];
                        let mut row = self.rows[u];
                        while row != 0 {
                            let v = row.trailing_zeros() as usize;
                            counts[cell_of[v]] += 1;
                            row &= row - 1;
                        }
                        (counts, u)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        if start > 0 || i < keyed.len() {
                            changed = true;
                        }
                        next.push(keyed[start..i].iter().map(|x| x.1).collect());
                        start = i;
                    }
                }
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn certificate(&self, cells: &Cells) -> (Vec<u64>, Vec<usize>) {
        let mut pos = vec![0usize; self.n];
        for (i, cell) in cells.iter().enumerate() {
            pos[cell[0]] = i;
        }
        let mut cert = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = self.rows[u];
            let mut out = 0u64;
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                out |= 1 << pos[v];
                row &= row - 1;
            }
            cert[pos[u]] = out;
        }
        (cert, pos)
    }

    fn orbit_rep(&self, prefix: &[Node], v: Node, tried: &[Node]) -> bool {
        // union-find over automorphisms fixing the prefix pointwise
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&x| gamma[x] == x) {
                for u in 0..self.n {
                    let a = find(&mut parent, u);
                    let b = find(&mut parent, gamma[u]);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn record_automorphism(&mut self, perm_a: &[usize], perm_b: &[usize]) {
        let mut inv_a = vec![0; self.n];
        for u in 0..self.n {
            inv_a[perm_a[u]] = u;
        }
        let gamma: Vec<Node> = (0..self.n).map(|u| inv_a[perm_b[u]]).collect();
        if gamma.iter().enumerate().any(|(i, &g)| i != g) {
            self.automorphisms.push(gamma);
        }
    }

    fn search(&mut self, cells: Cells, prefix: &mut Vec<Node>) -> Flow {
        if cells.len() == self.n {
            let (cert, perm) = self.certificate(&cells);
            match &self.first_cert {
                None => {
                    self.first_path = prefix.clone();
                    self.first_cert = Some(cert.clone());
                    self.first_perm = perm.clone();
                    self.best_cert = Some(cert);
                    self.best_perm = perm;
                    return Flow::Continue;
                }
                Some(first) if *first == cert => {
                    let first_perm = self.first_perm.clone();
                    self.record_automorphism(&first_perm, &perm);
                    let common = prefix.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
                    return Flow::BackjumpTo(common);
                }
                _ => {}
            }
            let best = self.best_cert.as_ref().expect("set with first leaf");
            if cert == *best {
                let best_perm = self.best_perm.clone();
                self.record_automorphism(&best_perm, &perm);
            } else if cert > *best {
                self.best_cert = Some(cert);
                self.best_perm = perm;
            }
            return Flow::Continue;
        }

        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let depth = prefix.len();
        let mut tried: Vec<Node> = Vec::new();
        for v in candidates {
            if self.orbit_rep(prefix, v, &tried) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<Node> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            self.refine(&mut child);
            prefix.push(v);
            let flow = self.search(child, prefix);
            prefix.pop();
            if let Flow::BackjumpTo(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }
}

/// Canonical relabelling: `perm[u]` is the canonical id of node `u`.
pub fn canonical_permutation(g: &Graph) -> Vec<usize> {
    let n = g.p();
    assert!(n <= MAX_CANON_ORDER, "canonical form supports at most {MAX_CANON_ORDER} nodes");
    if n == 0 {
        return Vec::new();
    }
    let rows: Vec<u64> = g.nodes().map(|u| g.neighbors(u).iter().fold(0u64, |acc, &v| acc | 1 << v)).collect();
    let mut s = Searcher {
        n,
        rows,
        first_path: Vec::new(),
        first_cert: None,
        first_perm: Vec::new(),
        best_cert: None,
        best_perm: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut cells: Cells = vec![(0..n).collect()];
    s.refine(&mut cells);
    s.search(cells, &mut Vec::new());
    s.best_perm
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical_permutation(g))
}

/// graph6 string of the canonical relabelling; equal iff isomorphic.
pub fn canonical_key(g: &Graph) -> String {
    graph6::encode(&canonical_graph(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.p() == b.p() && a.q() == b.q() && a.degree_sequence() == b.degree_sequence() && canonical_key(a) == canonical_key(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(Node, Node)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, &e).unwrap()
        })
    }

    #[test]
    fn counts_of_unlabelled_graphs() {
        // numbers of graphs on n nodes: 1, 2, 4, 11, 34
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let mut keys: Vec<String> = all_labelled(n).map(|g| canonical_key(&g)).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn invariant_under_random_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples: Vec<Graph> = vec![
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap(),
            Graph::new(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]).unwrap(),
            Graph::new(8, &(0..8).flat_map(|v| (0..v).map(move |u| (u, v))).collect::<Vec<_>>()).unwrap(),
            Graph::new(8, &[(0, 4), (0, 5), (1, 4), (1, 6), (2, 6), (2, 7), (3, 7), (3, 5), (0, 1)]).unwrap(),
        ];
        for g in samples {
            let key = canonical_key(&g);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.p()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_key(&g.relabel(&perm)), key);
            }
        }
    }

    #[test]
    fn petersen_vs_prism() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let mut pet = outer.clone();
        pet.extend((0..5).map(|i| (i, i + 5)));
        pet.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        let mut prism = outer;
        prism.extend((0..5).map(|i| (i, i + 5)));
        prism.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
        let a = Graph::new(10, &pet).unwrap();
        let b = Graph::new(10, &prism).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert!(are_isomorphic(&a, &a.relabel(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7])));
    }
}
