//! Biconnected components (blocks) and cut nodes.

use crate::graph::{Graph, GraphError, Induced, Node};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Each block as an edge-induced subgraph mapped back to the input.
    pub blocks: Vec<Induced>,
    /// Edge ids (into `Graph::edges`) of each block.
    pub block_edges: Vec<Vec<usize>>,
    pub cutnodes: Vec<Node>,
}

/// Standard biconnected decomposition of a connected graph.
///
/// A single isolated node forms one edgeless block.
pub fn blocks(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.q() == 0 {
        return Ok(BlockDecomposition {
            blocks: vec![g.induced(&[0])],
            block_edges: vec![Vec::new()],
            cutnodes: Vec::new(),
        });
    }

    let n = g.p();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut block_edges: Vec<Vec<usize>> = Vec::new();
    let mut time = 0;

    // (node, parent edge id, next neighbour index)
    let mut stack: Vec<(Node, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (u, parent_edge, ref mut next)) = stack.last_mut() {
        if *next < g.degree(u) {
            let v = g.neighbors(u)[*next];
            *next += 1;
            let e = g.edge_index(u, v).expect("neighbour edge exists");
            if e == parent_edge {
                continue;
            }
            if disc[v] == usize::MAX {
                edge_stack.push(e);
                disc[v] = time;
                low[v] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((v, e, 0));
            } else if disc[v] < disc[u] {
                edge_stack.push(e);
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if let Some(&(w, _, _)) = stack.last() {
                low[w] = low[w].min(low[u]);
                if low[u] >= disc[w] {
                    if w != 0 {
                        is_cut[w] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == parent_edge {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block_edges.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    block_edges.sort();
    let blocks = block_edges.iter().map(|ids| g.edge_induced(ids)).collect();
    Ok(BlockDecomposition { blocks, block_edges, cutnodes: g.nodes().filter(|&u| is_cut[u]).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_edges(nodes: &[Node]) -> Vec<(Node, Node)> {
        (0..nodes.len()).map(|i| (nodes[i], nodes[(i + 1) % nodes.len()])).collect()
    }

    #[test]
    fn bowtie() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cutnodes, vec![0]);
    }

    #[test]
    fn cycle_is_one_block() {
        let g = Graph::new(8, &cycle_edges(&[0, 1, 2, 3, 4, 5, 6, 7])).unwrap();
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cutnodes.is_empty());
    }

    #[test]
    fn two_pentagons() {
        let mut e = cycle_edges(&[0, 1, 2, 3, 4]);
        e.extend(cycle_edges(&[0, 5, 6, 7, 8]));
        let g = Graph::new(9, &e).unwrap();
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.graph.is_cycle_graph() && b.graph.p() == 5));
        assert_eq!(d.cutnodes, vec![0]);
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cutnodes, vec![1, 2]);
        assert_eq!(blocks(&Graph::empty(2)), Err(GraphError::Disconnected));
        assert_eq!(blocks(&Graph::empty(1)).unwrap().blocks.len(), 1);
    }
}
