//! Graph corpora: reading graph files and the generated desk-scale corpus.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::families::{self, make, FamilySpec};
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    /// Each graph with the (1-based) line it starts on.
    pub graphs: Vec<(usize, Graph)>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses graph6 lines and edge-list blocks (`p q` followed by `q` lines of
/// `u v`). Blank lines and `#` comments are ignored; a bad line or block is
/// reported and skipped.
pub fn ingest_corpus(text: &str) -> Corpus {
    let mut out = Corpus::default();
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim();
        let lineno = i + 1;
        i += 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() == 1 {
            match graph6::decode(line) {
                Ok(g) => out.graphs.push((lineno, g)),
                Err(e) => out.diagnostics.push(Diagnostic { line: lineno, message: format!("graph6: {e}") }),
            }
            continue;
        }
        let q = match tokens.as_slice() {
            [_, q] => q.parse::<usize>().ok(),
            _ => None,
        };
        let Some(q) = q else {
            out.diagnostics.push(Diagnostic { line: lineno, message: format!("unrecognised line {line:?}") });
            continue;
        };
        let end = (i + q).min(lines.len());
        let block = std::iter::once(line).chain(lines[i..end].iter().copied()).collect::<Vec<_>>().join("\n");
        i = end;
        match Graph::from_edge_list(&block) {
            Ok(g) => out.graphs.push((lineno, g)),
            Err(e) => out.diagnostics.push(Diagnostic { line: lineno, message: format!("edge list: {e}") }),
        }
    }
    out
}

pub fn ingest_corpus_file(path: &Path) -> std::io::Result<Corpus> {
    Ok(ingest_corpus(&std::fs::read_to_string(path)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusGraph {
    pub family: String,
    pub graph: Graph,
}

fn spec_graphs(specs: impl IntoIterator<Item = FamilySpec>) -> Vec<CorpusGraph> {
    specs
        .into_iter()
        .filter_map(|s| make(&s).ok().map(|g| CorpusGraph { family: s.to_string(), graph: g }))
        .collect()
}

/// Named family members used by the Euler suites.
pub fn family_corpus() -> Vec<CorpusGraph> {
    use FamilySpec::*;
    let mut specs: Vec<FamilySpec> = Vec::new();
    specs.extend((3..=20).map(|n| Cycle { n }));
    for m in 2..=4 {
        for n in 3..=9 {
            specs.push(WindmillCycles { m, n });
        }
    }
    for k in 2..=4 {
        for n in 3..=7 {
            specs.push(SnakeCycles { k, n });
        }
    }
    specs.extend((1..=4).map(|k| CompleteBipartite { m: 2, n: 2 * k }));
    specs.extend([CompleteBipartite { m: 4, n: 4 }, CompleteBipartite { m: 4, n: 6 }]);
    for lengths in [[2, 2, 2, 2], [1, 3, 3, 3], [3, 3, 3, 3], [2, 2, 6, 6], [1, 1, 1, 1], [3, 3, 3, 7], [2, 4, 4, 4]] {
        specs.push(Theta { lengths: lengths.to_vec() });
    }
    specs.extend((1..=4).map(|m| DutchWindmill { m }));
    specs.extend((1..=3).map(|n| HJoin { l: 2, m: 2, n }));
    specs.extend([3, 5, 7].map(|n| Complete { n }));
    for base in [Cycle { n: 3 }, Cycle { n: 4 }, Cycle { n: 5 }, WindmillCycles { m: 2, n: 3 }, CompleteBipartite { m: 2, n: 4 }] {
        for k in 1..=2 {
            specs.push(Subdivision { k, base: Box::new(base.clone()) });
        }
    }
    let mut out = spec_graphs(specs);
    out.push(CorpusGraph { family: "cycle_with_edge_petals 3 4".into(), graph: families::cycle_with_edge_petals(3, 4) });
    out
}

/// The generated corpus: every connected graph up to `max_connected_order`
/// nodes, every bipartite Euler graph up to `max_bipartite_order` nodes, and
/// [`family_corpus`] members with at most `max_family_order` nodes; one
/// graph per isomorphism class.
pub fn generated_corpus(max_connected_order: usize, max_bipartite_order: usize, max_family_order: usize) -> Vec<CorpusGraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |family: String, graph: Graph| {
        if seen.insert(canonical_key(&graph)) {
            out.push(CorpusGraph { family, graph });
        }
    };
    for order in 1..=max_connected_order {
        for g in families::enumerate_connected(order).expect("within the connected cap") {
            push(format!("connected {order}"), g);
        }
    }
    for order in 1..=max_bipartite_order {
        for g in families::enumerate_bipartite_euler(order).expect("within the bipartite cap") {
            push(format!("bipartite_euler {order}"), g);
        }
    }
    for c in family_corpus() {
        if c.graph.p() <= max_family_order {
            push(c.family, c.graph);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_examples() {
        let c = ingest_corpus("Bw\n");
        assert_eq!(c.graphs.len(), 1);
        assert_eq!(c.graphs[0].1, families::complete(3));
        assert!(ingest_corpus("").graphs.is_empty());
        let c = ingest_corpus("# comment\nBw\n!!bad\n3 2\n0 1\n1 2\n\nDQc\n4 1\n0 9\n");
        assert_eq!(c.graphs.len(), 3);
        assert_eq!(c.graphs[1], (4, families::path(3)));
        assert_eq!(c.diagnostics.iter().map(|d| d.line).collect::<Vec<_>>(), vec![3, 9]);
    }

    #[test]
    fn corpus_is_large_and_distinct() {
        let c = generated_corpus(6, 10, 16);
        assert!(c.len() >= 200, "{}", c.len());
        let keys: BTreeSet<String> = c.iter().map(|g| canonical_key(&g.graph)).collect();
        assert_eq!(keys.len(), c.len());
    }
}
