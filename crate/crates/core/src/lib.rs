//! Exact laboratory for graceful labelings of graphs, with a focus on Euler
//! graphs whose cycle lengths fall in a single residue class mod 4.

pub mod blocks;
pub mod canon;
pub mod corpus;
pub mod constructive;
pub mod euler;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod labeling;
pub mod search;

pub use blocks::{blocks, BlockDecomposition};
pub use graph::{core_graph, plant, plant_tree, structural_profile, Graph, GraphError, Induced, Node, StructuralProfile};
pub use labeling::{evaluate_labeling, is_graceful_labeling, Evaluation, Labeling, LabelingError};
pub use search::{
    attract_spectrum, enumerate_graceful, optimal_labeling, solve_graceful, AttractSpectrum, EnumerationMode,
    SearchConfig, SearchError, SearchOutcome, Strategy, Verdict,
};
