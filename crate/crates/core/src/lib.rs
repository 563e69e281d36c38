//! Breaking leaf-removal cores of undirected graphs and building vertex
//! covers from the residual core-free graph.

pub mod breaker;
pub mod centrality;
pub mod cover;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod leaf_removal;
pub mod matching;
pub mod spectral;
pub mod state;

pub use breaker::{
    approx_state_update, break_core, break_core_extended, rank_adaptive_step, rank_static, ApproxRule,
    DeletionTrace, MethodKind, MethodSpec, RankingMode,
};
pub use cover::{
    cover_from_trace, exact_mvc, is_vertex_cover, verify_proposition, verify_theorem_decomposition, CoverResult,
    ExactCover, TheoremCheck,
};
pub use error::{Error, Result};
pub use generate::{generate_er, generate_sf};
pub use graph::{induced_subgraph, Graph, NodeArraySnapshot};
pub use harness::{trial_seed, ExactGapConfig, Model, ResultRecord, StateChoice, SweepConfig};
pub use io::{load_edge_list, load_edge_list_file, write_edge_list, LoadedGraph};
pub use leaf_removal::{is_core_free, leaf_pairing_matching, peel, PeelResult};
pub use matching::{greedy_matching_size, maximum_matching, maximum_matching_size};
pub use spectral::{
    build_r_matrix, core_influence, dense_spectral_radius, lambda_closed_form, lambda_power, lambda_power_series,
    CoreInfluenceScore, PathFamily, SpectralEstimate,
};
pub use state::NodeState;
