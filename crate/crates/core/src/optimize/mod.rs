//! Modularity maximization: exhaustive search for small graphs and a seeded
//! local-move heuristic for larger ones.

mod exact;
mod heuristic;

pub use exact::{
    brute_force_q_at_most_k, brute_force_q_at_most_k_with_limit, brute_force_qstar,
    brute_force_qstar_with_limit, BRUTE_FORCE_LIMIT,
};
pub use heuristic::{best_of, local_move_heuristic, HeuristicConfig, OptimizeResult};
