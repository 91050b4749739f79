//! Observation models, random graphs and the paper's example constructions.

mod generators;
mod models;
mod rng;

pub use generators::{gen_clique_plus_matching, gen_star_plus_matching, gen_triangles, gen_two_cliques};
pub use models::{
    add_false_positives, edge_limited_search, erdos_renyi, first_edges_of_random_order, observe,
    sample_edges, vertex_sample, SampleSpec,
};
pub use rng::RandomSource;
