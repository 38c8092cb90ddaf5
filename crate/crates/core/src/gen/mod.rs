//! Instance generators: seeded random graphs and the hardness constructions.

mod aim;
mod random;
mod reduction;

pub use aim::{aim_to_tournament, aim_witness, is_to_aim, planted_aim, sample_bias, BiasReport};
pub use random::{gen_digraph, gen_digraph_with_arcs, gen_tournament, rng, small_corpus};
pub use reduction::{mcc_to_optional, optional_to_full, Lineage, McInstance, ReductionOutput};
