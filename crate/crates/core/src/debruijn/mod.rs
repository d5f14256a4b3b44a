//! Decision procedures for surjectivity and injectivity through De Bruijn
//! and product graphs, with brute-force oracles to cross-check them.

pub mod graph;
pub mod injectivity;
pub mod oracle;
pub mod product;
pub mod scc;
pub mod surjectivity;

pub use graph::{DeBruijnGraph, Edge};
pub use injectivity::{decide_injective, InjectivityVerdict};
pub use oracle::{
    count_preimages_bounded, injectivity_witness_oracle, surjectivity_oracle, PreimageBounds, SurjectivityOracle,
};
pub use product::{ProductGraph, ReducedProductGraph};
pub use scc::{strongly_connected_components, Components, Csr};
pub use surjectivity::{decide_surjective, find_missing_word, SurjectivityVerdict};
