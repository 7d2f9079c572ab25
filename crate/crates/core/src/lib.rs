//! Zero-divisor graphs of finite rings and the homological invariants of their
//! edge ideals.
//!
//! ```
//! use zdgraph::{betti_table, RingSpec};
//!
//! let spec: RingSpec = "zn:12".parse().unwrap();
//! let table = betti_table(&spec).unwrap();
//! assert_eq!(table.pd(), 4);
//! assert!(table.diagram().contains("total: 1 8 14 9 2"));
//! ```

pub mod arith;
pub mod betti;
pub mod cochordal;
pub mod error;
pub mod graph;
pub mod hilbert_cm;
pub mod oracle;
pub mod rings;
mod serde_big;

pub use arith::{binomial, binomial_row, constant_block_sum, factorize, Natural, PrimeFactorization};
pub use betti::{
    betti_chain, betti_from_type_sequence, betti_prime_power, betti_table, betti_three_prime,
    betti_two_prime, eval_type_sequence, homological_summary, projective_dimension, BettiTable,
    HomologicalSummary,
};
pub use cochordal::{
    build_system, classify, obstruction_witness, same_class_clique, type_sequence, type_sequence_for,
    validate_system, BlockKind, Classification, ConstructibleSystem, Step, SystemReport, TypeBlock,
    TypeSequence, Violation, ViolationKind, Witness,
};
pub use error::{Error, Result};
pub use graph::{build_graph, SimpleGraph, VertexLabel};
pub use hilbert_cm::{
    alpha_height_dim, cm_status, gaussian_top_facet_count, hilbert_from_betti, hilbert_from_independence,
    hilbert_function, hilbert_series, independence_polynomial_chain, CmStatus, DimensionData, HilbertSeries,
    IndependencePolynomial, ReducedSeries,
};
pub use oracle::{
    cross_check, oracle_cochordal, oracle_independence, oracle_linear_betti, oracle_linear_betti_all,
    CheckStatus, OracleReport, DEFAULT_ORACLE_BOUND,
};
pub use rings::{
    chain_params, layer_sizes, valuation_classes, vertex_count, ChainParams, RingSpec, ValuationClass,
};
