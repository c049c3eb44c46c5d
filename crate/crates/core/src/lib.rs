//! Matroids given by circuits, paving and quasi-paving matroids, the grid
//! and line-arrangement families, decompositions of their circuit varieties
//! into components, and exact component counts.

pub mod counting;
pub mod decomposition;
pub mod element_set;
pub mod error;
pub mod families;
pub mod io;
pub mod matroid;
pub mod partition;
pub mod paving;
pub mod quasi;

pub use counting::series::TruncatedEgf;
pub use counting::{c_grid, c_lines, egf_expand, q_s_multinomial, vector_partitions, Method, ProfileSet};
pub use decomposition::{
    build_mq, decompose_grid, decompose_lines, is_nice_generic, is_nice_grid, is_nice_lines, liftability_oracle,
    Classification, ComponentReport, Decomposition, Liftability, LiftabilityVerdict,
};
pub use element_set::ElementSet;
pub use error::{Error, Result};
pub use families::{ci_hypergraph, ci_ideal_generators, ci_matroid, grid_matroid, line_matroid, GridLayout, LineArrangement};
pub use matroid::{check_circuit_axioms, dependency_leq, DependenceOracle, Matroid, Origin};
pub use partition::HyperplanePartition;
pub use paving::PavingMatroid;
pub use quasi::{decompose_to_tame, principal_extension, quasi_matroid, ExtensionStep, QuasiRep, TameDecomposition};

/// Exact nonnegative counts.
pub type BigCount = num_bigint::BigUint;
/// Exponential generating functions with exact rational coefficients.
pub type RationalEgf = TruncatedEgf<num_rational::BigRational>;
