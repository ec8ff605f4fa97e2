//! Milnor fiber monodromy of graphic arrangements.
//!
//! A signed graph with loops defines a central arrangement in `Q^l`. From its
//! intersection lattice and the mod-p Aomoto complexes this crate computes the
//! decomposition of `H_1(F, Q)` into cyclotomic blocks under the monodromy.

pub mod aomoto;
pub mod arrangement;
pub mod cli;
pub mod error;
pub mod field;
pub mod graph;
pub mod milnor;
pub mod resonance;
pub mod verify;

pub use aomoto::{beta1, beta_p, brute_force_beta_p, os2_matrix_beta, FieldTag, WeightVector};
pub use arrangement::{build_arrangement, Arrangement, Flat, Polynomial, Rank2Shape};
pub use error::{Error, Result};
pub use graph::{canonical_form, enumerate_graphs, parse_graph, switch, Edge, Sign, SignedGraph};
pub use milnor::{h1_decomposition, CyclotomicDecomposition, ExceptionalClass};
