//! p-adic matrices, the metaplectic cover, local test vectors, the cell
//! model for the Weil representation, and brute-force coefficient oracles.

pub mod mat2;
pub mod metaplectic;
pub mod vectors;

pub use mat2::{iwasawa_decompose, Iwasawa, Mat2};
pub use metaplectic::{cocycle, metaplectic_multiply, splitting_sign, x_map, MetaplecticElement};
pub use vectors::{eval_h_vector, eval_tau_vector, TauVariant};
pub mod cell;
pub use cell::{additive_character, weil_action, CellFunction, WeilGen};
pub mod oracle;
pub use oracle::{
    coefficient_oracle, default_resolution, h_vector_norm_oracle, tau_norm_oracle, CosetElement,
    OracleConfig, OracleFactor, OracleValue,
};
