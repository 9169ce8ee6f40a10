//! Exact combinatorics behind the finite theta correspondence on unipotent
//! data of symplectic and even-orthogonal groups.
//!
//! The crate works entirely with Lusztig symbols. It provides:
//!
//! - [`symbols`]: symbols, bipartitions, rank/defect invariants, the
//!   staircase bijection, and exhaustive enumeration;
//! - [`families`]: special symbols, their singles, family members `Λ_M`,
//!   F₂ addition and the two family pairings;
//! - [`transform`]: the per-family almost-character transform with exact
//!   scalars in `Z[1/2, sqrt2]`, class vectors and pair vectors;
//! - [`theta`]: the correspondence relation on symbol pairs, the unipotent
//!   Weil decomposition in both bases, and the brute-force equality check;
//! - [`reduction`]: the constructive reduction of a family-pair relation to
//!   a regular one, with per-step verification and transported constants;
//! - [`series`]: a symbolic layer for Lusztig-series triples, involutions,
//!   occurrence predicates and theta ranks.
//!
//! Everything is immutable after construction and uses exact arithmetic;
//! there are no floats anywhere.

pub mod error;
pub mod families;
pub mod reduction;
pub mod scalar;
pub mod series;
pub mod symbols;
pub mod theta;
pub mod transform;

pub use error::Error;
pub use families::{enumerate_special, family_of, Eps, Family, GroupKind, SpecialSymbol};
pub use scalar::{Dyadic, Scalar};
pub use symbols::{
    bipartitions, enumerate_symbols, interleaves, partitions, upsilon_inv, Bipartition, Row, Symbol,
};
pub use theta::{
    build_relation, first_occurrence, group_symbols, in_relation, verify_main_theorem,
    ThetaRelation,
};
pub use transform::Basis;
