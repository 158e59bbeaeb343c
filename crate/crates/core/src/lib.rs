//! Exact invariants of weighted smooth projective curves (compact
//! one-dimensional orbifolds), finite permutation quotients of their orbifold
//! fundamental groups with torsionfree kernels, and realizations of weighted
//! projective lines as quotients of smooth curves.
//!
//! All arithmetic is exact: rationals and integers are arbitrary precision.

pub mod companion;
pub mod curve;
pub mod dominance;
pub mod error;
pub mod fuchsian;
pub mod k0;
mod parallel;
pub mod perm;
pub mod rational;
mod serde_util;

pub use curve::{
    chi_from_genus, classify, euler_characteristic, genus_from_chi, hurwitz_bound,
    riemann_hurwitz_chi, spherical_triangle_group_order, weight_lcm, Trisection, WeightedCurve,
};
pub use error::{Error, Result};
pub use k0::{averaged_euler_form, simple_sheaf_degree, K0Class};
pub use perm::{compose, element_order, group_order, parse_cycles, PermGroup, Permutation};
pub use rational::ExactRational;

/// Version string embedded in serialized documents.
pub const TOOL_VERSION: &str = concat!("wpcurve ", env!("CARGO_PKG_VERSION"));
