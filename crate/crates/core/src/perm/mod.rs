//! Permutations in cycle notation and the groups they generate.

mod group;
mod permutation;
mod schreier;

pub use group::{group_order, group_order_with, OrderBackend, PermGroup, DEFAULT_CAP};
pub use permutation::{compose, element_order, parse_cycles, Permutation};
pub(crate) use permutation::raw;
pub use schreier::StabilizerChain;
