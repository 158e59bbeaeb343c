//! Orbifold fundamental groups, their finite permutation quotients, and
//! certificates that the kernel of such a quotient is torsionfree.
//!
//! Every torsion element of the group is conjugate to a power of some `s_j`,
//! so a homomorphism to a finite group keeping the order of each `s_j` has a
//! torsionfree kernel of finite index.

mod certificate;
mod presentation;
mod search;

pub use certificate::{
    certificate_from_triangle, certify_curve, certify_torsionfree_kernel, reduce_to_triangle,
    surface_certificate,
    Reduction, WitnessCertificate,
};
pub use presentation::{
    check_homomorphism, evaluate, first_failing_relation, presentation, Generator,
    GeneratorImages, Letter, OrbifoldPresentation, Relation,
};
pub use search::{
    fox_witness_search, fox_witness_search_with, min_degree_for_order, TriangleWitness,
};
