//! Mod-q cohomology in degrees one and two with trivial coefficients.

mod characters;
mod cochain;
mod extension;
mod frame;
mod h2;
mod rings;
mod solver;
mod transgression;

pub use characters::{
    abelian_structure, h1, invariants_h1, invariants_h1_with, AbelianStructure, CharacterSpace, H1Space,
    InvariantCharacters, ModuleSummary,
};
pub use cochain::{
    bockstein, bockstein_with_lift, cochain_from_edges, cup11, edge_values, inflation, inflation1, restriction,
    restriction1, Cochain1, Cochain2, EdgeValues,
};
pub use extension::{class_from_extension, extension_from_class, CentralExtensionSpec};
pub use frame::{all_vectors, DegreeTwoData, LevelTwoFrame};
pub use h2::{cohomology_summary, h2, h2_capped, h2_dec, image_beta, ClassFrame, CohomologySummary, H2Space, DEFAULT_H2_CAP};
pub use rings::{c_rt, c_rt_with_kernel, h_t_alpha, hat_ring, hat_ring_of, AlphaSpec, HatDegree, HatRing, MAX_TENSOR_DEGREE};
pub use solver::{is_coboundary, is_coboundary_edges, CoboundarySolver};
pub use transgression::{five_term_check, five_term_check_capped, FiveTermOrders, FiveTermReport, Transgression};
