//! Finite groups given by multiplication tables.

mod finite;
mod hom;
mod presets;
mod series;
mod spec;
mod subgroup;

pub use finite::{FiniteGroup, DEFAULT_ORDER_CAP};
pub use hom::{
    enumerate_homs, enumerate_homs_with, fibred_product, find_isomorphism, is_isomorphic, FibredProduct, GroupHom,
    DEFAULT_HOM_TARGET_CAP,
};
pub use presets::{cyclic, dihedral4, direct_product, elementary_abelian, heisenberg, modular, preset, quaternion8};
pub use series::{lower3, next_term, q_central_series, QCentralSeries};
pub use spec::{build_group, GroupSpecDocument, ParamValue, PermutationSpec, PresetSpec};
pub use subgroup::{
    commutator_subgroup, normal_subgroups_within, power_subgroup, quotient, subgroup_closure, QuotientData, Subgroup,
};
