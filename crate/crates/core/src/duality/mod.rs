//! Duality between `T/T_0` and kernels of inflation, the three duality
//! triples, and the harnesses built on them.

mod conditions;
mod free;
mod galois;
mod harness;
mod pairing;
mod triple;

pub use conditions::{check_duality_conditions, is_dual, DualityConditions};
pub use free::{
    alpha_surjectivity, character_with_values, closed_formula_check, cohomological_data, cyclic_subgroups_of_order,
    dual_basis_check, kkk_conditions, kkk_setting, local_global_check, reconstruct_quotient, sharp_pairing,
    ClosedFormulaReport, DualBasisReport, FormulaEntry, KkkReport, LocalGlobalReport, Reconstruction, SharpPairing,
    SurjectivityReport,
};
pub use galois::{
    catalog, extension_list, galois_relation_type, galois_relation_type_of, identify, intersect_epi_kernels, l_of_g,
    special_set, special_set_of, t0_by_intersection, theorem_d_check, ExtensionList, ExtensionMember, GaloisReport,
    IntersectionReport, SpecialPair, SpecialSet, SpecialTensor, TheoremDReport, Verdict,
};
pub use harness::{
    ppp_conditions, sample_epimorphisms, quotient_criterion_harness, triple_axioms_check, AxiomReport, Epimorphism,
    EpimorphismConditions, QuotientRow, QuotientTable,
};
pub use pairing::{
    k_of, pairing_a, pairing_b, pairing_b_by_transgression, pairing_b_by_witness, validate_layers, DualitySetting,
    LayerModule, LayerPairing,
};
pub use triple::{DualityTriple, TripleKind};
