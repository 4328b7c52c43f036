//! n-exangulated structures on finitely presented categories.

pub mod axioms;
pub mod exangle;
pub mod modcat;
pub mod presentation;
pub mod realize;

pub use axioms::{check_core_axioms, AxiomBounds, AxiomVerdict, ConflationOracle, CoreReport, ExtRecord, FailureRecord, MorRecord, Witness};
pub use exangle::{
    compose_chain, homotopic, homotopy_equivalent, inner_exactness_failures, is_attached, is_chain_map, is_complex, is_n_exangle, lift_morphism,
    lift_space, mapping_cocone, mapping_cone, split_complex, sum_complex, ChainMap, Complex, ExactnessFailure, ExangleVerdict, LiftSpace, NExangle,
    Side,
};
pub use modcat::{resolve_generators, GeneratorSpec, ModuleCategory};
pub use presentation::{Mor, Obj, Presentation, PresentationData};
pub use realize::{find_deflation, find_inflation, realize, ClusterTilting, Declared, DeclaredEntry, Realizer};

#[cfg(test)]
mod tests;
