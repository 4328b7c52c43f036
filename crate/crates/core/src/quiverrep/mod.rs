//! Bound quiver algebras and their finite-dimensional modules.

pub mod algebra;
pub mod decompose;
pub mod homological;
pub mod module;
pub mod standard;

pub use algebra::{path_basis, Algebra, Arrow, Path, Quiver, Relation};
pub use decompose::{composition_label, decompose, find_isomorphism, indecomposable_iso, Summand, DEFAULT_SEED};
pub use homological::{
    check_exact_sequence, comparison_map, ext_group, lift_identity, lift_map, projective_cover, pull, pull_matrix, push, push_matrix, resolution, splice, yoneda_class,
    ExtElement, ExtSpace, Resolution,
};
pub use module::{cokernel, exact_at, hom_basis, image, kernel, HomSpace, ModMorphism, Module};
pub use standard::{interval_module, standard_module, StandardKind};
