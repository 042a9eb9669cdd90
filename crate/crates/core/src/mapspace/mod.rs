//! Truncated morphism-space algebras `M_θ(A, B)` and their structure maps.

pub mod associated;
pub mod laws;
pub mod presentation;
pub mod tensor;

pub use associated::{
    associated_from_elems, associated_morphism, associated_point, comultiplication, functor_action, morphism_of_point,
    points_crosscheck, tensor_morphism, coassociativity_check, CoassocInputs, PointsCrosscheck,
};
pub use presentation::{
    mapspace_presentation, structural_morphism, truncation_tower, uniform_mapspace, zvar_name, MapSpace, Truncation,
    TruncationTower,
};
pub use tensor::{eval_tensor, TensorCtx, TensorElem};
pub use laws::{directsum_law, exponential_law, tensor_law, verify_natural_isomorphism, Law, LawReport, LawSide};
