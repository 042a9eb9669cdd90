//! Finitely presented commutative unital algebras and their morphisms.

pub mod constructions;
pub mod io;
pub mod morphism;
pub mod points;
pub mod presentation;

pub use constructions::{direct_sum, polynomial_extension, tensor_product, DirectSum, PolyExtension, TensorProduct};
pub use morphism::{compose, AlgebraMorphism};
pub use points::{enumerate_hom, enumerate_hom_with, enumerate_points, enumerate_points_with, point_coordinates_with};
pub use presentation::{coordinates_of, from_coordinates, substitute_reduced, Algebra, AlgebraPresentation, ElementRep};
