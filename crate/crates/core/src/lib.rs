//! Exact calculus for the finitary Neretin group of a regular tree and for
//! Higman–Thompson groups.
//!
//! Elements are tree pairs acting on eventually periodic ends by prefix
//! substitution, kept in a unique reduced form so that the word problem is
//! decided by comparing normal forms. On top of this sit the sign
//! homomorphism of `G_{q,r}`, constructive factorizations into generators,
//! and commutator certificates built from a single nontrivial element.

pub mod boundary;
pub mod elements;
pub mod epstein;
pub mod error;
pub mod generation;
pub mod higman_thompson;
pub mod text;
pub mod tree;

pub use boundary::{gromov_product, rays_equal, visual_distance, LogDistance, Ray};
pub use elements::{FixedSet, GroupWord, Portrait, ScaleExponent, TreePair};
pub use error::{Error, Result};
pub use tree::{Address, Antichain, Degree, Shape};
