//! Coordinate rings of polygon spaces through two-row tableaux.
//!
//! The crate covers straightening of minor products, the diagonal-length
//! polytopes indexing the semistandard basis, normal forms of lattice-point
//! matrices under the toric moves, Kempe factorization into lowest-degree
//! generators, and the resulting presentations by generators and relations.

pub mod ci;
pub mod error;
pub mod kempe;
pub mod linalg;
pub mod lincomb;
pub mod normal_form;
pub mod oracle;
pub mod polytope;
pub mod presentation;
pub mod straighten;
pub mod tableau;

pub use error::{Error, Result};
pub use lincomb::LinearCombination;
pub use tableau::{Entry, MultiWeight, Tableau, Weights};
