//! Burnside rings, subgroup lattices and equivariant Brouwer degrees for
//! periodic and bifurcating solutions of reversible second-order systems with
//! symmetry group `Γ × D_m × Z_2`.

pub mod bifurcation;
pub mod burnside;
pub mod config;
pub mod degree;
pub mod error;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod naming;
pub mod rep;
pub mod report;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};
