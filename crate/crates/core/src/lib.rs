//! Exact probabilistic zeta functions of finite lattices.
//!
//! For a finite lattice `L` with join-irreducibles `J`, the probability that
//! `s` uniformly chosen join-irreducibles join to the top is a finite general
//! Dirichlet series
//!
//! ```text
//! P(L, s) = Σ_{x > 0̂} μ(x, 1̂) / (|J| / |J_x|)^s
//! ```
//!
//! where `J_x` are the join-irreducibles below `x`. This crate computes that
//! series exactly, classifies lattices by whether the bases `|J|/|J_x|` are
//! integers, and provides the lattice families, group coset lattices and
//! exhaustive lattice enumeration used to study it.

pub mod bits;
pub mod cosetlike;
pub mod dirichlet;
pub mod error;
pub mod families;
pub mod groups;
pub mod lattice;
pub mod numbers;
pub mod search;
pub mod suites;
pub mod target;
pub mod zeta;

#[cfg(test)]
pub(crate) mod testing;

pub use dirichlet::DirichletSeries;
pub use error::{Error, Result};
pub use lattice::{CanonicalForm, Lattice, LatticeOptions, MobiusVector, Poset, Sublattice};
pub use zeta::{zeta_series, ZetaReport};
