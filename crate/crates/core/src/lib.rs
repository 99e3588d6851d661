//! Fourier analysis on fundamental domains of lattices in `R^d`.
//!
//! - [`lattice`]: generator matrices, dual lattices, the `A_d` family and
//!   enumeration of dual frequencies.
//! - [`domain`]: the parallelotope and hexagonal fundamental domains,
//!   reduction modulo the lattice and Monte Carlo tiling checks.
//! - [`transform`]: the forward and inverse transform on a domain via a
//!   change of variables to the torus.
//! - [`inequality`]: domain and dual norms, weak-type constants and checks of
//!   the Hausdorff-Young family of inequalities.
//! - [`multiplier`]: Fourier multipliers and operator-norm experiments.
//! - [`experiment`]: configuration, batch suites and CSV/SVG reports used by
//!   the `latfourier` binary.

pub mod domain;
pub mod error;
pub mod experiment;
pub mod inequality;
pub mod lattice;
pub mod multiplier;
pub mod random;
pub mod transform;

pub use error::{Error, Result};
pub use lattice::{a_d_lattice, DualPoint, EmbeddedLattice, Lattice};
pub use transform::{forward, inverse, GridFunction, Spectrum};
