//! Signotopes, co-signotopes and the lower levels of the higher Bruhat order.
//!
//! The crate works with co-signotopes: sign functions on the d-subsets of
//! `[n]` with at most one sign change along every series. Complementation
//! turns them into signotopes of rank `n - d`. Building blocks, bottom up:
//!
//! - [`combinatorics`]: d-subsets, series, source subsets, the graph `G_{n,d}`.
//! - [`cosignotope`]: sign functions, validity, alignment, single steps.
//! - [`components`]: plus-components, p-sequences, decomposition and merge.
//! - [`ferrers`]: local coordinates and generalized Ferrers diagrams.
//! - [`bijection`]: the level-preserving maps between ground sets.
//! - [`enumeration`]: brute-force oracles and truncated Hasse diagrams.
//! - [`counting`]: plus counts, closed forms and partition functions.

pub mod bijection;
pub mod combinatorics;
pub mod components;
pub mod cosignotope;
pub mod counting;
pub mod enumeration;
mod error;
pub mod ferrers;

pub use combinatorics::{DSubset, Domain, GroundParams};
pub use components::{ComponentDecomposition, PSequence};
pub use cosignotope::{Alignment, CoSignotope, Signotope};
pub use counting::{PlusCountTable, SparseComposition};
pub use enumeration::{HasseDiagram, LevelEnumeration};
pub use error::{Error, Result};
pub use ferrers::{FerrersDiagram, LatticePoint};

/// Version tag used for cache keys and run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
