//! Finite permutation groups and the sigma-theory of subgroup embeddings.
//!
//! The crate is layered:
//!
//! * [`perm`], [`group`]: permutations and generator-defined groups with
//!   stabiliser chains, plus normaliser/core/quotient/Sylow machinery;
//! * [`table`], [`lattice`]: fully tabulated groups and their complete
//!   subgroup lattices, with chief series and normal structure;
//! * [`sigma`]: predicates relative to a partition of the primes
//!   (Hall sets, sigma-subnormality, sigma-permutability, sigma-cores, weak
//!   sigma-permutability, sigma-solubility, hypercyclic embedding);
//! * [`catalog`], [`format`]: group constructors, the test corpus, and text
//!   formats for groups and manifests.

pub mod catalog;
mod chain;
pub mod error;
pub mod format;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod primes;
pub mod sigma;
pub mod table;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Quotient, Structure, SubgroupPair, ENUMERATION_CUTOFF};
pub use lattice::{ChiefSeries, SubId, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};
pub use perm::Permutation;
pub use sigma::{Classical, SigmaContext, SigmaPartition, SigmaWitness};
