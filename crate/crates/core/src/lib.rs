//! Orthogonal bases of the Hilbert-Schmidt space of `d×d` complex matrices.
//!
//! The crate builds the standard, generalized Gell-Mann and Weyl operator
//! bases (all normalized to `Tr(g† g) = d`), computes the unitary coefficient
//! matrices that connect them, expands SWAP, the Bell projector and the fully
//! coherent state in any such basis, and evaluates a catalogue of sum rules
//! and superoperator expansions (trace, identity, transposition, partial
//! transpose, reshuffling, universal state inversion, Choi representation).
//!
//! With the default `parallel` feature, sums over basis elements and catalogue
//! runs are spread over a rayon pool; without it every [`Execution`] falls
//! back to a sequential loop. Results are identical bit for bit either way.

pub mod bases;
mod error;
mod exec;
pub mod hs_core;
pub mod identities;
pub mod io;
pub mod maps;
pub mod operators;
pub mod random;
pub mod transforms;

pub use bases::{BasisKind, BasisSplit, BasisValidation, MatrixBasis};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hs_core::{scalar_tolerance, tau, BipartiteIndex, ComplexMatrix, Party};
pub use identities::{IdentityEntry, IdentityId, IdentityReport};
pub use maps::{BlochVector, ChoiState, Superoperator};
pub use operators::TwoPartyOperator;
pub use transforms::{BasisChange, BlockStructure};

pub use num_complex::Complex64;
