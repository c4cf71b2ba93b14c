//! Rank-constrained Max-Cut, Quantum Max-Cut and the reductions between them.
//!
//! The crate covers
//! * graphs, Laplacian spectra and certified bipartite expanders,
//! * the rank-k cut energy with exact and local-ascent solvers,
//! * the triangle-and-expander reduction from rank k to rank k+1,
//! * Pauli-basis Hamiltonians, exact and product-state optima,
//! * spin-J representations and the cloud blowup of a Hamiltonian,
//!
//! and every verifier returns a [`VerificationReport`] of numeric claims.

pub mod cloud;
pub mod error;
pub mod graph;
pub mod hamiltonian;
pub mod linalg;
pub mod operator;
pub mod ptas;
pub mod rankcut;
pub mod report;
pub mod spectral;
pub mod spin;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, NamedGraph, VertexRole};
pub use hamiltonian::{BlochProduct, DenseHermitian, LocalHamiltonian, PauliTerm};
pub use ptas::{PlannedParameters, ReductionBundle, ReductionConstants};
pub use rankcut::{AscentOptions, AscentResult, UnitAssignment};
pub use report::{Claim, Provenance, Relation, VerificationReport};
pub use spectral::SpectralCertificate;
pub use spin::HalfInt;
