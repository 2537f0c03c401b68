//! Coprime networks of composite numbers.
//!
//! Nodes are the composite numbers in `[4, n]` and two nodes are joined when
//! they are coprime. The crate builds these networks exactly, checks the
//! closed-form counts for nodes, edges, degrees and codegrees, measures
//! paths, clustering and cycles, certifies weak pseudo-randomness through
//! codegree statistics, and compares Laplacian synchronizability against
//! Erdős–Rényi and Barabási–Albert graphs with the same size.

pub mod bitgraph;
pub mod claims;
pub mod cli;
pub mod error;
pub mod generators;
pub mod metrics;
pub mod network;
pub mod numtheory;
pub mod pseudorandom;
pub mod spectral;
pub mod verify;

pub use bitgraph::BitGraph;
pub use error::{Error, Result};
pub use network::{build_network, CoprimeNetwork};
pub use numtheory::{build_sieve, FactorSignature, SieveTable};
pub use verify::VerificationReport;

/// The asymptotic coprimality probability 6/π².
pub const COPRIME_DENSITY: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
