//! Quantum permutation correlations built from character tables and graph
//! automorphisms, exact locality decisions, and verifiable nonlocality
//! certificates.

pub mod correlation;
pub mod cyclotomic;
pub mod error;
pub mod graph;
pub mod group;
pub mod locality;
pub mod perm;
pub mod qls;

pub use correlation::{CharacteristicMatrix, Correlation, Provenance};
pub use cyclotomic::{Cyclotomic, RealCyclo, RealSign};
pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use locality::{LocalityStatus, LocalityVerdict};
