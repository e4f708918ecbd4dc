//! Exact spectra of discrete tori and abelian Cayley graphs.
//!
//! Eigenvalues are sums of roots of unity; they are keyed by their canonical
//! residue in `Z[x]/(Φ_N)`, so equal eigenvalues are detected exactly and
//! multiplicities are exact big-integer counts.

pub mod criteria;
pub mod cyclotomic;
pub mod error;
pub mod precision;
pub mod spectrum;
pub mod vanishing;
pub mod zeta;

pub use cyclotomic::{CycApprox, CycContext, CycElt};
pub use error::{Error, Result};
pub use precision::HpReal;
pub use spectrum::{SpectrumTable, DEFAULT_BUDGET};
