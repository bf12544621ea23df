//! Construction and verification of 2-uniform projective and affine
//! Hjelmslev planes.
//!
//! The pipeline starts from classical seeds ([`seeds`]): a projective or
//! affine plane of order `m`, affine planes of order `m` for the point
//! neighbourhoods, and orthogonal arrays of strength two. [`construct`]
//! assembles a Hjelmslev plane from them under an explicit ledger of free
//! choices, and [`verify`] decides from the raw incidence data whether a
//! structure is a (t, r) Hjelmslev plane and whether it is 2-uniform.

pub mod bitset;
pub mod construct;
pub mod error;
pub mod field;
pub mod incidence;
pub mod par;
pub mod report;
pub mod seeds;
pub mod verify;

pub use error::{Error, Result};
pub use incidence::{CanonicalForm, IncidenceStructure};
pub use report::{Params, VerificationReport, Violation};
