//! Exact computational algebra for arc spaces of graded rings.
//!
//! The crate decides, degree by degree and with exact rational arithmetic,
//! whether a weight-graded differential algebra presented by generators and
//! relations agrees with the arc algebra of its weight-zero part.  The toolkit
//! around that question consists of:
//!
//! * [`sparse`] — arbitrary-precision rational sparse linear algebra
//!   (rank, kernel, quotient bases);
//! * [`ring`] — weighted differential polynomial rings with the grevlex
//!   monomial order and the canonical derivation;
//! * [`groebner`] — weight-truncated Buchberger completion and Groebner
//!   basis verification for differential ideals;
//! * [`hilbert`] — graded Hilbert series by standard-monomial enumeration
//!   and by an independent linear-algebra oracle;
//! * [`qseries`] — Gordon products, partition counts, Virasoro minimal
//!   model characters and Meurman–Primc monomial counting;
//! * [`koszul`] — degreewise homology of the Koszul complex attached to a
//!   truncated arc-space quotient;
//! * [`ellseries`] — truncated Laurent/q-expansions of Weierstrass
//!   functions with a formal `2*pi*i` marker, and identity verification;
//! * [`confspace`] — cohomology of configuration spaces of an elliptic
//!   curve via the Kriz–Totaro differential graded algebra.

pub mod confspace;
pub mod ellseries;
pub mod groebner;
pub mod hilbert;
pub mod koszul;
pub mod qseries;
pub mod ring;
pub mod series;
pub mod sparse;

use thiserror::Error;

/// Errors shared across the crate's modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different ring configurations")]
    MismatchedRing,
    #[error("polynomial is not weight-homogeneous")]
    NonHomogeneous,
    #[error("ring has a variable of weight zero")]
    WeightZeroVariable,
    #[error("weight {requested} exceeds the validity bound {bound}")]
    BeyondValidityBound { requested: u64, bound: u64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
