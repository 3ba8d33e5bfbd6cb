//! Exact weight calculus for the cuspidal cohomology of `GL(N)` over number
//! fields.
//!
//! The crate covers the archimedean side of the story only:
//!
//! * [`archfield`]: embeddings, conjugation, and the permutation action of
//!   `Aut(C)` on embeddings.
//! * [`weightcalc`]: dominant integral weights, purity, strong purity,
//!   parallel weights, duality, base-change lift, bounded enumeration.
//! * [`endotransfer`]: weight transfer from `Sp(2n)`, `SO(2n+1)`, `U(n)` and
//!   the `SO(2n)` obstruction, down to archimedean Langlands parameters.
//! * [`cohomrep`]: the generic cohomological representation `J(μ)` and the
//!   parameter-matching check.
//! * [`autoinduct`]: Hecke infinity types for automorphic induction and the
//!   `GL(2) x GL(2) -> GL(4)` Tate-twist calculator.
//!
//! Everything is exact. Integer data is generic over [`Scalar`], which is
//! implemented for the signed primitive integers and [`num_bigint::BigInt`];
//! half-integers are stored doubled in [`HalfInt`]. The aliases at the crate
//! root fix the scalar to `i64`, which is what the CLI uses.

pub mod archfield;
pub mod autoinduct;
pub mod cohomrep;
pub mod endotransfer;
mod error;
pub mod halfint;
pub mod params;
mod scalar;
pub mod weightcalc;

pub use archfield::{ArchField, FieldMode, FieldSpec, GaloisElement, DEFAULT_CLOSURE_CAP};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use params::{ArchParam, Block, InducedRep, ParamSummand};
pub use scalar::Scalar;
pub use weightcalc::{PurityReport, StrongPurity, Verdict};

/// Dominant integral weight with machine-word entries.
pub type Weight = weightcalc::Weight<i64>;
/// Weight with arbitrary-precision entries.
pub type BigWeight = weightcalc::Weight<num_bigint::BigInt>;
/// Half-integer with machine-word storage.
pub type Half = HalfInt<i64>;
pub type Report = PurityReport<i64>;
pub type Induced = InducedRep<i64>;
pub type Param = ArchParam<i64>;
pub type TransferReport = endotransfer::TransferReport<i64>;
pub type MatchReport = cohomrep::MatchReport<i64>;
pub type RamakrishnanReport = autoinduct::RamakrishnanReport<i64>;
