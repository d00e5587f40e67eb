pub mod error;
pub mod group;
pub mod int;
pub mod isotropy;
pub mod linalg;
pub mod multiplier;
pub mod padic;
pub mod phase;
pub mod report;
pub mod vacuum;
pub mod weyl;

pub use error::{Error, Result};
pub use group::{FinAbGroup, GroupElement, Quotient, Subgroup};
pub use phase::Phase;
pub use multiplier::{Backing, Bicharacter, Multiplier, Pairing, SplittingData};
pub use report::{Check, VerificationReport};
pub use padic::{window_group, PAdicWindow, VacuumProfile};

/// Double-precision projective representation.
pub type Rep = weyl::ProjectiveRep<f64>;
/// Single-precision projective representation.
pub type Rep32 = weyl::ProjectiveRep<f32>;
pub type DescendedRep = vacuum::DescendedRep<f64>;
pub type SectorDecomposition = vacuum::SectorDecomposition<f64>;
pub type CliffordBasis = vacuum::CliffordBasis<f64>;
/// Integer matrices over `i64` and `i128`.
pub type IntMatrix = int::IntMatrix<i64>;
pub type WideIntMatrix = int::IntMatrix<i128>;
