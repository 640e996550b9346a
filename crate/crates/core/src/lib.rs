//! Exact computational topology for knot surgery on torus bundles.
//!
//! The library computes Alexander and twisted Alexander polynomials by Fox
//! calculus, enumerates finite quotients of knot groups, builds finite covers
//! by coset enumeration and Reidemeister–Schreier rewriting, and manipulates
//! Seiberg–Witten series of lattice type. [`pipeline`] combines these into
//! a non-fiberedness search and a symplecticity verdict.
//!
//! Numeric code is generic over [`ring::Coefficient`]; the aliases below fix
//! the coefficient type to [`BigInt`].

#![allow(clippy::needless_range_loop)]

pub mod covers;
pub mod error;
pub mod foxcalc;
pub mod groups;
pub mod pipeline;
pub mod quotients;
pub mod ring;
pub mod swcalc;

pub use num_bigint::BigInt;

pub use error::{Error, Result};

pub type Poly = ring::LaurentPoly<BigInt>;
pub type PolyMatrix = ring::RingMatrix<BigInt>;
pub type Rep = foxcalc::TwistedRep<BigInt>;
pub type TwistedPoly = foxcalc::TwistedAlexander<BigInt>;
pub type Series = swcalc::SWSeries<BigInt>;
pub type Report = pipeline::ObstructionReport<BigInt>;
pub type SymplecticReport = pipeline::VerdictReport<BigInt>;
pub type CrossCheck = covers::CrossCheck<BigInt>;
