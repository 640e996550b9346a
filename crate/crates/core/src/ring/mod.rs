//! Exact integer arithmetic: Laurent polynomials over a lattice, matrices
//! over them, and integer normal forms.
//!
//! Everything here is generic over the coefficient type through
//! [`Coefficient`]; the pipeline instantiates it with [`num_bigint::BigInt`]
//! (see the aliases at the crate root), while fixed-width integers are
//! available for small computations and tests.

mod dense;
mod laurent;
mod matrix;
mod maxminor;
pub(crate) mod modular;
mod monomial;
mod smith;

pub use dense::DensePoly;
pub use laurent::LaurentPoly;
pub use matrix::RingMatrix;
pub use maxminor::{max_minor_gcd, MinorGcd};
pub use monomial::Monomial;
pub use smith::{cokernel, smith_normal_form, IntMatrix};

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer-like scalar usable as a polynomial coefficient.
///
/// Implementations must behave like a subring of `Z`: `div_floor`/`gcd` come
/// from [`Integer`], and [`Coefficient::residue`] reduces into `Z/p`.
pub trait Coefficient:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Residue of `self` modulo the prime `p`, in `0..p`.
    fn residue(&self, p: u64) -> u64;

    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("coefficient type cannot hold an i64 value")
    }
}

impl Coefficient for i64 {
    fn residue(&self, p: u64) -> u64 {
        (*self as i128).rem_euclid(p as i128) as u64
    }
}

impl Coefficient for i128 {
    fn residue(&self, p: u64) -> u64 {
        self.rem_euclid(p as i128) as u64
    }
}

impl Coefficient for BigInt {
    fn residue(&self, p: u64) -> u64 {
        let r = (self.magnitude() % p).to_u64().unwrap_or(0);
        if self.sign() == Sign::Minus && r != 0 {
            p - r
        } else {
            r
        }
    }
}
