use std::fmt;

use super::fox::twisted_alexander_matrix;
use super::TwistedRep;
use crate::error::{Error, Result};
use crate::groups::{Presentation, Word};
use crate::ring::{max_minor_gcd, Coefficient, LaurentPoly, RingMatrix};

/// Twisted Alexander polynomial with the choices made computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlexander<C> {
    /// Canonical representative; zero when the module has positive rank.
    pub polynomial: LaurentPoly<C>,
    /// Generator (0-based) whose column block was deleted.
    pub deleted_generator: usize,
    /// Whether the correction quotient was exact; when false
    /// `polynomial` is the undivided minor gcd.
    pub correction_exact: bool,
    /// False when the randomized minor gcd could not rule out a spurious
    /// factor. Vanishing is always decided exactly.
    pub confirmed: bool,
}

impl<C: Coefficient> TwistedAlexander<C> {
    pub fn is_zero(&self) -> bool {
        self.polynomial.is_zero()
    }
}

impl<C: Coefficient> fmt::Display for TwistedAlexander<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.polynomial)?;
        writeln!(f, "deleted_generator: {}", self.deleted_generator + 1)?;
        write!(
            f,
            "correction_exact: {}",
            if self.correction_exact { "yes" } else { "no" }
        )
    }
}

/// Order of the module presented by `m` (rows are relations): zero when
/// there are fewer relations than generators.
fn order<C: Coefficient>(m: &RingMatrix<C>) -> Result<(LaurentPoly<C>, bool)> {
    if m.rows() < m.cols() {
        return Ok((LaurentPoly::zero(m.lattice_rank()), true));
    }
    if m.cols() == 0 {
        return Ok((LaurentPoly::one(m.lattice_rank()), true));
    }
    let g = max_minor_gcd(m)?;
    Ok((g.value, g.confirmed))
}

/// Twisted Alexander polynomial `Δ_1` of `p` under `rep` (rank 1 only).
///
/// With `A` the Fox matrix, `j` the first generator with
/// `det(rep(x_j) - I) != 0`, and `Δ_0` the order of the module presented
/// by the stacked blocks `rep(x_i) - I`, this returns
/// `gcd(maximal minors of A without block j) * Δ_0 / det(rep(x_j) - I)`
/// when that division is exact.
pub fn twisted_alexander<C: Coefficient>(
    p: &Presentation,
    rep: &TwistedRep<C>,
) -> Result<TwistedAlexander<C>> {
    if rep.rank() != 1 {
        return Err(Error::UnsupportedRank {
            expected: 1,
            found: rep.rank(),
        });
    }
    let a = twisted_alexander_matrix(p, rep)?;
    let n = rep.dim();
    let id = RingMatrix::identity(n, 1);
    let blocks: Vec<RingMatrix<C>> = (0..p.generators())
        .map(|g| rep.image(&Word::generator(g)).map(|m| &m - &id))
        .collect::<Result<_>>()?;
    let mut choice = None;
    for (j, b) in blocks.iter().enumerate() {
        let (d, _) = order(b)?;
        if !d.is_zero() {
            choice = Some((j, d));
            break;
        }
    }
    let (j, corr) = choice.ok_or(Error::DegeneratePresentation)?;
    let (num, confirmed) = order(&a.without_generator(j))?;
    if num.is_zero() {
        return Ok(TwistedAlexander {
            polynomial: num,
            deleted_generator: j,
            correction_exact: true,
            confirmed,
        });
    }
    let (delta0, c0) = order(&RingMatrix::vstack(&blocks))?;
    let (polynomial, correction_exact) = match (&num * &delta0).div_exact(&corr) {
        Some(q) => (q.normalize(), true),
        None => (num.normalize(), false),
    };
    Ok(TwistedAlexander {
        polynomial,
        deleted_generator: j,
        correction_exact,
        confirmed: confirmed && c0,
    })
}

/// Alexander polynomial of a knot group presentation in which every
/// generator is a meridian.
pub fn alexander_polynomial<C: Coefficient>(p: &Presentation) -> Result<TwistedAlexander<C>> {
    twisted_alexander(p, &TwistedRep::abelian(&vec![1; p.generators()]))
}
