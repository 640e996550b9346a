//! Finite covers attached to epimorphisms: peripheral degrees, homology of
//! the cover, and the twisted-versus-cover Alexander comparison.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::foxcalc::{rep_from_epimorphism, twisted_alexander, TwistedRep};
use crate::groups::{reidemeister_schreier, CosetTable, Presentation, SchreierSystem, Word};
use crate::quotients::{element_order, Epimorphism};
use crate::ring::{Coefficient, LaurentPoly};

/// Peripheral preimage data: `r` components, each of degree `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverData {
    pub r: usize,
    pub l: usize,
    pub order: usize,
}

/// `l` is the order of the peripheral element's image, `r = |G| / l`.
pub fn cover_invariants(alpha: &Epimorphism, peripheral: &Word) -> CoverData {
    let order = alpha.group().order();
    let l = element_order(alpha.eval_perm(peripheral));
    CoverData {
        r: order / l,
        l,
        order,
    }
}

/// Coset table of `ker α`: cosets are group elements and generators act by
/// right multiplication by their images.
pub fn kernel_table(alpha: &Epimorphism) -> CosetTable {
    let g = alpha.group();
    let actions: Vec<Vec<usize>> = alpha
        .images()
        .iter()
        .map(|&x| (0..g.order()).map(|c| g.mul(c, x)).collect())
        .collect();
    CosetTable::from_actions(&actions).expect("right multiplication is a permutation")
}

/// Presentation of `ker α` on Schreier generators.
pub fn cover_presentation(
    p: &Presentation,
    alpha: &Epimorphism,
) -> Result<(Presentation, SchreierSystem)> {
    let table = kernel_table(alpha);
    let sys = SchreierSystem::new(&table)?;
    Ok((reidemeister_schreier(p, &table)?, sys))
}

/// First Betti number and torsion of the cover belonging to `ker α`.
pub fn cover_homology(p: &Presentation, alpha: &Epimorphism) -> Result<(usize, Vec<BigInt>)> {
    Ok(cover_presentation(p, alpha)?.0.abelianization())
}

/// Outcome of comparing the twisted polynomial with the cover polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck<C> {
    /// Twisted polynomial of the base under the regular representation.
    pub lhs: LaurentPoly<C>,
    /// Cover polynomial pushed forward by `t -> t^d`, times the expected
    /// `(t^d - 1)^2` when the cover has larger Betti number.
    pub rhs: LaurentPoly<C>,
    pub b1_cover: usize,
    /// `im π_*` is generated by `t^d`.
    pub degree: i64,
    /// `k` with `lhs ≐ (t^d - 1)^k rhs`, searched in `-2..=2`.
    pub factor_exponent: Option<i32>,
    pub lhs_exact: bool,
    pub rhs_exact: bool,
    /// Exact agreement up to units, with both normalizations exact.
    pub strict: bool,
    pub consistent: bool,
}

impl<C: Coefficient> fmt::Display for CrossCheck<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lhs: {}", self.lhs)?;
        writeln!(f, "rhs: {}", self.rhs)?;
        writeln!(f, "b1_cover: {}", self.b1_cover)?;
        write!(
            f,
            "consistent: {}",
            if self.consistent { "yes" } else { "no" }
        )
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// Compares the twisted polynomial of `p` under the regular representation
/// of `alpha` (tensored with `phi`) with the untwisted polynomial of the
/// cover, pushed forward along the covering map.
///
/// `phi` restricted to the cover has image `dZ`; the cover polynomial is
/// taken with respect to `phi / d` and then substituted `t -> t^d`. When the
/// cover has `b_1 > 1` the pushed-forward polynomial is multiplied by
/// `(t^d - 1)^2`. Agreement is judged up to units; the lenient verdict
/// also accepts a power of `t^d - 1` between the two sides, which is the
/// normalization ambiguity of the presentation-complex computation.
pub fn prop23_crosscheck<C: Coefficient>(
    p: &Presentation,
    alpha: &Epimorphism,
    phi: &[i64],
) -> Result<CrossCheck<C>> {
    let (b1, _) = p.abelianization();
    if b1 != 1 {
        return Err(Error::UnsupportedBetti(b1));
    }
    let rep: TwistedRep<C> = rep_from_epimorphism(p, alpha, phi)?;
    let left = twisted_alexander(p, &rep)?;

    let (cover, sys) = cover_presentation(p, alpha)?;
    let (b1_cover, _) = cover.abelianization();
    let lifted: Vec<i64> = sys
        .generator_words()
        .iter()
        .map(|w| {
            w.exponent_sums(p.generators())
                .iter()
                .zip(phi)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    let d = lifted.iter().fold(0, |acc, &x| gcd_i64(acc, x));
    if d == 0 {
        return Err(Error::InvalidArgument("phi vanishes on the cover".into()));
    }
    let reduced: Vec<i64> = lifted.iter().map(|x| x / d).collect();
    let right = twisted_alexander(&cover, &TwistedRep::<C>::abelian(&reduced))?;
    let mut rhs = right.polynomial.substitute_power(d)?;
    let a_minus_1 = &LaurentPoly::monomial(crate::ring::Monomial::t(d)) - &LaurentPoly::one(1);
    if b1_cover > 1 {
        rhs = (&(&a_minus_1 * &a_minus_1) * &rhs).normalize();
    }
    let lhs = left.polynomial;

    let factor_exponent = if lhs.is_zero() || rhs.is_zero() {
        (lhs.is_zero() && rhs.is_zero()).then_some(0)
    } else {
        (-2..=2).find(|&k: &i32| {
            let (a, b) = if k >= 0 {
                (lhs.clone(), &a_minus_1.pow(k as u32) * &rhs)
            } else {
                (&a_minus_1.pow((-k) as u32) * &lhs, rhs.clone())
            };
            a.associated(&b)
        })
    };
    let strict = factor_exponent == Some(0) && left.correction_exact && right.correction_exact;
    Ok(CrossCheck {
        lhs,
        rhs,
        b1_cover,
        degree: d,
        factor_exponent,
        lhs_exact: left.correction_exact,
        rhs_exact: right.correction_exact,
        strict,
        consistent: factor_exponent.is_some(),
    })
}
