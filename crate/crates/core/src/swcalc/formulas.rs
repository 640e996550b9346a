use super::series::{expand_terms, LatticeMap, SWSeries};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, LaurentPoly, Monomial};

/// Whether the extreme coefficients of a polynomial are units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monicity {
    Monic,
    NonMonic,
    /// The zero polynomial; never monic.
    Vanishing,
}

pub fn monicity<C: Coefficient>(p: &LaurentPoly<C>) -> Monicity {
    match (p.min_term(), p.max_term()) {
        (Some((_, lo)), Some((_, hi))) if lo.abs().is_one() && hi.abs().is_one() => Monicity::Monic,
        (Some(_), Some(_)) => Monicity::NonMonic,
        _ => Monicity::Vanishing,
    }
}

/// Lowest and highest coefficients are `±1` (in the lexicographic order of
/// exponents when the rank exceeds one).
pub fn is_monic<C: Coefficient>(p: &LaurentPoly<C>) -> bool {
    monicity(p) == Monicity::Monic
}

/// Series of `N × S^1` for a 3-manifold `N` with Alexander polynomial
/// `delta` (one variable), Betti number `b1` and `boundary` torus ends.
///
/// For `b1 > 1` this is `Δ(t^2)`; for `b1 = 1` it is
/// `Δ(t^2) (1 - t^2)^{boundary - 2}`.
pub fn meng_taubes<C: Coefficient>(
    delta: &LaurentPoly<C>,
    b1: usize,
    boundary: usize,
) -> Result<SWSeries<C>> {
    if delta.rank() != 1 {
        return Err(Error::UnsupportedRank {
            expected: 1,
            found: delta.rank(),
        });
    }
    if boundary > 1 {
        return Err(Error::InvalidArgument(format!(
            "boundary count must be 0 or 1, got {boundary}"
        )));
    }
    let num = delta.substitute_power(2)?.normalize();
    match b1 {
        0 => Err(Error::InvalidArgument(
            "the Betti number must be positive".into(),
        )),
        1 => SWSeries::rational(num, vec![Monomial::t(2); 2 - boundary]),
        _ => Ok(SWSeries::finite(num)),
    }
}

/// Coefficients of `sum_i (ρ_i)_* SW_i` convolved, truncated to the box of
/// radius `truncation` in the target lattice.
pub fn glue_sum<C: Coefficient>(
    parts: &[SWSeries<C>],
    maps: &[LatticeMap],
    truncation: u32,
) -> Result<SWSeries<C>> {
    if parts.is_empty() || parts.len() != maps.len() {
        return Err(Error::InvalidArgument(
            "glue_sum needs one map per part".into(),
        ));
    }
    let target = maps[0].target();
    for (s, m) in parts.iter().zip(maps) {
        if m.source() != s.rank() {
            return Err(Error::RankMismatch(m.source(), s.rank()));
        }
        if m.target() != target {
            return Err(Error::RankMismatch(target, m.target()));
        }
    }
    let nums: Vec<LaurentPoly<C>> = parts.iter().map(|s| s.numerator().clone()).collect();
    let dens: Vec<Vec<Monomial>> = parts.iter().map(|s| s.denominators().to_vec()).collect();
    let terms = expand_terms(&nums, &dens, maps, target, truncation)?;
    let p = LaurentPoly::from_terms(
        target,
        terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
    );
    Ok(SWSeries::finite(p).with_trunc(truncation))
}

/// Knot surgery: multiplies by `Δ_K(t^2)` with `t` the first lattice axis.
pub fn knot_surgery_sw<C: Coefficient>(
    sw: &SWSeries<C>,
    delta: &LaurentPoly<C>,
) -> Result<SWSeries<C>> {
    if delta.rank() != 1 {
        return Err(Error::UnsupportedRank {
            expected: 1,
            found: delta.rank(),
        });
    }
    let k = sw.rank();
    let lifted = delta.map_exponents(k, |e| {
        let mut v = vec![0; k];
        v[0] = 2 * e[0];
        v
    });
    sw.mul_poly(&lifted)
}

/// Checks the relation between the Alexander polynomials of `N` and of the
/// manifold `M` obtained by removing a circle, both in one variable.
///
/// With `b1 = 1` the two agree up to units. With `b1 > 1`, `Δ_M` agrees with
/// `(1 - κ) Δ_N` where `κ = t^kappa_exp`; both sides are compared on the box
/// of radius `truncation` after normalization. Betti number zero has no
/// such relation and returns false.
pub fn cor36_check<C: Coefficient>(
    delta_n: &LaurentPoly<C>,
    delta_m: &LaurentPoly<C>,
    b1_n: usize,
    kappa_exp: i64,
    truncation: u32,
) -> bool {
    match b1_n {
        0 => false,
        1 => delta_n.associated(delta_m),
        _ => {
            let kappa = LaurentPoly::monomial(Monomial::var(delta_n.rank(), 0).pow(kappa_exp));
            let lhs = (&(&LaurentPoly::one(delta_n.rank()) - &kappa) * delta_n).normalize();
            let rhs = delta_m.normalize();
            let r = i64::from(truncation);
            let clip = |p: &LaurentPoly<C>| {
                LaurentPoly::from_terms(
                    p.rank(),
                    p.terms()
                        .filter(|(m, _)| m.exponents().iter().all(|x| x.abs() <= r))
                        .map(|(m, c)| (m.clone(), c.clone())),
                )
            };
            clip(&lhs) == clip(&rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly<i64> {
        s.parse().unwrap()
    }

    #[test]
    fn monicity_cases() {
        assert_eq!(monicity(&p("t^2 - t + 1")), Monicity::Monic);
        assert_eq!(monicity(&p("2*t^2 - 5*t + 2")), Monicity::NonMonic);
        assert_eq!(monicity(&p("t - 2")), Monicity::NonMonic);
        assert_eq!(monicity(&LaurentPoly::<i64>::zero(1)), Monicity::Vanishing);
        assert!(is_monic(&p("-1")));
    }

    #[test]
    fn meng_taubes_forms() {
        let tref = p("t^2 - t + 1");
        let s = meng_taubes(&tref, 1, 0).unwrap();
        assert_eq!(s.denominators(), &[Monomial::t(2), Monomial::t(2)]);
        assert_eq!(s.numerator(), &p("t^4 - t^2 + 1"));
        assert_eq!(meng_taubes(&tref, 1, 1).unwrap().denominators().len(), 1);
        assert!(meng_taubes(&tref, 2, 0).unwrap().is_finite());
        assert!(matches!(
            meng_taubes(&tref, 1, 2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            meng_taubes(&tref, 0, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn glue_identity_is_expansion() {
        let s = meng_taubes(&p("t^2 - t + 1"), 1, 1).unwrap();
        let g = glue_sum(std::slice::from_ref(&s), &[LatticeMap::identity(1)], 10).unwrap();
        assert_eq!(g.numerator(), &s.expand(10).unwrap());
        assert_eq!(g.trunc(), 10);
    }

    #[test]
    fn glue_convolves() {
        // (1 + t)(1 - t)^-1 = 1 + 2t + 2t^2 + ...
        let a = SWSeries::finite(p("1 + t"));
        let b = SWSeries::rational(p("1"), vec![Monomial::t(1)]).unwrap();
        let id = LatticeMap::identity(1);
        let g = glue_sum(&[a, b], &[id.clone(), id], 4).unwrap();
        assert_eq!(g.numerator(), &p("1 + 2*t + 2*t^2 + 2*t^3 + 2*t^4"));
    }

    #[test]
    fn glue_with_inclusions() {
        let a = SWSeries::rational(p("1"), vec![Monomial::t(1)]).unwrap();
        let b = SWSeries::finite(p("t^-1 + 1"));
        let maps = [
            LatticeMap::axes(1, 2, &[0], 1).unwrap(),
            LatticeMap::axes(1, 2, &[1], 1).unwrap(),
        ];
        let g = glue_sum(&[a, b], &maps, 2).unwrap();
        let expect: LaurentPoly<i64> = "1 + t1 + t1^2 + t2^-1 + t1*t2^-1 + t1^2*t2^-1"
            .parse()
            .unwrap();
        assert_eq!(g.numerator(), &expect);
    }

    #[test]
    fn glue_rejects_collapsed_direction() {
        let a = SWSeries::rational(LaurentPoly::<i64>::one(2), vec![Monomial::new(vec![1, -1])])
            .unwrap();
        let sum = LatticeMap::new(2, vec![vec![1, 1]]).unwrap();
        assert!(matches!(
            glue_sum(&[a], &[sum], 3),
            Err(Error::Divergence(_))
        ));
        let a = SWSeries::rational(p("1"), vec![Monomial::t(1)]).unwrap();
        let b = SWSeries::rational(p("1"), vec![Monomial::t(-1)]).unwrap();
        let id = LatticeMap::identity(1);
        assert!(matches!(
            glue_sum(&[a, b], &[id.clone(), id], 3),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn surgery_on_product() {
        let x = SWSeries::finite(LaurentPoly::<i64>::one(2));
        let s = knot_surgery_sw(&x, &p("t^2 - t + 1")).unwrap();
        let expect: LaurentPoly<i64> = "t1^4 - t1^2 + 1".parse().unwrap();
        assert_eq!(
            s.numerator().convert::<i64>(),
            expect.map_exponents(2, |e| vec![e[0], 0])
        );
    }

    #[test]
    fn solid_torus_series() {
        let s = meng_taubes(&p("1"), 1, 1).unwrap();
        let odd = LaurentPoly::from_terms(1, (0..10).map(|k| (Monomial::t(2 * k + 1), 1)));
        assert!(s.expand(19).unwrap().associated(&odd));
        // long division of t^4 - t^2 + 1 by 1 - t^2
        let s = meng_taubes(&p("t^2 - t + 1"), 1, 1).unwrap();
        let mut expect = [0i64; 21];
        let num = [1, 0, -1, 0, 1];
        let mut rem = num.to_vec();
        rem.resize(21, 0);
        for k in 0..=20 {
            expect[k] = rem[k];
            if k + 2 <= 20 {
                rem[k + 2] += rem[k];
            }
        }
        let expect = LaurentPoly::from_terms(
            1,
            expect
                .iter()
                .enumerate()
                .map(|(k, &c)| (Monomial::t(k as i64), c)),
        );
        assert_eq!(s.expand(20).unwrap(), expect);
    }

    #[test]
    fn surgery_off_axis_six_terms() {
        let x = SWSeries::finite("t2 + t2^-1".parse::<LaurentPoly<i64>>().unwrap());
        let s = knot_surgery_sw(&x, &p("2*t^2 - 5*t + 2")).unwrap();
        assert_eq!(s.numerator().len(), 6);
        let on_axis = SWSeries::finite(p("t + t^-1"));
        let s = knot_surgery_sw(&on_axis, &p("2*t^2 - 5*t + 2")).unwrap();
        assert_eq!(s.numerator(), &p("2*t^5 - 3*t^3 - 3*t + 2*t^-1"));
        let unknot = knot_surgery_sw(&on_axis, &p("1")).unwrap();
        assert_eq!(unknot, on_axis);
    }

    #[test]
    fn cor36_cases() {
        assert!(cor36_check(&p("1"), &p("1"), 1, 0, 10));
        let d = p("t^2 - t + 1");
        assert!(cor36_check(&d, &p("-t^3 + t^2 - t"), 1, 0, 10));
        assert!(!cor36_check(&d, &p("t^2 - 3*t + 1"), 1, 0, 10));
        let m = &(&LaurentPoly::one(1) - &p("t")) * &d;
        assert!(cor36_check(&d, &m, 2, 1, 10));
        assert!(!cor36_check(&d, &d, 2, 1, 10));
        assert!(!cor36_check(&d, &d, 0, 1, 10));
    }
}
