use std::ops::{Add, Mul, Neg, Sub};

use super::Coefficient;

/// Dense univariate polynomial over an integer coefficient type, stored from
/// the constant term upward with no trailing zeros.
///
/// This is the workhorse behind rank-1 gcds and determinants; the sparse
/// [`super::LaurentPoly`] converts into it with an explicit shift.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct DensePoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> DensePoly<C> {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &C {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Largest `k` with `t^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out the largest power of `t`.
    pub fn strip_t(&self) -> (usize, Self) {
        let v = self.valuation();
        if self.is_zero() {
            return (0, self.clone());
        }
        (
            v,
            DensePoly {
                coeffs: self.coeffs[v..].to_vec(),
            },
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs }
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &C) -> Self {
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() / c.clone()).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[t]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.degree().unwrap();
        let lc = d.lc().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return None;
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![C::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder `prem(self, d)` = remainder of `lc(d)^(deg self - deg d + 1) * self` by `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let Some(sd) = self.degree() else {
            return Self::zero();
        };
        if sd < dd {
            return self.clone();
        }
        let lc = d.lc().clone();
        let mut rem = self.coeffs.clone();
        let mut top = sd;
        loop {
            if rem.len() <= dd {
                break;
            }
            let lead = rem[top].clone();
            // rem = lc * rem - lead * t^(top - dd) * d
            for c in rem.iter_mut() {
                *c = c.clone() * lc.clone();
            }
            let off = top - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[off + j] = rem[off + j].clone() - lead.clone() * dc.clone();
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            top = rem.len() - 1;
        }
        Self::from_coeffs(rem)
    }

    /// Greatest common divisor in `Z[t]` (positive leading coefficient),
    /// via the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other
                .primitive_part()
                .scale(&other.content().abs())
                .normalized_sign();
        }
        if other.is_zero() {
            return self.clone().normalized_sign();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::constant(c);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    fn normalized_sign(self) -> Self {
        if !self.is_zero() && self.lc().is_negative() {
            -self
        } else {
            self
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at an integer point.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<C: Coefficient> Add for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn add(self, rhs: Self) -> DensePoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a.clone() + b.clone()),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl<C: Coefficient> Sub for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn sub(self, rhs: Self) -> DensePoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a.clone() - b.clone()),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(-b.clone()),
                (None, None) => unreachable!(),
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl<C: Coefficient> Mul for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn mul(self, rhs: Self) -> DensePoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl<C: Coefficient> Neg for DensePoly<C> {
    type Output = DensePoly<C>;
    fn neg(self) -> DensePoly<C> {
        DensePoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly<i64> {
        DensePoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // t^2 - 1 and t^3 - 1 share t - 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_content() {
        assert_eq!(p(&[0, 2]).gcd(&p(&[0, 0, 0, 4])), p(&[0, 2]));
        assert_eq!(p(&[6, 3]).gcd(&p(&[4, 2])), p(&[2, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -1, 1]);
        let b = p(&[1, 1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, p(&[1, 0, 1, 0, 1]));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(p(&[1, 2]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn pseudo_remainder_vanishes_on_multiples() {
        let a = p(&[3, 0, 2]);
        let b = p(&[-1, 5, 7, 1]);
        assert!((&a * &b).pseudo_rem(&a).is_zero());
    }
}
