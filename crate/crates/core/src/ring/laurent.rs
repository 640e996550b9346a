use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{Coefficient, DensePoly, Monomial};
use crate::error::{Error, Result};

/// Integer Laurent polynomial in `k` variables: a finitely supported map from
/// `Z^k` to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    rank: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, C::one())
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::term(Monomial::one(rank), c)
    }

    /// Single term `c * m`.
    pub fn term(m: Monomial, c: C) -> Self {
        let rank = m.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { rank, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    /// The rank-1 variable `t`.
    pub fn t() -> Self {
        Self::monomial(Monomial::t(1))
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(rank: usize, terms: I) -> Self {
        let mut p = Self::zero(rank);
        for (m, c) in terms {
            debug_assert_eq!(m.rank(), rank);
            p.add_term(m, c);
        }
        p
    }

    /// Rank-1 polynomial `sum coeffs[i] * t^(low + i)`.
    pub fn from_coeffs(low: i64, coeffs: &[C]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::t(low + i as i64), c.clone())),
        )
    }

    pub fn from_dense(low: i64, p: &DensePoly<C>) -> Self {
        Self::from_coeffs(low, p.coeffs())
    }

    /// Rank-1 only: `(v, q)` with `self = t^v * q` and `q(0) != 0`.
    pub fn to_dense(&self) -> (i64, DensePoly<C>) {
        debug_assert_eq!(self.rank, 1);
        let Some((low, _)) = self.terms.first_key_value() else {
            return (0, DensePoly::zero());
        };
        let low = low.degree();
        let high = self.terms.last_key_value().unwrap().0.degree();
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (m, c) in &self.terms {
            coeffs[(m.degree() - low) as usize] = c.clone();
        }
        (low, DensePoly::from_coeffs(coeffs))
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// `±m` for a monomial `m`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Lexicographically smallest and largest terms.
    pub fn min_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.first_key_value()
    }

    pub fn max_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    /// Rank-1 exponent range `(low, high)`; `None` for zero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((self.min_term()?.0.degree(), self.max_term()?.0.degree()))
    }

    /// `high - low` for rank 1; zero polynomials report 0.
    pub fn span(&self) -> i64 {
        self.degree_range().map_or(0, |(a, b)| b - a)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, u: &Monomial) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(u), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at `t_i = 1`.
    pub fn eval_ones(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> C {
        self.terms.values().fold(C::zero(), |g, c| g.gcd(c))
    }

    /// Canonical representative of the class `{±m·self}`: the lex-minimal
    /// exponent becomes zero and its coefficient positive.
    pub fn normalize(&self) -> Self {
        let Some((low, c)) = self.min_term() else {
            return self.clone();
        };
        let shifted = self.mul_monomial(&low.inv());
        if c.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_term()
            .is_none_or(|(m, c)| m.is_one() && c.is_positive())
    }

    /// Equality up to multiplication by `±m`.
    pub fn associated(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    fn require_rank1(&self) -> Result<()> {
        if self.rank != 1 {
            return Err(Error::UnsupportedRank {
                expected: 1,
                found: self.rank,
            });
        }
        Ok(())
    }

    /// Canonical gcd in `Z[t, t^-1]`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.require_rank1()?;
        other.require_rank1()?;
        if self.is_zero() {
            return Ok(other.normalize());
        }
        if other.is_zero() {
            return Ok(self.normalize());
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Ok(Self::from_dense(0, &a.gcd(&b)).normalize())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Lex order on `Z^k` is a group order, so leading and trailing terms are
    /// multiplicative and bound the quotient's support.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        if d.terms.len() == 1 {
            let (m, c) = d.terms.iter().next().unwrap();
            let mut out = BTreeMap::new();
            for (pm, pc) in &self.terms {
                let (q, r) = pc.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.insert(pm.mul(&m.inv()), q);
            }
            return Some(LaurentPoly {
                rank: self.rank,
                terms: out,
            });
        }
        if self.rank == 1 {
            let (sv, sp) = self.to_dense();
            let (dv, dp) = d.to_dense();
            return sp.div_exact(&dp).map(|q| Self::from_dense(sv - dv, &q));
        }
        let (dlm, dlc) = d.max_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let floor = self
            .min_term()
            .unwrap()
            .0
            .mul(&d.min_term().unwrap().0.inv());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.rank);
        while let Some((rm, rc)) = rem.max_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.mul(&dlm.inv());
            if qm < floor {
                return None;
            }
            let (qc, r) = rc.div_rem(&dlc);
            if !r.is_zero() {
                return None;
            }
            let qt = Self::term(qm, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Ring endomorphism `t_i -> t_i^d`.
    pub fn substitute_power(&self, d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::InvalidArgument(format!(
                "substitution power must be positive, got {d}"
            )));
        }
        Ok(self.map_exponents(self.rank, |e| e.iter().map(|x| x * d).collect()))
    }

    /// `t_i -> t_i^-1`.
    pub fn reflect(&self) -> Self {
        self.map_exponents(self.rank, |e| e.iter().map(|x| -x).collect())
    }

    /// Pushes forward along a lattice homomorphism given on exponent vectors.
    pub fn map_exponents<F: Fn(&[i64]) -> Vec<i64>>(&self, rank: usize, f: F) -> Self {
        Self::from_terms(
            rank,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(f(m.exponents())), c.clone())),
        )
    }

    /// Converts the coefficients into another integer type.
    pub fn convert<D: Coefficient>(&self) -> LaurentPoly<D> {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.clone(),
                        D::from_i128(c.to_i128().expect("coefficient overflow")).unwrap(),
                    )
                })
                .collect(),
        }
    }

    /// Parses with an explicit rank (needed when the text is a constant or
    /// omits high variables).
    pub fn parse_with_rank(s: &str, rank: usize) -> Result<Self> {
        let terms = parse_terms::<C>(s)?;
        let mut p = Self::zero(rank);
        for (vars, c) in terms {
            let mut e = vec![0i64; rank];
            for (v, k) in vars {
                let idx = match v {
                    Var::Bare => 0,
                    Var::Indexed(i) => i,
                };
                if idx >= rank {
                    return Err(Error::Parse(format!(
                        "variable index {} exceeds rank {rank}",
                        idx + 1
                    )));
                }
                e[idx] += k;
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut out = LaurentPoly::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    /// Terms in decreasing lex order, e.g. `t^2 - t + 1` or `2*t1*t2^-1 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Rank is inferred: bare `t` means rank 1, otherwise the largest `tN` seen.
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms::<C>(s)?;
        let mut rank = 1;
        for (vars, _) in &terms {
            for (v, _) in vars {
                if let Var::Indexed(i) = v {
                    rank = rank.max(i + 1);
                }
            }
        }
        Self::parse_with_rank(s, rank)
    }
}

#[derive(Clone, Copy, Debug)]
enum Var {
    Bare,
    Indexed(usize),
}

type ParsedTerm<C> = (Vec<(Var, i64)>, C);

fn parse_terms<C: Coefficient>(s: &str) -> Result<Vec<ParsedTerm<C>>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split on top-level signs, keeping a sign that follows '^' with its exponent.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if prev.is_some() {
                return Err(Error::Parse(format!("unexpected sign in {s:?}")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    pieces.push((neg, cur));

    let mut out = Vec::new();
    for (neg, body) in pieces {
        let mut coeff = C::one();
        let mut vars = Vec::new();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {s:?}")));
            }
            if factor.starts_with('t') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: i64 = e
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                        (n, e)
                    }
                    None => (factor, 1),
                };
                let var = if name == "t" {
                    Var::Bare
                } else {
                    let idx: usize = name[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {name:?}")))?;
                    if idx == 0 {
                        return Err(Error::Parse("variables are numbered from t1".into()));
                    }
                    Var::Indexed(idx - 1)
                };
                vars.push((var, exp));
            } else {
                let c = C::from_str_radix(factor, 10)
                    .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                coeff = coeff * c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.push((vars, coeff));
    }
    Ok(out)
}
