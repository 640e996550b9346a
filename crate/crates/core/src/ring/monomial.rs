use std::fmt;

/// A lattice element of `Z^k`, written multiplicatively as `t1^e1 * ... * tk^ek`.
///
/// Ordering is lexicographic on the exponent vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    /// `t_i` in a rank-`rank` lattice.
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Monomial(e)
    }

    /// Rank-1 monomial `t^e`.
    pub fn t(e: i64) -> Self {
        Monomial(vec![e])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.rank(), other.rank());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Exponent of a rank-1 monomial.
    pub fn degree(&self) -> i64 {
        self.0[0]
    }
}

impl fmt::Display for Monomial {
    /// Prints `1` for the identity, otherwise factors joined by `*`.
    /// Rank 1 uses the bare variable name `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if self.0.len() == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t{}", i + 1)?;
            }
            if e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}
