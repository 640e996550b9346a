use std::fmt;
use std::ops::{Add, Mul, Sub};

use itertools::Itertools;

use super::{Coefficient, LaurentPoly};
use crate::error::{Error, Result};

/// Dense matrix over the Laurent ring `Z[Z^k]`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix<C> {
    rows: usize,
    cols: usize,
    rank: usize,
    entries: Vec<LaurentPoly<C>>,
}

impl<C: Coefficient> RingMatrix<C> {
    pub fn zeros(rows: usize, cols: usize, rank: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            rank,
            entries: vec![LaurentPoly::zero(rank); rows * cols],
        }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        let mut m = Self::zeros(n, n, rank);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(rank));
        }
        m
    }

    /// Builds from rows; every row must have `cols` entries of rank `rank`.
    pub fn from_rows(rank: usize, cols: usize, rows: Vec<Vec<LaurentPoly<C>>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for e in row {
                debug_assert_eq!(e.rank(), rank);
                entries.push(e);
            }
        }
        RingMatrix {
            rows: n,
            cols,
            rank,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Rank of the lattice of exponents, not the matrix rank.
    pub fn lattice_rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly<C>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.rank);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len(), self.rank);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let r: Vec<usize> = (r0..r0 + rows).collect();
        let c: Vec<usize> = (c0..c0 + cols).collect();
        self.submatrix(&r, &c)
    }

    /// Stacks matrices vertically.
    pub fn vstack(parts: &[Self]) -> Self {
        let cols = parts[0].cols;
        let rank = parts[0].rank;
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            entries.extend(p.entries.iter().cloned());
            rows += p.rows;
        }
        RingMatrix {
            rows,
            cols,
            rank,
            entries,
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<LaurentPoly<C>> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.rank));
        }
        let mut a: Vec<Vec<LaurentPoly<C>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = LaurentPoly::one(self.rank);
        let mut sign = false;
        for k in 0..n {
            // Fewest terms keeps intermediate products small.
            let Some(piv) = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len())
            else {
                return Ok(LaurentPoly::zero(self.rank));
            };
            if piv != k {
                a.swap(piv, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero(self.rank);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    /// Canonical gcd of all `size x size` minors (rank 1). Each minor is a
    /// Bareiss determinant; see [`super::max_minor_gcd`] for large matrices.
    pub fn minor_gcd(&self, size: usize) -> Result<LaurentPoly<C>> {
        if self.rank != 1 {
            return Err(Error::UnsupportedRank {
                expected: 1,
                found: self.rank,
            });
        }
        if size > self.rows.min(self.cols) {
            return Err(Error::InvalidArgument(format!(
                "minor size {size} exceeds {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut g = LaurentPoly::zero(1);
        if size == 0 {
            return Ok(LaurentPoly::one(1));
        }
        for rs in (0..self.rows).combinations(size) {
            for cs in (0..self.cols).combinations(size) {
                let d = self.submatrix(&rs, &cs).det()?;
                g = g.gcd(&d)?;
                if g.is_one() {
                    return Ok(g);
                }
            }
        }
        Ok(g)
    }

    pub fn map<F: Fn(&LaurentPoly<C>) -> LaurentPoly<C>>(&self, f: F) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<C: Coefficient> Add for &RingMatrix<C> {
    type Output = RingMatrix<C>;
    fn add(self, rhs: Self) -> RingMatrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<C: Coefficient> Sub for &RingMatrix<C> {
    type Output = RingMatrix<C>;
    fn sub(self, rhs: Self) -> RingMatrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<C: Coefficient> Mul for &RingMatrix<C> {
    type Output = RingMatrix<C>;
    fn mul(self, rhs: Self) -> RingMatrix<C> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RingMatrix::zeros(self.rows, rhs.cols, self.rank);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for RingMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Monomial;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = LaurentPoly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> RingMatrix<BigInt> {
        let cols = rows[0].len();
        RingMatrix::from_rows(
            1,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &RingMatrix<BigInt>) -> P {
        let n = a.rows();
        if n == 0 {
            return P::one(a.lattice_rank());
        }
        let mut acc = P::zero(a.lattice_rank());
        for j in 0..n {
            let rest_rows: Vec<usize> = (1..n).collect();
            let rest_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = a.get(0, j) * &cofactor_det(&a.submatrix(&rest_rows, &rest_cols));
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(m(&[&["t - 1"]]).minor_gcd(1).unwrap(), p("1 - t"));
        assert_eq!(
            m(&[&["t - 1", "0"], &["0", "t - 1"]]).minor_gcd(2).unwrap(),
            p("t^2 - 2*t + 1")
        );
        assert!(m(&[&["t", "1", "2"], &["0", "0", "0"]])
            .minor_gcd(2)
            .unwrap()
            .is_zero());
        assert!(m(&[&["t"]]).minor_gcd(0).unwrap().is_one());
        assert!(m(&[&["t"]]).minor_gcd(2).is_err());
    }

    #[test]
    fn multivariate_det() {
        let a = RingMatrix::from_rows(
            2,
            2,
            [["t1", "t2 - 1"], ["t1*t2", "t2^-1"]]
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| P::parse_with_rank(s, 2).unwrap())
                        .collect()
                })
                .collect(),
        );
        assert_eq!(a.det().unwrap(), cofactor_det(&a));
    }

    fn arb_entry(rank: usize) -> impl Strategy<Value = P> {
        proptest::collection::vec((proptest::collection::vec(-2i64..3, rank), -4i64..5), 0..3)
            .prop_map(move |ts| {
                P::from_terms(
                    rank,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::new(e), BigInt::from(c))),
                )
            })
    }

    fn arb_square(rank: usize) -> impl Strategy<Value = RingMatrix<BigInt>> {
        (1usize..5).prop_flat_map(move |n| {
            proptest::collection::vec(arb_entry(rank), n * n).prop_map(move |es| {
                RingMatrix::from_rows(rank, n, es.chunks(n).map(|r| r.to_vec()).collect())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_cofactor(a in arb_square(1)) {
            prop_assert_eq!(a.det().unwrap(), cofactor_det(&a));
        }

        #[test]
        fn bareiss_matches_cofactor_rank2(a in arb_square(2)) {
            prop_assert_eq!(a.det().unwrap(), cofactor_det(&a));
        }
    }
}
