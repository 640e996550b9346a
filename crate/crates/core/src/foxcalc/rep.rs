use crate::error::{Error, Result};
use crate::groups::{Presentation, Word};
use crate::quotients::Epimorphism;
use crate::ring::{Coefficient, LaurentPoly, Monomial, RingMatrix};

/// Square integer matrix, row-major.
pub type IntMat<C> = Vec<Vec<C>>;

pub(crate) fn identity<C: Coefficient>(n: usize) -> IntMat<C> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { C::one() } else { C::zero() })
                .collect()
        })
        .collect()
}

/// Product skipping zero entries of the left factor; permutation matrices
/// cost `O(n^2)`.
pub(crate) fn mat_mul<C: Coefficient>(a: &IntMat<C>, b: &IntMat<C>) -> IntMat<C> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![C::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] = out[i][j].clone() + x.clone() * y.clone();
                }
            }
        }
    }
    out
}

/// Inverse over `Z` by Euclidean row reduction of `[a | I]`; `None` unless
/// `det a = ±1`.
pub(crate) fn unimodular_inverse<C: Coefficient>(a: &IntMat<C>) -> Option<IntMat<C>> {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a
        .iter()
        .zip(identity::<C>(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for k in 0..n {
        loop {
            let nonzero: Vec<usize> = (k..n).filter(|&i| !m[i][k].is_zero()).collect();
            let &p = nonzero.iter().min_by_key(|&&i| m[i][k].abs())?;
            if nonzero.len() == 1 {
                m.swap(k, p);
                break;
            }
            for &i in &nonzero {
                if i != p {
                    let q = m[i][k].div_floor(&m[p][k]);
                    for j in 0..2 * n {
                        let v = m[i][j].clone() - q.clone() * m[p][j].clone();
                        m[i][j] = v;
                    }
                }
            }
        }
        if !m[k][k].abs().is_one() {
            return None;
        }
        if m[k][k].is_negative() {
            for v in m[k].iter_mut() {
                *v = -v.clone();
            }
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let q = m[i][k].clone();
                for j in 0..2 * n {
                    let v = m[i][j].clone() - q.clone() * m[k][j].clone();
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Representation `α ⊗ φ` of a presented group into `GL(n, Z[Z^k])`: each
/// generator goes to an integer matrix times a lattice monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedRep<C> {
    dim: usize,
    rank: usize,
    alpha: Vec<IntMat<C>>,
    alpha_inv: Vec<IntMat<C>>,
    phi: Vec<Monomial>,
}

impl<C: Coefficient> TwistedRep<C> {
    pub fn new(alpha: Vec<IntMat<C>>, phi: Vec<Monomial>) -> Result<Self> {
        if alpha.len() != phi.len() {
            return Err(Error::InvalidArgument(
                "alpha and phi cover different generator counts".into(),
            ));
        }
        let dim = alpha.first().map_or(1, Vec::len);
        let rank = phi.first().map_or(1, Monomial::rank);
        if phi.iter().any(|m| m.rank() != rank) {
            return Err(Error::InvalidArgument("phi monomials of mixed rank".into()));
        }
        let mut alpha_inv = Vec::with_capacity(alpha.len());
        for (g, a) in alpha.iter().enumerate() {
            if a.len() != dim || a.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidArgument(format!(
                    "alpha(x{}) is not {dim}x{dim}",
                    g + 1
                )));
            }
            let inv = unimodular_inverse(a).ok_or_else(|| {
                Error::InvalidArgument(format!("alpha(x{}) is not invertible over Z", g + 1))
            })?;
            alpha_inv.push(inv);
        }
        Ok(TwistedRep {
            dim,
            rank,
            alpha,
            alpha_inv,
            phi,
        })
    }

    /// One-dimensional representation `x_i -> t^{phi_i}`.
    pub fn abelian(phi: &[i64]) -> Self {
        TwistedRep {
            dim: 1,
            rank: 1,
            alpha: vec![identity(1); phi.len()],
            alpha_inv: vec![identity(1); phi.len()],
            phi: phi.iter().map(|&e| Monomial::new(vec![e])).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, g: usize) -> &IntMat<C> {
        &self.alpha[g]
    }

    pub fn phi(&self, g: usize) -> &Monomial {
        &self.phi[g]
    }

    /// `(α(x^s), φ(x^s))` for a letter.
    pub(crate) fn letter(&self, g: usize, s: i64) -> (&IntMat<C>, Monomial) {
        if s > 0 {
            (&self.alpha[g], self.phi[g].clone())
        } else {
            (&self.alpha_inv[g], self.phi[g].inv())
        }
    }

    /// Integer matrix and monomial of a word.
    pub fn eval_parts(&self, w: &Word) -> Result<(IntMat<C>, Monomial)> {
        let mut mat = identity(self.dim);
        let mut mono = Monomial::one(self.rank);
        for (g, s) in w.letters() {
            if g >= self.generators() {
                return Err(Error::GeneratorOutOfRange {
                    index: g,
                    count: self.generators(),
                });
            }
            let (a, f) = self.letter(g, s);
            mat = mat_mul(&mat, a);
            mono = mono.mul(&f);
        }
        Ok((mat, mono))
    }

    /// `(α ⊗ φ)(w)` as a matrix over the Laurent ring.
    pub fn image(&self, w: &Word) -> Result<RingMatrix<C>> {
        let (mat, mono) = self.eval_parts(w)?;
        Ok(scaled(&mat, &mono))
    }

    /// Every relator must map to the identity matrix and the trivial monomial.
    pub fn check(&self, p: &Presentation) -> Result<()> {
        if p.generators() != self.generators() {
            return Err(Error::InvalidArgument(format!(
                "representation has {} generators, presentation {}",
                self.generators(),
                p.generators()
            )));
        }
        let id = identity::<C>(self.dim);
        for (i, r) in p.relators().iter().enumerate() {
            let (mat, mono) = self.eval_parts(r)?;
            if mat != id || !mono.is_one() {
                return Err(Error::InvalidRepresentation { relator: i });
            }
        }
        Ok(())
    }
}

/// `mono * mat` as a Laurent matrix.
pub(crate) fn scaled<C: Coefficient>(mat: &IntMat<C>, mono: &Monomial) -> RingMatrix<C> {
    let rank = mono.rank();
    let rows = mat
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| LaurentPoly::term(mono.clone(), c.clone()))
                .collect()
        })
        .collect();
    RingMatrix::from_rows(rank, mat.len(), rows)
}

/// Regular representation of `α` (left multiplication on `Z[G]`) tensored
/// with `x_i -> t^{phi_i}`.
pub fn rep_from_epimorphism<C: Coefficient>(
    p: &Presentation,
    alpha: &Epimorphism,
    phi: &[i64],
) -> Result<TwistedRep<C>> {
    if phi.len() != p.generators() || alpha.images().len() != p.generators() {
        return Err(Error::InvalidArgument(
            "phi and alpha need one entry per generator".into(),
        ));
    }
    for (i, r) in p.relators().iter().enumerate() {
        let sums = r.exponent_sums(p.generators());
        if sums.iter().zip(phi).map(|(a, b)| a * b).sum::<i64>() != 0 {
            return Err(Error::InvalidRepresentation { relator: i });
        }
    }
    let g = alpha.group();
    let n = g.order();
    let alpha_mats = alpha
        .images()
        .iter()
        .map(|&x| {
            let mut m = vec![vec![C::zero(); n]; n];
            for j in 0..n {
                m[g.mul(x, j)][j] = C::one();
            }
            m
        })
        .collect();
    let phis = phi.iter().map(|&e| Monomial::new(vec![e])).collect();
    TwistedRep::new(alpha_mats, phis)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::PDCode;
    use crate::quotients::{enumerate_epimorphisms, FiniteGroup};

    #[test]
    fn inverse_of_unimodular() {
        let a: IntMat<i64> = vec![vec![2, 3], vec![1, 2]];
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(unimodular_inverse(&vec![vec![2i64, 0], vec![0, 1]]).is_none());
        let b: IntMat<i64> = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        assert_eq!(mat_mul(&b, &unimodular_inverse(&b).unwrap()), identity(3));
    }

    #[test]
    fn trivial_group_rep() {
        let p = Presentation::new(1, vec![]).unwrap();
        let e = Epimorphism::new(&p, Arc::new(FiniteGroup::trivial()), vec![0]).unwrap();
        let rep: TwistedRep<i64> = rep_from_epimorphism(&p, &e, &[1]).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.alpha(0), &identity(1));
    }

    #[test]
    fn trefoil_regular_reps_kill_relators() {
        let p = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger();
        for (group, n) in [(FiniteGroup::cyclic(2), 2), (FiniteGroup::symmetric(3), 6)] {
            let epis = enumerate_epimorphisms(&p, &group, 10_000).unwrap();
            assert!(!epis.is_empty());
            for e in &epis {
                let rep: TwistedRep<i64> = rep_from_epimorphism(&p, e, &[1, 1, 1]).unwrap();
                assert_eq!(rep.dim(), n);
                rep.check(&p).unwrap();
            }
        }
    }

    #[test]
    fn phi_must_kill_relators() {
        let p = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger();
        let e = enumerate_epimorphisms(&p, &FiniteGroup::trivial(), 10)
            .unwrap()
            .remove(0);
        assert!(matches!(
            rep_from_epimorphism::<i64>(&p, &e, &[1, 2, 1]),
            Err(Error::InvalidRepresentation { .. })
        ));
    }
}
