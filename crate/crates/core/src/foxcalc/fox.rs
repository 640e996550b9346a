use std::collections::BTreeMap;

use super::rep::{identity, mat_mul, IntMat, TwistedRep};
use crate::error::{Error, Result};
use crate::groups::{Presentation, Word};
use crate::ring::{Coefficient, LaurentPoly, Monomial, RingMatrix};

/// An `n x n` block accumulated as integer matrices attached to monomials.
struct Block<C> {
    n: usize,
    rank: usize,
    entries: Vec<BTreeMap<Monomial, C>>,
}

impl<C: Coefficient> Block<C> {
    fn new(n: usize, rank: usize) -> Self {
        Block {
            n,
            rank,
            entries: (0..n * n).map(|_| BTreeMap::new()).collect(),
        }
    }

    fn add(&mut self, mat: &IntMat<C>, mono: &Monomial, negate: bool) {
        for (i, row) in mat.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let slot = self.entries[i * self.n + j]
                    .entry(mono.clone())
                    .or_insert_with(C::zero);
                *slot = if negate {
                    slot.clone() - c.clone()
                } else {
                    slot.clone() + c.clone()
                };
                if slot.is_zero() {
                    self.entries[i * self.n + j].remove(mono);
                }
            }
        }
    }

    fn into_matrix(self) -> RingMatrix<C> {
        let (n, rank) = (self.n, self.rank);
        let mut it = self.entries.into_iter();
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| LaurentPoly::from_terms(rank, it.next().expect("n*n entries")))
                    .collect()
            })
            .collect();
        RingMatrix::from_rows(rank, n, rows)
    }
}

/// Images of `∂w/∂x_j` for every generator `j`, in one pass over `w`.
///
/// Uses `∂(uv) = ∂u + u ∂v` and `∂(x^-1)/∂x = -x^-1`.
pub fn fox_jacobian_row<C: Coefficient>(
    w: &Word,
    rep: &TwistedRep<C>,
) -> Result<Vec<RingMatrix<C>>> {
    let n = rep.dim();
    let mut blocks: Vec<Block<C>> = (0..rep.generators())
        .map(|_| Block::new(n, rep.rank()))
        .collect();
    let mut prefix = identity::<C>(n);
    let mut mono = Monomial::one(rep.rank());
    for (g, s) in w.letters() {
        if g >= rep.generators() {
            return Err(Error::GeneratorOutOfRange {
                index: g,
                count: rep.generators(),
            });
        }
        let (a, f) = rep.letter(g, s);
        if s > 0 {
            blocks[g].add(&prefix, &mono, false);
            prefix = mat_mul(&prefix, a);
            mono = mono.mul(&f);
        } else {
            prefix = mat_mul(&prefix, a);
            mono = mono.mul(&f);
            blocks[g].add(&prefix, &mono, true);
        }
    }
    Ok(blocks.into_iter().map(Block::into_matrix).collect())
}

/// Image of the Fox derivative `∂w/∂x_gen` under `rep`, an `n x n` block.
pub fn fox_derivative<C: Coefficient>(
    w: &Word,
    gen: usize,
    rep: &TwistedRep<C>,
) -> Result<RingMatrix<C>> {
    if gen >= rep.generators() {
        return Err(Error::GeneratorOutOfRange {
            index: gen,
            count: rep.generators(),
        });
    }
    Ok(fox_jacobian_row(w, rep)?.swap_remove(gen))
}

/// Twisted Fox matrix: block `(i, j)` is the image of `∂r_i/∂x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix<C> {
    pub matrix: RingMatrix<C>,
    /// Side length of each block (the representation dimension).
    pub block: usize,
    pub relators: usize,
    pub generators: usize,
}

impl<C: Coefficient> AlexanderMatrix<C> {
    /// The matrix with generator `j`'s column block removed.
    pub fn without_generator(&self, j: usize) -> RingMatrix<C> {
        let rows: Vec<usize> = (0..self.matrix.rows()).collect();
        let cols: Vec<usize> = (0..self.matrix.cols())
            .filter(|c| c / self.block != j)
            .collect();
        self.matrix.submatrix(&rows, &cols)
    }
}

pub fn twisted_alexander_matrix<C: Coefficient>(
    p: &Presentation,
    rep: &TwistedRep<C>,
) -> Result<AlexanderMatrix<C>> {
    rep.check(p)?;
    let n = rep.dim();
    let mut m = RingMatrix::zeros(p.relators().len() * n, p.generators() * n, rep.rank());
    for (i, r) in p.relators().iter().enumerate() {
        for (j, block) in fox_jacobian_row(r, rep)?.iter().enumerate() {
            m.set_block(i * n, j * n, block);
        }
    }
    Ok(AlexanderMatrix {
        matrix: m,
        block: n,
        relators: p.relators().len(),
        generators: p.generators(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::foxcalc::rep_from_epimorphism;
    use crate::groups::PDCode;
    use crate::quotients::{Epimorphism, FiniteGroup};

    fn p1(s: &str) -> LaurentPoly<i64> {
        s.parse().unwrap()
    }

    #[test]
    fn basic_derivatives() {
        let rep = TwistedRep::<i64>::abelian(&[1, 1]);
        let x = Word::generator(0);
        assert_eq!(fox_derivative(&x, 0, &rep).unwrap().get(0, 0), &p1("1"));
        let xy: Word = "x1 x2".parse().unwrap();
        assert_eq!(fox_derivative(&xy, 1, &rep).unwrap().get(0, 0), &p1("t"));
        let xinv = Word::power(0, -1);
        assert_eq!(
            fox_derivative(&xinv, 0, &rep).unwrap().get(0, 0),
            &p1("-t^-1")
        );
    }

    #[test]
    fn commutator_in_two_variables() {
        let rep = TwistedRep::<i64>::new(
            vec![vec![vec![1]], vec![vec![1]]],
            vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])],
        )
        .unwrap();
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        let p = Presentation::new(2, vec![c.clone()]).unwrap();
        let m = twisted_alexander_matrix(&p, &rep).unwrap().matrix;
        let one = LaurentPoly::<i64>::one(2);
        let t1 = LaurentPoly::monomial(Monomial::new(vec![1, 0]));
        let t2 = LaurentPoly::monomial(Monomial::new(vec![0, 1]));
        assert_eq!(m.get(0, 0), &(&one - &t2));
        assert_eq!(m.get(0, 1), &(&t1 - &one));
    }

    #[test]
    fn empty_and_trefoil_shapes() {
        let p = Presentation::new(1, vec![]).unwrap();
        let m = twisted_alexander_matrix(&p, &TwistedRep::<i64>::abelian(&[1])).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (0, 1));
        let t = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger();
        let m = twisted_alexander_matrix(&t, &TwistedRep::<i64>::abelian(&[1, 1, 1])).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (3, 3));
        // relator o a o^-1 c^-1 differentiates to o - 1 (over), o (in), -1 (out)
        for i in 0..3 {
            let row: Vec<&LaurentPoly<i64>> = (0..3).map(|j| m.matrix.get(i, j)).collect();
            let mut sorted: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            sorted.sort();
            assert_eq!(
                sorted,
                ["-1", "-t + 1", "t"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn rejects_incompatible_rep() {
        let p = Presentation::new(1, vec![Word::power(0, 2)]).unwrap();
        assert!(matches!(
            twisted_alexander_matrix(&p, &TwistedRep::<i64>::abelian(&[1])),
            Err(Error::InvalidRepresentation { relator: 0 })
        ));
    }

    /// `sum_j ∂w/∂x_j (X_j - I) = W - I`.
    #[test]
    fn fundamental_identity_random_words() {
        let free = Presentation::new(3, vec![]).unwrap();
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let e = Epimorphism::new(&free, s3, vec![1, 2, 3]).unwrap();
        let rep: TwistedRep<i64> = rep_from_epimorphism(&free, &e, &[1, -1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = RingMatrix::identity(6, 1);
        for _ in 0..40 {
            let len = rng.gen_range(0..10);
            let letters: Vec<i64> = (0..len)
                .map(|_| rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let w = Word::from_letters(&letters);
            let row = fox_jacobian_row(&w, &rep).unwrap();
            let mut lhs = RingMatrix::zeros(6, 6, 1);
            for (j, d) in row.iter().enumerate() {
                let xj = &rep.image(&Word::generator(j)).unwrap() - &id;
                lhs = &lhs + &(d * &xj);
            }
            assert_eq!(lhs, &rep.image(&w).unwrap() - &id, "{w}");
        }
    }
}
