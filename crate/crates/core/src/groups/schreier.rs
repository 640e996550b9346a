use super::{CosetTable, Presentation, Word};
use crate::error::{Error, Result};

/// Schreier transversal and generator numbering for a complete coset table.
///
/// The transversal is the breadth-first spanning tree from coset 0. Pair
/// `(c, x)` names the element `u_c x u_{cx}^-1`; pairs on tree edges are
/// trivial and get no generator.
#[derive(Clone, Debug)]
pub struct SchreierSystem {
    table: CosetTable,
    transversal: Vec<Word>,
    /// `symbol[c][x]`: generator index of `(c, x)`, or `None` on tree edges.
    symbol: Vec<Vec<Option<usize>>>,
    words: Vec<Word>,
}

impl SchreierSystem {
    pub fn new(table: &CosetTable) -> Result<Self> {
        if !table.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let n = table.index();
        let g = table.generators();
        let mut transversal = vec![None; n];
        let mut tree = vec![vec![false; g]; n];
        transversal[0] = Some(Word::empty());
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let c = queue[k];
            k += 1;
            for x in 0..g {
                for sign in [1, -1] {
                    let d = table.act(c, x, sign);
                    if transversal[d].is_none() {
                        let u = transversal[c].as_ref().unwrap().mul(&Word::power(x, sign));
                        transversal[d] = Some(u);
                        if sign == 1 {
                            tree[c][x] = true;
                        } else {
                            tree[d][x] = true;
                        }
                        queue.push(d);
                    }
                }
            }
        }
        let transversal: Vec<Word> = transversal
            .into_iter()
            .map(|u| u.expect("complete tables are connected"))
            .collect();
        let mut symbol = vec![vec![None; g]; n];
        let mut words = Vec::new();
        for c in 0..n {
            for x in 0..g {
                if !tree[c][x] {
                    let d = table.act(c, x, 1);
                    symbol[c][x] = Some(words.len());
                    words.push(
                        transversal[c]
                            .mul(&Word::generator(x))
                            .mul(&transversal[d].inverse()),
                    );
                }
            }
        }
        Ok(SchreierSystem {
            table: table.clone(),
            transversal,
            symbol,
            words,
        })
    }

    /// Schreier generators as words in the original generators.
    pub fn generator_words(&self) -> &[Word] {
        &self.words
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// Rewrites `w`, read from coset `c`, in the Schreier generators.
    pub fn rewrite(&self, c: usize, w: &Word) -> Word {
        let mut cur = c;
        let mut out = Vec::new();
        for (x, s) in w.letters() {
            if s > 0 {
                if let Some(k) = self.symbol[cur][x] {
                    out.push((k, 1));
                }
                cur = self.table.act(cur, x, 1);
            } else {
                let prev = self.table.act(cur, x, -1);
                if let Some(k) = self.symbol[prev][x] {
                    out.push((k, -1));
                }
                cur = prev;
            }
        }
        Word::new(out)
    }
}

/// Presentation of the subgroup with coset table `table`: one rewritten
/// relator per (coset, relator) pair.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<Presentation> {
    let sys = SchreierSystem::new(table)?;
    let mut rels = Vec::with_capacity(table.index() * p.relators().len());
    for c in 0..table.index() {
        for r in p.relators() {
            rels.push(sys.rewrite(c, r));
        }
    }
    Presentation::new(sys.generator_words().len(), rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{todd_coxeter, PDCode};
    use num_bigint::BigInt;

    #[test]
    fn free_cyclic_double_cover() {
        let p = Presentation::new(1, vec![]).unwrap();
        let t = CosetTable::from_actions(&[vec![1, 0]]).unwrap();
        let q = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(q.generators(), 1);
        assert!(q.relators().is_empty());
        let sys = SchreierSystem::new(&t).unwrap();
        assert_eq!(sys.generator_words(), &[Word::power(0, 2)]);
    }

    #[test]
    fn order_four_cyclic() {
        let p = Presentation::new(1, vec![Word::power(0, 4)]).unwrap();
        let t = todd_coxeter(&p, &[Word::power(0, 2)], 100).unwrap();
        let q = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(q.generators(), 1);
        assert_eq!(q.relators(), &[Word::power(0, 2), Word::power(0, 2)]);
        assert_eq!(q.abelianization(), (0, vec![BigInt::from(2)]));
    }

    #[test]
    fn trefoil_double_cover() {
        let p = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger();
        let x = Word::generator(0);
        let y = Word::generator(1);
        let t = todd_coxeter(&p, &[x.mul(&y.inverse()), x.pow(2)], 100).unwrap();
        let q = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(q.abelianization().0, 1);
        // Euler characteristic of the presentation complex multiplies by the index
        let chi = |p: &Presentation| 1 - p.generators() as i64 + p.relators().len() as i64;
        assert_eq!(chi(&q), 2 * chi(&p));
    }

    #[test]
    fn index_one_keeps_generators() {
        let p = Presentation::new(
            2,
            vec![Word::commutator(&Word::generator(0), &Word::generator(1))],
        )
        .unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0), Word::generator(1)], 10).unwrap();
        let q = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(q.generators(), 2);
        assert_eq!(q.relators(), p.relators());
    }
}
