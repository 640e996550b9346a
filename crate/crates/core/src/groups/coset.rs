//! Coset tables and HLT coset enumeration.
//!
//! Column `2i` holds the action of generator `i`, column `2i+1` its
//! inverse. Cosets act on the right: `table[c][2i]` is `c * x_i`.

use std::collections::VecDeque;

use super::{Presentation, Word};
use crate::error::{Error, Result};

const UNDEF: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
}

fn col(g: usize, e: i64) -> usize {
    if e > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

impl CosetTable {
    /// Builds a table from right actions: `actions[i][c] = c * x_i`. Coset 0
    /// is the subgroup.
    pub fn from_actions(actions: &[Vec<usize>]) -> Result<Self> {
        let n = actions.first().map_or(1, |a| a.len());
        let mut rows = vec![vec![UNDEF; 2 * actions.len()]; n];
        for (g, act) in actions.iter().enumerate() {
            if act.len() != n {
                return Err(Error::InvalidArgument(
                    "actions on different coset counts".into(),
                ));
            }
            for (c, &d) in act.iter().enumerate() {
                if d >= n || rows[d][2 * g + 1] != UNDEF {
                    return Err(Error::InvalidArgument(format!(
                        "generator {} does not act as a permutation",
                        g + 1
                    )));
                }
                rows[c][2 * g] = d;
                rows[d][2 * g + 1] = c;
            }
        }
        Ok(CosetTable {
            generators: actions.len(),
            rows,
        })
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x != UNDEF))
    }

    /// `c * x_g^{±1}`.
    pub fn act(&self, c: usize, g: usize, sign: i64) -> usize {
        self.rows[c][col(g, sign)]
    }

    /// `c * w`.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().fold(c, |c, (g, s)| self.act(c, g, s))
    }

    /// Renumbers cosets in breadth-first order from coset 0.
    fn standardize(&mut self) {
        let n = self.rows.len();
        let mut order = Vec::with_capacity(n);
        let mut label = vec![UNDEF; n];
        label[0] = 0;
        order.push(0);
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for &d in &self.rows[c] {
                if label[d] == UNDEF {
                    label[d] = order.len();
                    order.push(d);
                }
            }
            k += 1;
        }
        let rows = order
            .iter()
            .map(|&c| self.rows[c].iter().map(|&d| label[d]).collect())
            .collect();
        self.rows = rows;
    }
}

struct Enumerator {
    width: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    budget: usize,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let nxt = self.parent[x];
            self.parent[x] = r;
            x = nxt;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.budget {
            return Err(Error::IncompleteEnumeration {
                budget: self.budget,
            });
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.width]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.width {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                if self.table[f][x ^ 1] == e {
                    self.table[f][x ^ 1] = UNDEF;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != UNDEF {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().map(|(g, s)| col(g, s)).collect()
}

/// HLT enumeration of the cosets of `<subgroup>` in `p`. Fails once more
/// than `max_cosets` cosets have been defined; that says nothing about
/// whether the index is finite.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidArgument(
            "coset budget must be positive".into(),
        ));
    }
    let width = 2 * p.generators();
    let mut en = Enumerator {
        width,
        table: vec![vec![UNDEF; width]],
        parent: vec![0],
        budget: max_cosets,
    };
    let rels: Vec<Vec<usize>> = p.relators().iter().map(columns).collect();
    for h in subgroup {
        let w = columns(h);
        let start = en.rep(0);
        en.scan_and_fill(start, &w)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in &rels {
            if !en.live(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..width {
            if en.live(c) && en.table[c][x] == UNDEF {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.live(c)).collect();
    let mut label = vec![UNDEF; en.table.len()];
    for (k, &c) in live.iter().enumerate() {
        label[c] = k;
    }
    let mut rows = Vec::with_capacity(live.len());
    for &c in &live {
        let row: Vec<usize> = (0..width).map(|x| en.table[c][x]).collect();
        rows.push(
            row.into_iter()
                .map(|d| label[en.rep(d)])
                .collect::<Vec<_>>(),
        );
    }
    let mut t = CosetTable {
        generators: p.generators(),
        rows,
    };
    t.standardize();
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::bundle::{fiber_power_subgroup, torus_bundle, IDENTITY};
    use crate::groups::PDCode;

    #[test]
    fn cyclic() {
        let p = Presentation::new(1, vec![Word::power(0, 3)]).unwrap();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.is_complete());
    }

    #[test]
    fn trefoil_mod_two() {
        let p = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger();
        let x = Word::generator(0);
        let y = Word::generator(1);
        let t = todd_coxeter(&p, &[x.mul(&y.inverse()), x.pow(2)], 100).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn bundle_index_four() {
        let p = torus_bundle(&[IDENTITY, IDENTITY], (0, 0)).unwrap();
        let t = todd_coxeter(&p, &fiber_power_subgroup(1, 2), 1000).unwrap();
        assert_eq!(t.index(), 4);
    }

    #[test]
    fn budget_exhaustion() {
        // Z has infinite index trivial subgroup
        let p = Presentation::new(1, vec![]).unwrap();
        assert!(matches!(
            todd_coxeter(&p, &[], 50),
            Err(Error::IncompleteEnumeration { budget: 50 })
        ));
    }

    #[test]
    fn tables_are_permutations() {
        let p = Presentation::new(
            2,
            vec![
                Word::power(0, 2),
                Word::power(1, 3),
                Word::from_letters(&[1, 2]).pow(3),
            ],
        )
        .unwrap();
        // (2,3,3) triangle group: the alternating group on four letters
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 12);
        for g in 0..2 {
            for c in 0..12 {
                assert_eq!(t.act(t.act(c, g, 1), g, -1), c);
            }
        }
        for r in p.relators() {
            for c in 0..12 {
                assert_eq!(t.trace(c, r), c);
            }
        }
    }
}
