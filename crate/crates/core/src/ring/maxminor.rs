//! Gcd of maximal minors for matrices too large to enumerate minors.
//!
//! The matrix is first shrunk by pivoting on unit entries `±t^k`, which
//! leaves the ideal of maximal minors unchanged. Small remainders are
//! handled by enumeration. Larger ones use a randomized candidate (a
//! nonsingular minor combined with random row combinations, which by
//! Cauchy-Binet lie in the ideal) that is then cross-checked against an
//! independent degree bound over `F_p[t]`, while every prime in the content
//! is tested separately by an exact rank computation modulo that prime.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modular::{self, PolyP};
use super::{Coefficient, DensePoly, LaurentPoly, RingMatrix};
use crate::error::{Error, Result};

/// Largest number of minors enumerated directly after unit elimination.
const ENUMERATION_LIMIT: usize = 32;
const RNG_SEED: u64 = 0x6b6e_6f74_666f_7267;

/// Result of [`max_minor_gcd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorGcd<C> {
    /// Canonical gcd; zero when every maximal minor vanishes.
    pub value: LaurentPoly<C>,
    /// False only when the randomized route could not rule out a spurious
    /// factor. Zero/nonzero is always decided exactly.
    pub confirmed: bool,
}

/// Canonical gcd of all `min(rows, cols)`-sized minors of a rank-1 matrix.
pub fn max_minor_gcd<C: Coefficient>(m: &RingMatrix<C>) -> Result<MinorGcd<C>> {
    if m.lattice_rank() != 1 {
        return Err(Error::UnsupportedRank {
            expected: 1,
            found: m.lattice_rank(),
        });
    }
    let m = if m.rows() < m.cols() {
        m.transpose()
    } else {
        m.clone()
    };
    let rows: Vec<Vec<DensePoly<C>>> = (0..m.rows()).map(|i| dense_row(m.row(i))).collect();
    let (reduced, cols) = eliminate_units(rows, m.cols());
    gcd_of_reduced(reduced, cols)
}

/// Shifts a row of Laurent polynomials into `Z[t]` (a unit row scaling).
fn dense_row<C: Coefficient>(row: &[LaurentPoly<C>]) -> Vec<DensePoly<C>> {
    let low = row
        .iter()
        .filter_map(|e| e.degree_range())
        .map(|(a, _)| a)
        .min()
        .unwrap_or(0);
    row.iter()
        .map(|e| {
            if e.is_zero() {
                return DensePoly::zero();
            }
            let (v, p) = e.to_dense();
            p.shift_up((v - low) as usize)
        })
        .collect()
}

/// `±t^k` as `(sign, k)`.
fn as_unit<C: Coefficient>(p: &DensePoly<C>) -> Option<(bool, usize)> {
    let v = p.valuation();
    if p.degree() != Some(v) {
        return None;
    }
    let c = p.lc();
    if c.is_one() {
        Some((false, v))
    } else if (-c.clone()).is_one() {
        Some((true, v))
    } else {
        None
    }
}

fn strip_row<C: Coefficient>(row: &mut [DensePoly<C>]) {
    let v = row
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.valuation())
        .min()
        .unwrap_or(0);
    if v > 0 {
        for e in row.iter_mut() {
            *e = e.strip_t().1.shift_up(e.valuation().saturating_sub(v));
        }
    }
}

/// Pivots on unit entries (Markowitz order, ties to the lowest position) and
/// returns the remaining block with the eliminated rows and columns removed.
fn eliminate_units<C: Coefficient>(
    mut rows: Vec<Vec<DensePoly<C>>>,
    cols: usize,
) -> (Vec<Vec<DensePoly<C>>>, usize) {
    let mut live_cols: Vec<bool> = vec![true; cols];
    loop {
        let row_nnz: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().filter(|e| !e.is_zero()).count())
            .collect();
        let mut col_nnz = vec![0usize; cols];
        for r in &rows {
            for (j, e) in r.iter().enumerate() {
                if !e.is_zero() {
                    col_nnz[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                if !live_cols[j] || e.is_zero() || as_unit(e).is_none() {
                    continue;
                }
                let cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let prow = rows.swap_remove(pi);
        let (neg, k) = as_unit(&prow[pj]).unwrap();
        for row in rows.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            // row <- pivot * row - row[pj] * prow
            let f = row[pj].clone();
            for j in 0..cols {
                let scaled = if neg {
                    -row[j].shift_up(k)
                } else {
                    row[j].shift_up(k)
                };
                row[j] = if prow[j].is_zero() {
                    scaled
                } else {
                    &scaled - &(&f * &prow[j])
                };
            }
            debug_assert!(row[pj].is_zero());
            strip_row(row);
        }
        live_cols[pj] = false;
    }
    let keep: Vec<usize> = (0..cols).filter(|&j| live_cols[j]).collect();
    let rest = rows
        .into_iter()
        .map(|r| keep.iter().map(|&j| r[j].clone()).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .collect();
    (rest, keep.len())
}

fn gcd_of_reduced<C: Coefficient>(b: Vec<Vec<DensePoly<C>>>, c: usize) -> Result<MinorGcd<C>> {
    let m = b.len();
    let done = |p: DensePoly<C>, confirmed| MinorGcd {
        value: LaurentPoly::from_dense(0, &p).normalize(),
        confirmed,
    };
    if c == 0 {
        return Ok(done(DensePoly::one(), true));
    }
    if m < c {
        return Ok(done(DensePoly::zero(), true));
    }
    if binomial_at_most(m, c, ENUMERATION_LIMIT) {
        let mut g = DensePoly::zero();
        for rs in (0..m).combinations(c) {
            let sub: Vec<Vec<DensePoly<C>>> = rs.iter().map(|&i| b[i].clone()).collect();
            g = g.gcd(&dense_det(sub));
            if g.degree() == Some(0) && g.lc().is_one() {
                break;
            }
        }
        return Ok(done(g, true));
    }
    randomized(b)
}

fn binomial_at_most(n: usize, k: usize, limit: usize) -> bool {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > limit as u128 {
            return false;
        }
    }
    true
}

/// Fraction-free determinant over `Z[t]`.
pub(crate) fn dense_det<C: Coefficient>(mut a: Vec<Vec<DensePoly<C>>>) -> DensePoly<C> {
    let n = a.len();
    if n == 0 {
        return DensePoly::one();
    }
    let mut prev = DensePoly::one();
    let mut neg = false;
    for k in 0..n {
        let Some(piv) = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| (a[r][k].degree(), a[r][k].lc().abs()))
        else {
            return DensePoly::zero();
        };
        if piv != k {
            a.swap(piv, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = DensePoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Rank over `Q(t)`, exactly.
fn exact_rank<C: Coefficient>(b: &[Vec<DensePoly<C>>]) -> usize {
    let mut a = b.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| a[r][c].degree())
        else {
            continue;
        };
        a.swap(rank, piv);
        let pv = a[rank][c].clone();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..cols {
                a[r][k] = &(&a[r][k] * &pv) - &(&f * &a[rank][k]);
            }
            let g = a[r][c + 1..]
                .iter()
                .fold(DensePoly::zero(), |g, x| g.gcd(x));
            if !g.is_zero() {
                for k in c + 1..cols {
                    a[r][k] = a[r][k].div_exact(&g).expect("row gcd divides its entries");
                }
            }
        }
        rank += 1;
    }
    rank
}

fn reduce_poly<C: Coefficient>(p: &DensePoly<C>, q: u64) -> PolyP {
    let mut v: PolyP = p.coeffs().iter().map(|c| c.residue(q)).collect();
    modular::trim(&mut v);
    v
}

fn reduce_matrix<C: Coefficient>(b: &[Vec<DensePoly<C>>], q: u64) -> Vec<Vec<PolyP>> {
    b.iter()
        .map(|r| r.iter().map(|e| reduce_poly(e, q)).collect())
        .collect()
}

fn randomized<C: Coefficient>(b: Vec<Vec<DensePoly<C>>>) -> Result<MinorGcd<C>> {
    let m = b.len();
    let c = b[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let p = modular::prime_below(1 << 62);
    let bp = reduce_matrix(&b, p);

    // Full rank is certified by any nonsingular evaluation.
    let mut pivots = None;
    for _ in 0..4 {
        let x = rng.gen_range(2..p);
        let ev: Vec<Vec<u64>> = bp
            .iter()
            .map(|r| r.iter().map(|e| modular::peval(e, x, p)).collect())
            .collect();
        let (rk, rows) = modular::rank_rows(&ev, p);
        if rk == c {
            pivots = Some(rows);
            break;
        }
    }
    let pivots = match pivots {
        Some(rows) => rows,
        None => {
            if exact_rank(&b) < c {
                return Ok(MinorGcd {
                    value: LaurentPoly::zero(1),
                    confirmed: true,
                });
            }
            // Unlucky evaluations; fall back to exact row selection.
            independent_rows(&b)
        }
    };

    let d = dense_det(pivots.iter().map(|&i| b[i].clone()).collect());
    debug_assert!(!d.is_zero());
    let mut g = d.clone();
    let bound_prime = degree_bound_prime(&d, p);
    let bound = hermite_degree(
        &reduce_matrix(&b, bound_prime),
        &reduce_poly(&d, bound_prime),
        bound_prime,
    );

    let mut q_part_ok = false;
    for round in 0..12 {
        let comb: Vec<Vec<DensePoly<C>>> = (0..c)
            .map(|_| {
                let coeffs: Vec<i64> = (0..m).map(|_| rng.gen_range(-3i64..=3)).collect();
                (0..c)
                    .map(|j| {
                        let mut acc = DensePoly::zero();
                        for (i, &k) in coeffs.iter().enumerate() {
                            if k != 0 && !b[i][j].is_zero() {
                                acc = &acc + &b[i][j].scale(&C::from_int(k));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        g = g.gcd(&dense_det(comb));
        if round >= 1 && g.primitive_part().strip_t().1.degree() == Some(bound) {
            q_part_ok = true;
            break;
        }
    }

    let prim = g.primitive_part().strip_t().1;
    let (content, content_ok) = certify_content(&b, g.content());
    Ok(MinorGcd {
        value: LaurentPoly::from_dense(0, &prim.scale(&content)).normalize(),
        confirmed: q_part_ok && content_ok,
    })
}

fn independent_rows<C: Coefficient>(b: &[Vec<DensePoly<C>>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..b.len() {
        let mut trial: Vec<Vec<DensePoly<C>>> = chosen.iter().map(|&k| b[k].clone()).collect();
        trial.push(b[i].clone());
        if exact_rank(&trial) == trial.len() {
            chosen.push(i);
        }
        if chosen.len() == b[0].len() {
            break;
        }
    }
    chosen
}

/// A prime not dividing the extreme coefficients of `d`, so degrees survive
/// reduction.
fn degree_bound_prime<C: Coefficient>(d: &DensePoly<C>, below: u64) -> u64 {
    let (_, s) = d.strip_t();
    let mut q = modular::prime_below(below);
    while s.lc().residue(q) == 0 || s.coeff(0).residue(q) == 0 {
        q = modular::prime_below(q);
    }
    q
}

/// Degree (after removing powers of `t`) of the gcd of maximal minors over
/// `F_q[t]`, by triangularizing the row module, which contains `d * e_k`.
fn hermite_degree(b: &[Vec<PolyP>], d: &PolyP, q: u64) -> usize {
    let c = b[0].len();
    let mut rows: Vec<Vec<PolyP>> = b
        .iter()
        .map(|r| r.iter().map(|e| modular::prem(e, d, q)).collect())
        .collect();
    for k in 0..c {
        let mut v = vec![Vec::new(); c];
        v[k] = d.clone();
        rows.push(v);
    }
    let mut total = 0;
    for k in 0..c {
        loop {
            let Some(piv) = (0..rows.len())
                .filter(|&i| !rows[i][k].is_empty())
                .min_by_key(|&i| rows[i][k].len())
            else {
                unreachable!("virtual row keeps every column nonzero");
            };
            let mut again = false;
            for i in 0..rows.len() {
                if i == piv || rows[i][k].is_empty() {
                    continue;
                }
                let (f, _) = modular::pdivrem(&rows[i][k], &rows[piv][k], q);
                for j in k..c {
                    let prod = modular::pmul(&f, &rows[piv][j], q);
                    let diff = modular::psub(&rows[i][j], &prod, q);
                    rows[i][j] = if j == k {
                        diff
                    } else {
                        modular::prem(&diff, d, q)
                    };
                }
                if !rows[i][k].is_empty() {
                    again = true;
                }
            }
            if !again {
                let prow = rows.swap_remove(piv);
                let h = &prow[k];
                let v = h.iter().take_while(|&&x| x == 0).count();
                total += h.len() - 1 - v;
                break;
            }
        }
    }
    total
}

/// Keeps exactly the primes of `content` that divide every maximal minor.
/// A prime appearing squared or more cannot be settled by a rank test.
fn certify_content<C: Coefficient>(b: &[Vec<DensePoly<C>>], content: C) -> (C, bool) {
    let mut out = C::one();
    let mut ok = true;
    let mut rest = content;
    let c = b[0].len();
    let mut factors: Vec<(C, u32)> = Vec::new();
    let mut f = C::from_int(2);
    let limit = C::from_int(1_000_000);
    while rest > C::one() && f < limit {
        let mut e = 0;
        while rest.is_multiple_of(&f) {
            rest = rest / f.clone();
            e += 1;
        }
        if e > 0 {
            factors.push((f.clone(), e));
        }
        f = f + C::one();
    }
    if rest > C::one() {
        factors.push((rest, 1));
    }
    for (q, e) in factors {
        let Some(qq) = q.to_u64().filter(|&x| modular::is_prime(x)) else {
            // Unfactored cofactor: keep it, unconfirmed.
            out = out * q;
            ok = false;
            continue;
        };
        if modular::poly_rank(&reduce_matrix(b, qq), qq) == c {
            continue;
        }
        for _ in 0..e {
            out = out * q.clone();
        }
        if e > 1 {
            ok = false;
        }
    }
    (out, ok)
}
