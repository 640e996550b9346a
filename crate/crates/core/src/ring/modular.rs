//! Word-sized prime field arithmetic and dense polynomials over `F_p`,
//! used for rank tests and degree bounds.

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `n`.
pub fn prime_below(n: u64) -> u64 {
    let mut k = n - 1;
    while !is_prime(k) {
        k -= 1;
    }
    k
}

/// Dense polynomial over `F_p`, lowest degree first, trimmed.
pub type PolyP = Vec<u64>;

pub fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &PolyP) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn psub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| {
            sub_mod(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(&mut out);
    out
}

pub fn pmul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    let mut out: PolyP = out.into_iter().map(|c| c as u64).collect();
    trim(&mut out);
    out
}

pub fn pscale(a: &PolyP, c: u64, p: u64) -> PolyP {
    let mut out: PolyP = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn pdivrem(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP) {
    let db = deg(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        if c == 0 {
            continue;
        }
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = sub_mod(r[i + j], mul_mod(c, bj, p), p);
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn prem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    pdivrem(a, b, p).1
}

pub fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => pscale(a, inv_mod(lc, p), p),
    }
}

pub fn pgcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn peval(a: &PolyP, x: u64, p: u64) -> u64 {
    a.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

/// Rank of a matrix over `F_p` together with the row indices of a maximal
/// independent set, chosen greedily in order.
pub fn rank_rows(mat: &[Vec<u64>], p: u64) -> (usize, Vec<usize>) {
    let cols = mat.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut rows = Vec::new();
    for (i, row) in mat.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            let c = v[*pc];
            if c != 0 {
                for k in 0..cols {
                    v[k] = sub_mod(v[k], mul_mod(c, b[k], p), p);
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((pc, v));
            rows.push(i);
            if basis.len() == cols {
                break;
            }
        }
    }
    (basis.len(), rows)
}

/// Rank over the field of fractions `F_p(t)` by fraction-free elimination
/// in `F_p[t]`.
pub fn poly_rank(mat: &[Vec<PolyP>], p: u64) -> usize {
    let mut m: Vec<Vec<PolyP>> = mat.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows)
            .filter(|&r| !m[r][c].is_empty())
            .min_by_key(|&r| m[r][c].len())
        else {
            continue;
        };
        m.swap(rank, piv);
        let pv = m[rank][c].clone();
        for r in rank + 1..rows {
            if m[r][c].is_empty() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..cols {
                let a = pmul(&m[r][k], &pv, p);
                let b = pmul(&m[rank][k], &f, p);
                m[r][k] = psub(&a, &b, p);
            }
            // keep degrees in check: strip the polynomial content (a scalar is a unit)
            let g = m[r][c + 1..].iter().fold(Vec::new(), |g, x| pgcd(&g, x, p));
            if g.len() > 1 {
                for k in c + 1..cols {
                    m[r][k] = pdivrem(&m[r][k], &g, p).0;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751));
        assert_eq!(prime_below(100), 97);
    }

    #[test]
    fn poly_division() {
        let p = 101;
        let a = vec![1, 2, 3, 4];
        let b = vec![5, 1];
        let (q, r) = pdivrem(&a, &b, p);
        assert_eq!(psub(&a, &r, p), pmul(&q, &b, p));
        assert_eq!(pgcd(&pmul(&a, &b, p), &pmul(&b, &b, p), p), monic(&b, p));
    }

    #[test]
    fn ranks() {
        let p = 7;
        assert_eq!(
            rank_rows(&[vec![1, 2], vec![2, 4], vec![0, 1]], p),
            (2, vec![0, 2])
        );
        // [[t, 1], [t^2, t]] is singular
        let m = vec![vec![vec![0, 1], vec![1]], vec![vec![0, 0, 1], vec![0, 1]]];
        assert_eq!(poly_rank(&m, p), 1);
    }
}
