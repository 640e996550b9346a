use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Coefficient, LaurentPoly, Monomial};

pub const DEFAULT_TRUNCATION: u32 = 20;

/// Integer matrix sending exponent vectors of rank `source` to rank `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source: usize,
    rows: Vec<Vec<i64>>,
}

impl LatticeMap {
    /// `rows[i][j]` is the coefficient of source coordinate `j` in target
    /// coordinate `i`.
    pub fn new(source: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != source) {
            return Err(Error::InvalidArgument(format!(
                "lattice map rows must have {source} entries"
            )));
        }
        Ok(LatticeMap { source, rows })
    }

    pub fn identity(k: usize) -> Self {
        LatticeMap {
            source: k,
            rows: (0..k)
                .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    /// Sends source axis `j` to `scale` times target axis `axes[j]`.
    pub fn axes(source: usize, target: usize, axes: &[usize], scale: i64) -> Result<Self> {
        if axes.len() != source || axes.iter().any(|&a| a >= target) {
            return Err(Error::InvalidArgument(
                "axis assignment out of range".into(),
            ));
        }
        let mut rows = vec![vec![0; source]; target];
        for (j, &a) in axes.iter().enumerate() {
            rows[a][j] = scale;
        }
        Ok(LatticeMap { source, rows })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Lattice series `num * prod (1 - m)^-1`, each factor expanded as
/// `1 + m + m^2 + ...`. A series with no factors is finitely supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWSeries<C> {
    num: LaurentPoly<C>,
    den: Vec<Monomial>,
    trunc: u32,
}

impl<C: Coefficient> SWSeries<C> {
    pub fn finite(p: LaurentPoly<C>) -> Self {
        SWSeries {
            num: p,
            den: Vec::new(),
            trunc: DEFAULT_TRUNCATION,
        }
    }

    pub fn rational(num: LaurentPoly<C>, den: Vec<Monomial>) -> Result<Self> {
        for m in &den {
            if m.rank() != num.rank() {
                return Err(Error::RankMismatch(num.rank(), m.rank()));
            }
            if m.is_one() {
                return Err(Error::Divergence("denominator factor 1 - 1".into()));
            }
        }
        Ok(SWSeries {
            num,
            den,
            trunc: DEFAULT_TRUNCATION,
        })
    }

    pub fn with_trunc(mut self, trunc: u32) -> Self {
        self.trunc = trunc;
        self
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn denominators(&self) -> &[Monomial] {
        &self.den
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_finite(&self) -> bool {
        self.den.is_empty()
    }

    /// Product of rational forms; the truncation is the smaller one.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        Ok(SWSeries {
            num: &self.num * &other.num,
            den,
            trunc: self.trunc.min(other.trunc),
        })
    }

    /// Multiplies the numerator by a polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly<C>) -> Result<Self> {
        self.mul(&SWSeries::finite(p.clone()))
    }

    /// Image under a lattice map, as a rational form.
    pub fn pushforward(&self, map: &LatticeMap) -> Result<Self> {
        if map.source() != self.rank() {
            return Err(Error::RankMismatch(map.source(), self.rank()));
        }
        let num = self.num.map_exponents(map.target(), |e| map.apply(e));
        let den = self
            .den
            .iter()
            .map(|m| {
                let image = Monomial::new(map.apply(m.exponents()));
                if image.is_one() {
                    Err(Error::Divergence(format!(
                        "denominator direction {m} is annihilated"
                    )))
                } else {
                    Ok(image)
                }
            })
            .collect::<Result<_>>()?;
        Ok(SWSeries {
            num,
            den,
            trunc: self.trunc,
        })
    }

    /// Coefficients on the box `max |e_i| <= radius`, as a polynomial.
    pub fn expand(&self, radius: u32) -> Result<LaurentPoly<C>> {
        let terms = expand_terms(
            std::slice::from_ref(&self.num),
            std::slice::from_ref(&self.den),
            &[LatticeMap::identity(self.rank())],
            self.rank(),
            radius,
        )?;
        Ok(LaurentPoly::from_terms(
            self.rank(),
            terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
        ))
    }

    /// Sorted `exponent: coefficient` lines of the expansion.
    pub fn listing(&self, radius: u32) -> Result<String> {
        let p = self.expand(radius)?;
        let lines = p
            .terms()
            .map(|(m, c)| {
                let e: Vec<String> = m.exponents().iter().map(i64::to_string).collect();
                format!("{}: {c}", e.join(","))
            })
            .collect::<Vec<String>>();
        Ok(lines.join("\n"))
    }
}

impl<C: Coefficient> fmt::Display for SWSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "num: {}", self.num)?;
        let den: Vec<String> = self.den.iter().map(|m| format!("(1-{m})")).collect();
        if den.is_empty() {
            writeln!(f, "den:")?;
        } else {
            writeln!(f, "den: {}", den.join(" "))?;
        }
        write!(f, "trunc: {}", self.trunc)
    }
}

impl<C: Coefficient> FromStr for SWSeries<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut num = None;
        let mut den_text = String::new();
        let mut trunc = DEFAULT_TRUNCATION;
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            if let Some(rest) = line.strip_prefix("num:") {
                num = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("den:") {
                den_text = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("trunc:") {
                trunc = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad truncation {rest:?}")))?;
            } else {
                return Err(Error::Parse(format!("unrecognized series line {line:?}")));
            }
        }
        let num_text = num.ok_or_else(|| Error::Parse("missing `num:` line".into()))?;
        let factors: Vec<String> = den_text
            .split(')')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .map(|f| {
                f.strip_prefix("(1-")
                    .map(|m| m.trim().to_string())
                    .ok_or_else(|| Error::Parse(format!("bad denominator factor {f:?})")))
            })
            .collect::<Result<_>>()?;
        // infer the rank from every monomial in the text
        let rank_of = |t: &str| LaurentPoly::<C>::from_str(t).map(|p| p.rank());
        let mut rank = rank_of(&num_text)?;
        for f in &factors {
            rank = rank.max(rank_of(f)?);
        }
        let num = LaurentPoly::parse_with_rank(&num_text, rank)?;
        let den = factors
            .iter()
            .map(|f| {
                let p = LaurentPoly::<C>::parse_with_rank(f, rank)?;
                let first = p.terms().next().map(|(m, c)| (m.clone(), c.is_one()));
                match first {
                    Some((m, true)) if p.len() == 1 => Ok(m),
                    _ => Err(Error::Parse(format!(
                        "denominator factor {f:?} is not a monomial"
                    ))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(SWSeries::rational(num, den)?.with_trunc(trunc))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A functional positive on every direction, from a small candidate set.
fn positive_functional(dirs: &[Vec<i64>], rank: usize) -> Option<Vec<i64>> {
    if dirs.is_empty() {
        return Some(vec![0; rank]);
    }
    let mut candidates = Vec::new();
    let sum: Vec<i64> = (0..rank).map(|i| dirs.iter().map(|d| d[i]).sum()).collect();
    candidates.push(sum);
    if rank <= 5 {
        for code in 0..3usize.pow(rank as u32) {
            let mut c = code;
            candidates.push(
                (0..rank)
                    .map(|_| {
                        let v = (c % 3) as i64 - 1;
                        c /= 3;
                        v
                    })
                    .collect(),
            );
        }
    }
    candidates
        .into_iter()
        .find(|l| dirs.iter().all(|d| dot(l, d) > 0))
}

/// Every term `num_term * prod m_j^{k_j}`, pushed forward, whose functional
/// value stays within `bound`; repeated exponents are summed.
fn series_terms<C: Coefficient>(
    num: &LaurentPoly<C>,
    den: &[Monomial],
    map: &LatticeMap,
    lambda: &[i64],
    bound: i64,
) -> BTreeMap<Vec<i64>, C> {
    let dirs: Vec<Vec<i64>> = den.iter().map(|m| map.apply(m.exponents())).collect();
    let mut out: BTreeMap<Vec<i64>, C> = BTreeMap::new();
    fn rec<C: Coefficient>(
        k: usize,
        point: Vec<i64>,
        coeff: &C,
        dirs: &[Vec<i64>],
        lambda: &[i64],
        bound: i64,
        out: &mut BTreeMap<Vec<i64>, C>,
    ) {
        if k == dirs.len() {
            let slot = out.entry(point).or_insert_with(C::zero);
            *slot = slot.clone() + coeff.clone();
            return;
        }
        let mut p = point;
        while dot(lambda, &p) <= bound {
            rec(k + 1, p.clone(), coeff, dirs, lambda, bound, out);
            for (x, d) in p.iter_mut().zip(&dirs[k]) {
                *x += d;
            }
        }
    }
    for (m, c) in num.terms() {
        let base = map.apply(m.exponents());
        if dot(lambda, &base) <= bound {
            rec(0, base, c, &dirs, lambda, bound, &mut out);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficients of `prod_i pushforward(part_i)` on the target box of the
/// given radius, summing products over all tuples of source exponents.
pub(crate) fn expand_terms<C: Coefficient>(
    nums: &[LaurentPoly<C>],
    dens: &[Vec<Monomial>],
    maps: &[LatticeMap],
    target: usize,
    radius: u32,
) -> Result<Vec<(Vec<i64>, C)>> {
    let mut dirs = Vec::new();
    for (den, map) in dens.iter().zip(maps) {
        for m in den {
            let d = map.apply(m.exponents());
            if d.iter().all(|&x| x == 0) {
                return Err(Error::Divergence(format!(
                    "denominator direction {m} is annihilated"
                )));
            }
            dirs.push(d);
        }
    }
    let lambda = positive_functional(&dirs, target).ok_or_else(|| {
        Error::Divergence("denominator directions do not lie in an open half-space".into())
    })?;
    let r = i64::from(radius);
    let cap = r * lambda.iter().map(|x| x.abs()).sum::<i64>();
    // least functional value each part can contribute
    let floors: Vec<Option<i64>> = nums
        .iter()
        .zip(maps)
        .map(|(n, map)| {
            n.terms()
                .map(|(m, _)| dot(&lambda, &map.apply(m.exponents())))
                .min()
        })
        .collect();
    if floors.iter().any(Option::is_none) {
        return Ok(Vec::new());
    }
    let floors: Vec<i64> = floors
        .into_iter()
        .map(|f| f.expect("nonzero parts"))
        .collect();
    let total_floor: i64 = floors.iter().sum();
    let mut acc: BTreeMap<Vec<i64>, C> = BTreeMap::from([(vec![0; target], C::one())]);
    let mut rest_floor = total_floor;
    for (i, ((num, den), map)) in nums.iter().zip(dens).zip(maps).enumerate() {
        rest_floor -= floors[i];
        let terms = series_terms(num, den, map, &lambda, cap - (total_floor - floors[i]));
        let mut next: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &terms {
                let z: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if dot(&lambda, &z) + rest_floor > cap {
                    continue;
                }
                let slot = next.entry(z).or_insert_with(C::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    Ok(acc
        .into_iter()
        .filter(|(z, _)| z.iter().all(|x| x.abs() <= r))
        .collect())
}
