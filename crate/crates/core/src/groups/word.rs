use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Freely reduced word in generators `0..g`, stored as syllables
/// `(generator, nonzero exponent)` with distinct adjacent generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power(g: usize, e: i64) -> Self {
        Word::new(vec![(g, e)])
    }

    /// Reduces the syllable list.
    pub fn new(syllables: Vec<(usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(syllables.len());
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    /// From signed letters: `k > 0` is generator `k-1`, `k < 0` its inverse.
    pub fn from_letters(letters: &[i64]) -> Self {
        Word::new(
            letters
                .iter()
                .map(|&k| ((k.unsigned_abs() - 1) as usize, k.signum()))
                .collect(),
        )
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter-by-letter expansion as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn length(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        Word::new(s)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut s = Vec::new();
        for _ in 0..k.unsigned_abs() {
            s.extend_from_slice(&base.0);
        }
        Word::new(s)
    }

    /// `a b a^-1 b^-1`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `self * w * self^-1`
    pub fn conjugate(&self, w: &Word) -> Self {
        self.mul(w).mul(&self.inverse())
    }

    /// Exponent sum of each of `gens` generators.
    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0; gens];
        for &(g, e) in &self.0 {
            v[g] += e;
        }
        v
    }
}

impl fmt::Display for Word {
    /// `x1 x2^-1 x1^3`, or `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", g + 1)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut syl = Vec::new();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let idx = name
                .strip_prefix('x')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad generator {name:?}")))?;
            syl.push((idx - 1, exp));
        }
        Ok(Word::new(syl))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        let w = Word::new(vec![(0, 2), (1, 1), (1, -1), (0, -2), (2, 3)]);
        assert_eq!(w, Word::power(2, 3));
        assert!(Word::from_letters(&[1, 2, -2, -1]).is_empty());
        let a = Word::from_letters(&[1, 2, 1]);
        assert!(a.mul(&a.inverse()).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let w: Word = "x1 x2^-1 x1^3".parse().unwrap();
        assert_eq!(w.syllables(), &[(0, 1), (1, -1), (0, 3)]);
        assert_eq!(w.to_string(), "x1 x2^-1 x1^3");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("y1".parse::<Word>().is_err());
        assert!("x0".parse::<Word>().is_err());
    }

    #[test]
    fn commutator_and_sums() {
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c.to_string(), "x1 x2 x1^-1 x2^-1");
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
        assert_eq!(c.length(), 4);
    }
}
