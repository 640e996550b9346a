use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::Word;
use crate::error::{Error, Result};
use crate::ring::{cokernel, IntMatrix};

/// Finitely presented group with named peripheral words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
    peripherals: BTreeMap<String, Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        let p = Presentation {
            generators,
            relators,
            peripherals: BTreeMap::new(),
        };
        for r in &p.relators {
            p.check(r)?;
        }
        Ok(p)
    }

    fn check(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.generators => Err(Error::GeneratorOutOfRange {
                index: g,
                count: self.generators,
            }),
            _ => Ok(()),
        }
    }

    pub fn with_peripheral(mut self, name: &str, w: Word) -> Result<Self> {
        self.set_peripheral(name, w)?;
        Ok(self)
    }

    pub fn set_peripheral(&mut self, name: &str, w: Word) -> Result<()> {
        self.check(&w)?;
        self.peripherals.insert(name.to_string(), w);
        Ok(())
    }

    pub fn add_relator(&mut self, w: Word) -> Result<()> {
        self.check(&w)?;
        self.relators.push(w);
        Ok(())
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn peripheral(&self, name: &str) -> Option<&Word> {
        self.peripherals.get(name)
    }

    pub fn peripherals(&self) -> &BTreeMap<String, Word> {
        &self.peripherals
    }

    /// Exponent-sum relation matrix, one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix<BigInt> {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.generators))
            .collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.generators);
        }
        IntMatrix::from_i64(&rows)
    }

    /// Free rank and torsion invariant factors (> 1) of `H_1`.
    pub fn abelianization(&self) -> (usize, Vec<BigInt>) {
        cokernel(&self.relation_matrix())
    }

    /// Same presentation without relator `i`.
    pub fn without_relator(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.relators.remove(i);
        p
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators)?;
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        for (name, w) in &self.peripherals {
            writeln!(f, "peripheral {name}: {w}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut gens = None;
        let mut rels = Vec::new();
        let mut peri = Vec::new();
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            if let Some(rest) = line.strip_prefix("gens:") {
                let n = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator count {rest:?}")))?;
                gens = Some(n);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                rels.push(rest.parse::<Word>()?);
            } else if let Some(rest) = line.strip_prefix("peripheral ") {
                let (name, w) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad peripheral line {line:?}")))?;
                peri.push((name.trim().to_string(), w.parse::<Word>()?));
            } else {
                return Err(Error::Parse(format!("unrecognized line {line:?}")));
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing `gens:` line".into()))?;
        let mut p = Presentation::new(gens, rels)?;
        for (name, w) in peri {
            p.set_peripheral(&name, w)?;
        }
        Ok(p)
    }
}
