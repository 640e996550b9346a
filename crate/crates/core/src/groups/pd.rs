//! Planar diagram codes and the Wirtinger presentation.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand `a`; the under-strand leaves
//! along `c`, which is the edge after `a` in the knot's orientation. The
//! over-strand is `b`-`d`. The crossing is positive when it runs from `b`
//! to `d` (`d` follows `b`), negative otherwise.
//!
//! For the right-handed trefoil `X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)`:
//!
//! ```text
//!   crossing   under     over      sign
//!   X(1,4,2,5) 1 -> 2    4 -> 5    +1
//!   X(3,6,4,1) 3 -> 4    6 -> 1    +1
//!   X(5,2,6,3) 5 -> 6    2 -> 3    +1
//! ```
//!
//! so the writhe is 3. Arcs are the classes of edges glued across
//! over-passes: here `{1,6}`, `{2,3}`, `{4,5}`.

use std::fmt;
use std::str::FromStr;

use super::{Presentation, Word};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PDCode {
    crossings: Vec<[usize; 4]>,
}

/// Per-crossing data in arc (generator) indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WirtingerCrossing {
    pub incoming: usize,
    pub outgoing: usize,
    pub over: usize,
    pub sign: i64,
}

impl PDCode {
    pub fn new(crossings: Vec<[usize; 4]>) -> Result<Self> {
        let n = crossings.len();
        let mut seen = vec![0usize; 2 * n + 1];
        for x in &crossings {
            for &e in x {
                if e == 0 || e > 2 * n {
                    return Err(Error::Parse(format!("edge label {e} outside 1..{}", 2 * n)));
                }
                seen[e] += 1;
            }
        }
        if let Some(e) = (1..=2 * n).find(|&e| seen[e] != 2) {
            return Err(Error::Parse(format!("edge {e} appears {} times", seen[e])));
        }
        let pd = PDCode { crossings };
        for x in &pd.crossings {
            if x[2] != pd.next(x[0]) {
                return Err(Error::Parse(format!(
                    "crossing X({},{},{},{}) does not continue the under-strand",
                    x[0], x[1], x[2], x[3]
                )));
            }
            if x[3] != pd.next(x[1]) && x[1] != pd.next(x[3]) {
                return Err(Error::Parse(format!(
                    "crossing X({},{},{},{}) has a broken over-strand",
                    x[0], x[1], x[2], x[3]
                )));
            }
        }
        Ok(pd)
    }

    pub fn unknot() -> Self {
        PDCode {
            crossings: Vec::new(),
        }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn next(&self, e: usize) -> usize {
        e % (2 * self.crossings.len()) + 1
    }

    pub fn signs(&self) -> Vec<i64> {
        self.crossings
            .iter()
            .map(|x| if x[3] == self.next(x[1]) { 1 } else { -1 })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().sum()
    }

    /// Arc index of every edge (index 0 unused); arcs are numbered by their
    /// smallest edge label, so edge 1 lies on arc 0.
    pub fn edge_arcs(&self) -> Vec<usize> {
        let m = 2 * self.crossings.len();
        let mut parent: Vec<usize> = (0..=m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for x in &self.crossings {
            let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; m + 1];
        let mut arcs = vec![0; m + 1];
        let mut count = 0;
        for e in 1..=m {
            let r = find(&mut parent, e);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            arcs[e] = label[r];
        }
        arcs
    }

    pub fn wirtinger_crossings(&self) -> Vec<WirtingerCrossing> {
        let arcs = self.edge_arcs();
        self.crossings
            .iter()
            .zip(self.signs())
            .map(|(x, sign)| WirtingerCrossing {
                incoming: arcs[x[0]],
                outgoing: arcs[x[2]],
                over: arcs[x[1]],
                sign,
            })
            .collect()
    }

    /// One generator per arc and the relator `o^s a o^-s c^-1` per crossing.
    /// Peripherals: `meridian` (arc of edge 1) and `longitude`.
    pub fn wirtinger(&self) -> Presentation {
        let n = self.crossings.len();
        let gens = n.max(1);
        let rels = self
            .wirtinger_crossings()
            .iter()
            .map(|c| {
                Word::power(c.over, c.sign)
                    .mul(&Word::generator(c.incoming))
                    .mul(&Word::power(c.over, -c.sign))
                    .mul(&Word::power(c.outgoing, -1))
            })
            .collect();
        Presentation::new(gens, rels)
            .and_then(|p| p.with_peripheral("meridian", Word::generator(0)))
            .and_then(|p| p.with_peripheral("longitude", self.longitude()))
            .expect("arc indices are in range")
    }

    /// Zero-framed longitude based at edge 1.
    ///
    /// Walking from edge 1, each under-pass conjugates the current arc
    /// generator by `o^s`; the accumulated conjugator (blackboard longitude)
    /// commutes with the meridian. Multiplying by `meridian^-writhe` makes it
    /// null-homologous.
    pub fn longitude(&self) -> Word {
        let n = self.crossings.len();
        if n == 0 {
            return Word::empty();
        }
        let info = self.wirtinger_crossings();
        let mut by_incoming = vec![None; 2 * n + 1];
        for (i, x) in self.crossings.iter().enumerate() {
            by_incoming[x[0]] = Some(i);
        }
        let mut w = Word::empty();
        let mut e = 1;
        for _ in 0..2 * n {
            if let Some(i) = by_incoming[e] {
                w = Word::power(info[i].over, info[i].sign).mul(&w);
            }
            e = self.next(e);
        }
        w.mul(&Word::power(0, -self.writhe()))
    }

    /// Wirtinger presentation plus the longitude as a relator. The dual knot
    /// is recorded as the meridian word; only its conjugacy class is
    /// meaningful.
    pub fn zero_surgery(&self) -> Presentation {
        let mut p = self.wirtinger();
        let lon = self.longitude();
        p.add_relator(lon)
            .expect("longitude uses existing generators");
        p.set_peripheral("dual_knot", Word::generator(0))
            .expect("generator 0 exists");
        p
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for PDCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(PDCode::unknot());
        }
        let mut crossings = Vec::new();
        for part in compact.split(';').filter(|p| !p.is_empty()) {
            let inner = part
                .strip_prefix("X(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad crossing {part:?}")))?;
            let labels: Vec<usize> = inner
                .split(',')
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad edge label {t:?}")))
                })
                .collect::<Result<_>>()?;
            let arr: [usize; 4] = labels
                .try_into()
                .map_err(|_| Error::Parse(format!("crossing {part:?} needs four labels")))?;
            crossings.push(arr);
        }
        PDCode::new(crossings)
    }
}
