use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::{FiniteGroup, Perm};
use crate::error::{Error, Result};
use crate::groups::{Presentation, Word};

/// Surjection from a presented group onto a finite group, stored as the
/// element index of each generator's image.
#[derive(Clone, PartialEq, Eq)]
pub struct Epimorphism {
    group: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl Epimorphism {
    /// Wraps generator images, checking relators and surjectivity.
    pub fn new(p: &Presentation, group: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != p.generators() || images.iter().any(|&i| i >= group.order()) {
            return Err(Error::InvalidArgument(
                "one image per generator required".into(),
            ));
        }
        let e = Epimorphism { group, images };
        if let Some(r) = p.relators().iter().position(|r| e.eval(r) != 0) {
            return Err(Error::InvalidRepresentation { relator: r });
        }
        if e.group.subgroup_order(&e.images) != e.group.order() {
            return Err(Error::InvalidArgument(
                "images do not generate the group".into(),
            ));
        }
        Ok(e)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn shared_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Element indices of the generator images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &Perm {
        self.group.element(self.images[g])
    }

    /// Element index of the image of `w`.
    pub fn eval(&self, w: &Word) -> usize {
        w.letters().fold(0, |acc, (g, s)| {
            let x = if s > 0 {
                self.images[g]
            } else {
                self.group.inv(self.images[g])
            };
            self.group.mul(acc, x)
        })
    }

    pub fn eval_perm(&self, w: &Word) -> &Perm {
        self.group.element(self.eval(w))
    }

    /// Independent re-check with raw permutation arithmetic: relators map
    /// to the identity and the images generate every listed element.
    pub fn verify(&self, p: &Presentation) -> bool {
        let d = self.group.degree();
        let perms: Vec<&Perm> = (0..self.images.len()).map(|g| self.image(g)).collect();
        let kills = p.relators().iter().all(|r| {
            r.letters()
                .fold(Perm::identity(d), |acc, (g, s)| {
                    if s > 0 {
                        acc.compose(perms[g])
                    } else {
                        acc.compose(&perms[g].inverse())
                    }
                })
                .is_identity()
        });
        let owned: Vec<Perm> = perms.into_iter().cloned().collect();
        let mut span = super::closure(d, &owned);
        let mut all = self.group.elements().to_vec();
        span.sort();
        all.sort();
        kills && span == all
    }
}

impl fmt::Debug for Epimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Epimorphism({}, {:?})", self.group.name(), self.images)
    }
}

/// One line per generator: `x1 -> (1 2)`.
impl fmt::Display for Epimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in 0..self.images.len() {
            if g > 0 {
                writeln!(f)?;
            }
            write!(f, "x{} -> {}", g + 1, self.image(g))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EpiOptions {
    /// Maximum number of search nodes (branch points) to visit.
    pub budget: u64,
    /// Keep one representative per conjugation orbit.
    pub dedup_conjugacy: bool,
}

impl Default for EpiOptions {
    fn default() -> Self {
        EpiOptions {
            budget: 10_000_000,
            dedup_conjugacy: false,
        }
    }
}

struct Search<'a> {
    group: &'a FiniteGroup,
    gens: usize,
    relators: Vec<Vec<(usize, i64)>>,
    budget: u64,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    fn letter(&self, assign: &[Option<usize>], g: usize, s: i64) -> usize {
        let x = assign[g].expect("assigned");
        if s > 0 {
            x
        } else {
            self.group.inv(x)
        }
    }

    /// Checks completed relators and solves relators with a single unknown
    /// letter. Returns false on a contradiction.
    fn propagate(&self, assign: &mut [Option<usize>]) -> bool {
        loop {
            let mut changed = false;
            for r in &self.relators {
                // the single unknown generator and its letter count; `None`
                // count once two distinct generators are unknown
                let mut unknown = None;
                let mut count = Some(0);
                for &(g, _) in r.iter().filter(|(g, _)| assign[*g].is_none()) {
                    match unknown {
                        Some(u) if u != g => count = None,
                        _ => {
                            unknown = Some(g);
                            count = count.map(|c| c + 1);
                        }
                    }
                }
                match (unknown, count) {
                    (None, _) => {
                        let v = r.iter().fold(0, |acc, &(g, s)| {
                            self.group.mul(acc, self.letter(assign, g, s))
                        });
                        if v != 0 {
                            return false;
                        }
                    }
                    (Some(x), Some(1)) => {
                        // r = u x^e v = 1, so x^e = u^-1 v^-1
                        let k = r
                            .iter()
                            .position(|&(g, _)| g == x)
                            .expect("unknown letter present");
                        let u = r[..k].iter().fold(0, |acc, &(g, s)| {
                            self.group.mul(acc, self.letter(assign, g, s))
                        });
                        let v = r[k + 1..].iter().fold(0, |acc, &(g, s)| {
                            self.group.mul(acc, self.letter(assign, g, s))
                        });
                        let xe = self.group.mul(self.group.inv(u), self.group.inv(v));
                        assign[x] = Some(if r[k].1 > 0 { xe } else { self.group.inv(xe) });
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&self, mut assign: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        if self.exhausted.load(Ordering::Relaxed) || !self.propagate(&mut assign) {
            return;
        }
        match assign.iter().position(Option::is_none) {
            None => {
                let images: Vec<usize> = assign.into_iter().map(|x| x.expect("complete")).collect();
                if self.group.subgroup_order(&images) == self.group.order() {
                    out.push(images);
                }
            }
            Some(g) => {
                if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                    self.exhausted.store(true, Ordering::Relaxed);
                    return;
                }
                for e in 0..self.group.order() {
                    let mut next = assign.clone();
                    next[g] = Some(e);
                    self.dfs(next, out);
                }
            }
        }
    }

    fn run(&self) -> Vec<Vec<usize>> {
        let mut root = vec![None; self.gens];
        if !self.propagate(&mut root) {
            return Vec::new();
        }
        let Some(first) = root.iter().position(Option::is_none) else {
            let mut out = Vec::new();
            self.dfs(root, &mut out);
            return out;
        };
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return Vec::new();
        }
        let mut found: Vec<Vec<usize>> = (0..self.group.order())
            .into_par_iter()
            .flat_map_iter(|e| {
                let mut next = root.clone();
                next[first] = Some(e);
                let mut out = Vec::new();
                self.dfs(next, &mut out);
                out
            })
            .collect();
        found.sort();
        found
    }
}

/// All epimorphisms from `p` onto `group`, sorted by image indices.
pub fn enumerate_epimorphisms(
    p: &Presentation,
    group: &FiniteGroup,
    budget: u64,
) -> Result<Vec<Epimorphism>> {
    enumerate_epimorphisms_with(
        p,
        group,
        &EpiOptions {
            budget,
            dedup_conjugacy: false,
        },
    )
    .map(|(e, _)| e)
}

/// Like [`enumerate_epimorphisms`], also returning the number of search
/// nodes used.
pub fn enumerate_epimorphisms_with(
    p: &Presentation,
    group: &FiniteGroup,
    opts: &EpiOptions,
) -> Result<(Vec<Epimorphism>, u64)> {
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let search = Search {
        group,
        gens: p.generators(),
        relators: p.relators().iter().map(|r| r.letters().collect()).collect(),
        budget: opts.budget,
        nodes: &nodes,
        exhausted: &exhausted,
    };
    let mut found = search.run();
    if opts.dedup_conjugacy {
        found = conjugacy_representatives(group, found);
    }
    let shared = Arc::new(group.clone());
    let epis: Vec<Epimorphism> = found
        .into_iter()
        .map(|images| Epimorphism {
            group: Arc::clone(&shared),
            images,
        })
        .collect();
    let used = nodes.load(Ordering::Relaxed).min(opts.budget);
    if exhausted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExhausted {
            budget: opts.budget,
            found: epis,
        });
    }
    Ok((epis, used))
}

/// Keeps the lexicographically least tuple of each conjugation orbit.
fn conjugacy_representatives(group: &FiniteGroup, found: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    found
        .into_iter()
        .filter(|images| {
            (0..group.order()).all(|c| {
                let ci = group.inv(c);
                let conj: Vec<usize> = images
                    .iter()
                    .map(|&x| group.mul(group.mul(ci, x), c))
                    .collect();
                &conj >= images
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::PDCode;

    fn trefoil() -> Presentation {
        "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
            .parse::<PDCode>()
            .unwrap()
            .wirtinger()
    }

    /// Brute force over all image tuples.
    fn brute(p: &Presentation, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut out = Vec::new();
        let total = n.pow(p.generators() as u32);
        for code in 0..total {
            let mut c = code;
            let images: Vec<usize> = (0..p.generators())
                .map(|_| {
                    let x = c % n;
                    c /= n;
                    x
                })
                .collect();
            let ok = p.relators().iter().all(|r| {
                r.letters().fold(0, |acc, (x, s)| {
                    let y = if s > 0 { images[x] } else { g.inv(images[x]) };
                    g.mul(acc, y)
                }) == 0
            });
            if ok && g.subgroup_order(&images) == n {
                out.push(images);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn trefoil_onto_z3() {
        let g = FiniteGroup::cyclic(3);
        let epis = enumerate_epimorphisms(&trefoil(), &g, 1000).unwrap();
        assert_eq!(epis.len(), 2);
    }

    #[test]
    fn trivial_target() {
        let epis = enumerate_epimorphisms(&trefoil(), &FiniteGroup::trivial(), 10).unwrap();
        assert_eq!(epis.len(), 1);
        let free = Presentation::new(2, vec![]).unwrap();
        assert_eq!(
            enumerate_epimorphisms(&free, &FiniteGroup::trivial(), 10)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn trefoil_onto_s3_matches_brute_force() {
        let g = FiniteGroup::symmetric(3);
        // two-generator presentation <x, y | xyx = yxy>
        let p = Presentation::new(2, vec!["x1 x2 x1 x2^-1 x1^-1 x2^-1".parse().unwrap()]).unwrap();
        let epis = enumerate_epimorphisms(&p, &g, 1000).unwrap();
        let got: Vec<Vec<usize>> = epis.iter().map(|e| e.images().to_vec()).collect();
        assert!(!got.is_empty());
        assert_eq!(got, brute(&p, &g));
        let wirt = enumerate_epimorphisms(&trefoil(), &g, 1000).unwrap();
        assert_eq!(wirt.len(), got.len());
        assert!(wirt.iter().all(|e| e.verify(&trefoil())));
    }

    #[test]
    fn budget_exhaustion_carries_partial_results() {
        let free = Presentation::new(3, vec![]).unwrap();
        match enumerate_epimorphisms(&free, &FiniteGroup::symmetric(3), 3) {
            Err(Error::BudgetExhausted { budget: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn conjugacy_dedup_picks_one_per_orbit() {
        let g = FiniteGroup::symmetric(3);
        let all = enumerate_epimorphisms(&trefoil(), &g, 1000).unwrap();
        let opts = EpiOptions {
            budget: 1000,
            dedup_conjugacy: true,
        };
        let (reps, _) = enumerate_epimorphisms_with(&trefoil(), &g, &opts).unwrap();
        // orbits by brute force over the undeduplicated list
        let mut orbits: Vec<Vec<Vec<usize>>> = Vec::new();
        for e in &all {
            let orbit: Vec<Vec<usize>> = {
                let mut o: Vec<Vec<usize>> = (0..g.order())
                    .map(|c| {
                        e.images()
                            .iter()
                            .map(|&x| g.mul(g.mul(g.inv(c), x), c))
                            .collect()
                    })
                    .collect();
                o.sort();
                o.dedup();
                o
            };
            if !orbits.contains(&orbit) {
                orbits.push(orbit);
            }
        }
        assert_eq!(reps.len(), orbits.len());
        for o in &orbits {
            assert_eq!(
                reps.iter()
                    .filter(|r| o.contains(&r.images().to_vec()))
                    .count(),
                1
            );
        }
    }

    #[test]
    fn display_lines() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let p = Presentation::new(1, vec![]).unwrap();
        let e = Epimorphism::new(&p, g, vec![1]).unwrap();
        assert_eq!(e.to_string(), "x1 -> (1 2)");
    }
}
