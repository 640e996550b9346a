use std::collections::HashMap;
use std::fmt;

use super::Perm;
use crate::error::{Error, Result};

/// Finite permutation group with its elements listed and a product table.
///
/// Element 0 is the identity. The product `a * b` is composition
/// `elements[a] ∘ elements[b]`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

/// Smallest set containing `gens` and the identity closed under products,
/// listed breadth-first from the identity.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut elements = vec![Perm::identity(degree)];
    let mut seen: HashMap<Perm, usize> = HashMap::from([(Perm::identity(degree), 0)]);
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let h = elements[k].compose(g);
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        k += 1;
    }
    elements
}

impl FiniteGroup {
    pub fn new(name: &str, degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "{name}: generators of mixed degree"
            )));
        }
        let elements = closure(degree, &generators);
        let lookup: HashMap<Perm, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = lookup[&elements[a].compose(&elements[b])];
            }
        }
        let inverses = elements.iter().map(|g| lookup[&g.inverse()]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            generators,
            elements,
            lookup,
            table,
            inverses,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Order of the subgroup generated by the given elements.
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let a = queue[k];
            k += 1;
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push(b);
                }
            }
        }
        queue.len()
    }

    pub fn trivial() -> Self {
        FiniteGroup::new("1", 1, vec![]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let gens = if n > 1 {
            vec![Perm::from_images(rot).expect("rotation")]
        } else {
            vec![]
        };
        FiniteGroup::new(&format!("Z{n}"), n, gens).expect("cyclic group")
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("rotation");
        let flip = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
        FiniteGroup::new(&format!("D{n}"), n, vec![rot, flip]).expect("dihedral group")
    }

    pub fn symmetric(n: usize) -> Self {
        let swap = Perm::from_cycles(n, &[&[0, 1]]).expect("transposition");
        let cycle = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).expect("long cycle");
        FiniteGroup::new(&format!("S{n}"), n, vec![swap, cycle]).expect("symmetric group")
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Perm> = (2..n)
            .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).expect("3-cycle"))
            .collect();
        FiniteGroup::new(&format!("A{n}"), n, gens).expect("alternating group")
    }

    pub fn klein_four() -> Self {
        let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("double transposition");
        let b = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("double transposition");
        FiniteGroup::new("Z2xZ2", 4, vec![a, b]).expect("Klein group")
    }

    /// Catalog lookup: `1`, `Z1`..`Z12`, `D3`..`D6`, `S3`, `S4`, `S5`, `A4`,
    /// `A5`, `Z2xZ2` (also `V4`).
    pub fn by_name(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(name.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        match name {
            "1" | "Z1" => Ok(FiniteGroup::trivial()),
            "Z2xZ2" | "V4" => Ok(FiniteGroup::klein_four()),
            _ => {
                let (head, tail) = name.split_at(1.min(name.len()));
                match head {
                    "Z" if (2..=12).contains(&num(tail)?) => Ok(FiniteGroup::cyclic(num(tail)?)),
                    "D" if (3..=6).contains(&num(tail)?) => Ok(FiniteGroup::dihedral(num(tail)?)),
                    "S" if (3..=5).contains(&num(tail)?) => Ok(FiniteGroup::symmetric(num(tail)?)),
                    "A" if (4..=5).contains(&num(tail)?) => {
                        Ok(FiniteGroup::alternating(num(tail)?))
                    }
                    _ => Err(unknown()),
                }
            }
        }
    }

    /// Groups searched by default: `Z2`..`Z6`, `S3`, `D4`, `A4`, `S4`.
    pub fn default_catalog() -> Vec<FiniteGroup> {
        ["Z2", "Z3", "Z4", "Z5", "Z6", "S3", "D4", "A4", "S4"]
            .iter()
            .map(|n| FiniteGroup::by_name(n).expect("catalog names are valid"))
            .collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}
