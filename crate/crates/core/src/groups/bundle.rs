use super::{todd_coxeter, Presentation, Word};
use crate::error::{Error, Result};

/// Integer 2x2 matrix `[[a, b], [c, d]]`.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

pub fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn mat2_pow(x: &Mat2, k: u32) -> Mat2 {
    (0..k).fold(IDENTITY, |acc, _| mat2_mul(&acc, x))
}

/// Fundamental group of a torus bundle over a genus-`g` surface.
///
/// Generators are `s1, s2` (the fiber) followed by `t1..t2g`. Column `j` of
/// `monodromy[i]` gives the fiber class that `t_i` conjugates `s_j` to, and
/// `euler = (m, n)` twists the surface relation by `s1^m s2^n`.
pub fn torus_bundle(monodromy: &[Mat2], euler: (i64, i64)) -> Result<Presentation> {
    if monodromy.is_empty() || !monodromy.len().is_multiple_of(2) {
        return Err(Error::InvalidMonodromy(format!(
            "need 2g >= 2 matrices, got {}",
            monodromy.len()
        )));
    }
    for (i, m) in monodromy.iter().enumerate() {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det != 1 {
            return Err(Error::InvalidMonodromy(format!(
                "matrix {} has determinant {det}",
                i + 1
            )));
        }
    }
    let gens = 2 + monodromy.len();
    let s = |j: usize| Word::generator(j);
    let mut rels = vec![Word::commutator(&s(0), &s(1))];
    for (i, m) in monodromy.iter().enumerate() {
        let t = Word::generator(2 + i);
        for j in 0..2 {
            let image = Word::new(vec![(0, m[0][j]), (1, m[1][j])]);
            rels.push(t.conjugate(&s(j)).mul(&image.inverse()));
        }
    }
    let mut surface = Word::empty();
    for k in 0..monodromy.len() / 2 {
        surface = surface.mul(&Word::commutator(
            &Word::generator(2 + 2 * k),
            &Word::generator(3 + 2 * k),
        ));
    }
    let twist = Word::new(vec![(0, euler.0), (1, euler.1)]);
    rels.push(twist.mul(&surface.inverse()));
    Presentation::new(gens, rels)?
        .with_peripheral("fiber_s1", s(0))?
        .with_peripheral("fiber_s2", s(1))
}

/// Subgroup `<s1^l, s2^l, t1, ..., t2g>`.
pub fn fiber_power_subgroup(genus: usize, l: i64) -> Vec<Word> {
    let mut v = vec![Word::power(0, l), Word::power(1, l)];
    v.extend((0..2 * genus).map(|i| Word::generator(2 + i)));
    v
}

/// Bundle whose Euler class is divisible by `l`, so that the fiber lattice
/// `l Z^2` can be quotiented fiberwise.
///
/// In genus one the base is first unwrapped `l` times along `t1`, which
/// replaces the first monodromy by its `l`-th power and multiplies the Euler
/// class by `l`. In higher genus the bundle itself is returned when `l`
/// already divides the Euler class.
pub fn pullback_bundle(monodromy: &[Mat2], euler: (i64, i64), l: i64) -> Result<Presentation> {
    if l < 1 {
        return Err(Error::InvalidArgument(format!(
            "cover degree must be positive, got {l}"
        )));
    }
    match monodromy.len() {
        2 => {
            let first = mat2_pow(&monodromy[0], l as u32);
            torus_bundle(&[first, monodromy[1]], (euler.0 * l, euler.1 * l))
        }
        _ if euler.0 % l == 0 && euler.1 % l == 0 => torus_bundle(monodromy, euler),
        _ => Err(Error::InvalidArgument(format!(
            "Euler class ({}, {}) is not divisible by {l} in genus {}",
            euler.0,
            euler.1,
            monodromy.len() / 2
        ))),
    }
}

/// Index of `<s1^l, s2^l, t_i>` in the pulled-back bundle group.
pub fn fiber_power_index(
    monodromy: &[Mat2],
    euler: (i64, i64),
    l: i64,
    max_cosets: usize,
) -> Result<usize> {
    let p = pullback_bundle(monodromy, euler, l)?;
    let table = todd_coxeter(
        &p,
        &fiber_power_subgroup(monodromy.len() / 2, l),
        max_cosets,
    )?;
    Ok(table.index())
}

/// Monodromy file: one SL(2,Z) matrix per line as four integers (row-major),
/// or `id` for all-identity monodromy of the given genus.
pub fn parse_monodromy(text: &str, genus: usize) -> Result<Vec<Mat2>> {
    if text.trim() == "id" {
        return Ok(vec![IDENTITY; 2 * genus]);
    }
    let mut out = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        if line == "id" {
            out.push(IDENTITY);
            continue;
        }
        let v: Vec<i64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
            })
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::Parse(format!(
                "matrix line needs four integers: {line:?}"
            )));
        }
        out.push([[v[0], v[1]], [v[2], v[3]]]);
    }
    if out.len() != 2 * genus {
        return Err(Error::InvalidMonodromy(format!(
            "genus {genus} needs {} matrices, got {}",
            2 * genus,
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHEAR: Mat2 = [[1, 1], [0, 1]];

    #[test]
    fn abelianizations() {
        let p = torus_bundle(&[IDENTITY, IDENTITY], (0, 0)).unwrap();
        assert_eq!(p.relators().len(), 6);
        assert_eq!(p.abelianization(), (4, vec![]));
        assert_eq!(
            torus_bundle(&[SHEAR, IDENTITY], (0, 0))
                .unwrap()
                .abelianization()
                .0,
            3
        );
    }

    #[test]
    fn euler_relator() {
        let p = torus_bundle(&[IDENTITY, IDENTITY], (1, 0)).unwrap();
        let expect: Word = "x1 x4 x3 x4^-1 x3^-1".parse().unwrap();
        assert_eq!(p.relators().last(), Some(&expect));
        let surface = Word::commutator(&Word::generator(2), &Word::generator(3));
        assert_eq!(
            &Word::generator(0).mul(&surface.inverse()),
            p.relators().last().unwrap()
        );
        assert_eq!(p.abelianization(), (3, vec![]));
    }

    #[test]
    fn rejects_bad_monodromy() {
        assert!(matches!(
            torus_bundle(&[[[2, 0], [0, 1]], IDENTITY], (0, 0)),
            Err(Error::InvalidMonodromy(_))
        ));
        assert!(torus_bundle(&[IDENTITY], (0, 0)).is_err());
    }

    #[test]
    fn fiber_power_indices() {
        for mono in [[IDENTITY, IDENTITY], [SHEAR, IDENTITY]] {
            for euler in [(0, 0), (1, 1)] {
                for l in [2, 3] {
                    assert_eq!(
                        fiber_power_index(&mono, euler, l, 10_000).unwrap(),
                        (l * l) as usize
                    );
                }
            }
        }
        // without pulling back, s1 s2 is a commutator of base loops and lies in the subgroup
        let p = torus_bundle(&[IDENTITY, IDENTITY], (1, 1)).unwrap();
        assert_eq!(
            todd_coxeter(&p, &fiber_power_subgroup(1, 3), 10_000)
                .unwrap()
                .index(),
            3
        );
    }

    #[test]
    fn higher_genus_needs_divisible_euler() {
        let mono = [IDENTITY; 4];
        assert_eq!(fiber_power_index(&mono, (2, 0), 2, 10_000).unwrap(), 4);
        assert!(matches!(
            pullback_bundle(&mono, (1, 0), 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn monodromy_files() {
        assert_eq!(parse_monodromy("id", 2).unwrap().len(), 4);
        assert_eq!(
            parse_monodromy("1 1 0 1\n1 0 0 1\n", 1).unwrap(),
            vec![SHEAR, IDENTITY]
        );
        assert!(parse_monodromy("1 1 0\n1 0 0 1\n", 1).is_err());
        assert!(parse_monodromy("1 0 0 1\n", 1).is_err());
    }
}
