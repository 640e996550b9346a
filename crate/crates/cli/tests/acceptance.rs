//! One check per acceptance criterion. Each prints a single PASS/FAIL line;
//! the test fails if any criterion fails. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::seifert_alexander;
use knotforge::covers::{cover_invariants, prop23_crosscheck};
use knotforge::foxcalc::{alexander_polynomial, fox_jacobian_row, rep_from_epimorphism};
use knotforge::groups::{fiber_power_index, Mat2, PDCode, Presentation, Word, IDENTITY};
use knotforge::pipeline::CoverModel;
use knotforge::quotients::{enumerate_epimorphisms, Epimorphism, FiniteGroup, Perm};
use knotforge::ring::{LaurentPoly, Monomial, RingMatrix};
use knotforge::swcalc::{
    cor36_check, glue_sum, knot_surgery_sw, meng_taubes, LatticeMap, SWSeries,
};
use knotforge::{BigInt, Poly, Rep, Series};
use knotforge_cli::{knot_lookup, knot_table, run};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FOX_WORDS: usize = 200;
const FOX_LIMIT: Duration = Duration::from_secs(5);
const ALEX_LIMIT: Duration = Duration::from_secs(10);
const SOLID_TORUS_RADIUS: u32 = 19;
const COR36_LIMIT: Duration = Duration::from_secs(30);
const PROP23_LIMIT: Duration = Duration::from_secs(60);
const INDEX_LIMIT: Duration = Duration::from_secs(5);
const PIPELINE_LIMIT: Duration = Duration::from_secs(120);
const SURGERY_RADIUS: u32 = 20;
const SURGERY_SAMPLES: usize = 20;
const SURGERY_MAX_TERMS: usize = 5;

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    match limit {
        Some(l) => {
            o.detail = format!("{}; {:.2?} (limit {:?})", o.detail, took, l);
            o.pass &= took < l;
        }
        None => o.detail = format!("{}; {:.2?}", o.detail, took),
    }
    o
}

fn dense_to_poly(d: &[i64]) -> Poly {
    LaurentPoly::from_terms(
        1,
        d.iter()
            .enumerate()
            .map(|(k, &c)| (Monomial::t(k as i64), BigInt::from(c))),
    )
}

fn seifert_delta(name: &str) -> Poly {
    dense_to_poly(&seifert_alexander(&knot_lookup(name).unwrap().seifert))
}

fn pd(name: &str) -> PDCode {
    knot_lookup(name).unwrap().pd
}

fn random_word(rng: &mut ChaCha8Rng, gens: i64, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i64> = (0..len)
        .map(|_| rng.gen_range(1..=gens) * if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    Word::from_letters(&letters)
}

fn fox_identity_holds(rep: &Rep, w: &Word) -> bool {
    let n = rep.dim();
    let id = RingMatrix::identity(n, 1);
    let row = fox_jacobian_row(w, rep).unwrap();
    let mut lhs = RingMatrix::zeros(n, n, 1);
    for (j, d) in row.iter().enumerate() {
        let xj = &rep.image(&Word::generator(j)).unwrap() - &id;
        lhs = &lhs + &(d * &xj);
    }
    lhs == &rep.image(w).unwrap() - &id
}

/// Free group on three letters sent to transpositions of S3, regular
/// representation; also through the sign map to Z/2.
fn criterion_1() -> Outcome {
    let free = Presentation::new(3, vec![]).unwrap();
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let t = |a, b| {
        s3.index_of(&Perm::from_cycles(3, &[&[a, b]]).unwrap())
            .unwrap()
    };
    let to_s3 = Epimorphism::new(&free, Arc::clone(&s3), vec![t(0, 1), t(1, 2), t(0, 2)]).unwrap();
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let to_z2 = Epimorphism::new(&free, z2, vec![1, 1, 1]).unwrap();
    let phi = [1, 1, 1];
    let reps: Vec<Rep> = [to_s3, to_z2]
        .iter()
        .map(|e| rep_from_epimorphism(&free, e, &phi).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = 0;
    for _ in 0..FOX_WORDS {
        let w = random_word(&mut rng, 3, 16);
        bad += reps.iter().filter(|r| !fox_identity_holds(r, &w)).count();
    }
    outcome(
        bad == 0,
        format!("{FOX_WORDS} words x (S3 regular, Z/2 regular), {bad} failures"),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for e in knot_table().iter().filter(|e| e.name != "unknot") {
        count += 1;
        let d = alexander_polynomial::<BigInt>(&e.pd.wirtinger())
            .unwrap()
            .polynomial;
        let oracle = seifert_delta(&e.name);
        let at_one = d.eval_ones();
        let ok = d == oracle.normalize()
            && (at_one == BigInt::from(1) || at_one == BigInt::from(-1))
            && d.associated(&d.reflect());
        if !ok {
            failures.push(format!("{}: {} vs {}", e.name, d, oracle));
        }
    }
    outcome(
        failures.is_empty(),
        format!("{count} knots, mismatches {failures:?}"),
    )
}

fn criterion_3() -> Outcome {
    let s: Series = meng_taubes(&Poly::one(1), 1, 1).unwrap();
    let got = s.expand(SOLID_TORUS_RADIUS).unwrap();
    let odd = LaurentPoly::from_terms(
        1,
        (0..10).map(|k| (Monomial::t(2 * k + 1), BigInt::from(1))),
    );
    outcome(
        got.associated(&odd),
        format!("radius {SOLID_TORUS_RADIUS}: {got}"),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for name in ["3_1", "4_1", "5_2", "6_1"] {
        let k = pd(name);
        let surgery = alexander_polynomial::<BigInt>(&k.zero_surgery())
            .unwrap()
            .polynomial;
        let exterior = alexander_polynomial::<BigInt>(&k.wirtinger())
            .unwrap()
            .polynomial;
        if !(cor36_check(&surgery, &exterior, 1, 0, SURGERY_RADIUS)
            && surgery.associated(&seifert_delta(name)))
        {
            bad.push(name);
        }
    }
    outcome(bad.is_empty(), format!("4 knots, failures {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for name in ["3_1", "4_1"] {
        let p = pd(name).wirtinger();
        for n in [2, 3] {
            let epis = enumerate_epimorphisms(&p, &FiniteGroup::cyclic(n), 1_000_000).unwrap();
            pass &= !epis.is_empty();
            for e in &epis {
                let c = prop23_crosscheck::<BigInt>(&p, e, &vec![1; p.generators()]).unwrap();
                pass &= c.consistent;
                lines.push(format!(
                    "{name}/Z{n}: k={:?} strict={} b1={}",
                    c.factor_exponent, c.strict, c.b1_cover
                ));
            }
        }
    }
    outcome(pass, lines.join(", "))
}

fn criterion_6() -> Outcome {
    let shear: Mat2 = [[1, 1], [0, 1]];
    let mut bad = Vec::new();
    let mut cases = 0;
    for mono in [[IDENTITY, IDENTITY], [shear, IDENTITY]] {
        for euler in [(0, 0), (1, 1)] {
            for l in [2i64, 3] {
                cases += 1;
                let idx = fiber_power_index(&mono, euler, l, 100_000).unwrap();
                if idx != (l * l) as usize {
                    bad.push(format!("{mono:?} {euler:?} l={l}: {idx}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} cases, failures {bad:?}"))
}

/// Orbits of right multiplication by `<a>` on the group, counted directly.
fn coset_count(group: &FiniteGroup, a: usize) -> (usize, usize) {
    let mut cyclic = vec![0usize];
    while let Some(&last) = cyclic.last() {
        let next = group.mul(last, a);
        if next == 0 {
            break;
        }
        cyclic.push(next);
    }
    let cosets: BTreeSet<Vec<usize>> = (0..group.order())
        .map(|g| {
            let mut c: Vec<usize> = cyclic.iter().map(|&h| group.mul(g, h)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    (cosets.len(), cyclic.len())
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for name in ["3_1", "4_1"] {
        let p = pd(name).zero_surgery();
        let dual = p.peripheral("dual_knot").unwrap().clone();
        for g in FiniteGroup::default_catalog()
            .into_iter()
            .filter(|g| g.order() <= 24)
        {
            for e in enumerate_epimorphisms(&p, &g, 10_000_000).unwrap() {
                checked += 1;
                let d = cover_invariants(&e, &dual);
                let (r, l) = coset_count(e.group(), e.eval(&dual));
                let m = CoverModel::from_rl(d.r, d.l);
                let ok = (d.r, d.l) == (r, l)
                    && r * l == g.order()
                    && m.degree == r * l * l * l
                    && m.b1_bound == (r as i64 - 1) * (l as i64 - 1)
                    && m.b2plus_bound == (r as i64 - 1) * (l as i64 - 1) - 1;
                if !ok {
                    bad.push(format!("{name}/{}", g.name()));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{checked} epimorphisms, failures {bad:?}"),
    )
}

fn cli_json(args: &[&str]) -> serde_json::Value {
    let out = run(["knotforge", "--json"].iter().chain(args));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for name in ["5_2", "6_1"] {
        let v = cli_json(&["fibered", name]);
        let oracle = seifert_delta(name).normalize().to_string();
        let ok = v["verdict"] == "NonMonic" && v["delta"] == oracle.as_str();
        pass &= ok;
        lines.push(format!("{name}: {} {}", v["verdict"], v["delta"]));
    }
    for name in ["3_1", "4_1"] {
        let v = cli_json(&["fibered", name]);
        let ok = v["verdict"] == "NoObstructionFound" && v["budget_exhausted"] == false;
        pass &= ok;
        lines.push(format!(
            "{name}: {} over {} epimorphisms",
            v["verdict"], v["epimorphisms_checked"]
        ));
    }
    outcome(pass, lines.join(", "))
}

fn random_sw_e(rng: &mut ChaCha8Rng) -> SWSeries<BigInt> {
    let terms = rng.gen_range(1..=SURGERY_MAX_TERMS);
    let p = LaurentPoly::from_terms(
        2,
        (0..terms).map(|_| {
            let e = vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)];
            (Monomial::new(e), BigInt::from(rng.gen_range(-3i64..=3)))
        }),
    );
    SWSeries::finite(p)
}

/// The complement piece glued to the knot-exterior piece, against the
/// surgery formula applied to the closed manifold's series.
fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let id = LatticeMap::identity(2);
    let torus_axis = LatticeMap::axes(1, 2, &[0], 1).unwrap();
    let mut bad = 0;
    let mut runs = 0;
    for name in ["3_1", "6_1"] {
        let delta = seifert_delta(name);
        for _ in 0..SURGERY_SAMPLES {
            runs += 1;
            let sw_e = random_sw_e(&mut rng);
            let exterior = meng_taubes(&delta, 1, 1).unwrap();
            let glued = glue_sum(
                &[sw_e.clone(), exterior],
                &[id.clone(), torus_axis.clone()],
                SURGERY_RADIUS,
            )
            .unwrap();
            let trivial = meng_taubes(&Poly::one(1), 1, 1)
                .unwrap()
                .pushforward(&torus_axis)
                .unwrap();
            let sw_x = sw_e.mul(&trivial).unwrap();
            let surgered = knot_surgery_sw(&sw_x, &delta)
                .unwrap()
                .expand(SURGERY_RADIUS)
                .unwrap();
            if glued.numerator() != &surgered {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{runs} samples at radius {SURGERY_RADIUS}, {bad} mismatches"),
    )
}

fn criterion_10() -> Outcome {
    let bundle = ["--genus", "1", "--monodromy", "id", "--euler", "0,0"];
    let verdict = |knot: &str, fibered: bool| {
        let mut args = vec!["knotforge", "--json", "verdict", knot];
        args.extend(bundle);
        if fibered {
            args.push("--assert-fibered");
        }
        let out = run(args);
        (
            out.code,
            serde_json::from_str::<serde_json::Value>(&out.stdout).ok(),
        )
    };
    let mut pass = true;
    let mut notes = Vec::new();
    let (code, v) = verdict("6_1", false);
    let v = v.unwrap_or_default();
    pass &= code == 0 && v["symplectic"] == "not symplectic" && v["verdict"] == "NonMonic";
    let (code, v) = verdict("3_1", true);
    pass &= code == 0 && v.unwrap_or_default()["symplectic"] == "symplectic";
    for e in knot_table() {
        let (plain_code, plain) = verdict(&e.name, false);
        let (fib_code, fib) = verdict(&e.name, true);
        let said = |v: &Option<serde_json::Value>| {
            v.as_ref()
                .map(|v| v["symplectic"].as_str().unwrap_or("").to_string())
        };
        let not_sympl = said(&plain).as_deref() == Some("not symplectic");
        let sympl = said(&fib).as_deref() == Some("symplectic");
        let coherent =
            plain_code == 0 && !(not_sympl && sympl) && (sympl || (not_sympl && fib_code == 1));
        if !coherent {
            pass = false;
            notes.push(e.name.clone());
        }
        // literature fibered knots are never obstructed
        if e.fibered && not_sympl {
            pass = false;
            notes.push(format!("{} fibered but obstructed", e.name));
        }
    }
    outcome(
        pass,
        format!("{} table knots, incoherent {notes:?}", knot_table().len()),
    )
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        (1, "Fox identity suite", Some(FOX_LIMIT), criterion_1),
        (
            2,
            "Alexander polynomial vs Seifert oracle",
            Some(ALEX_LIMIT),
            criterion_2,
        ),
        (3, "solid torus series", None, criterion_3),
        (
            4,
            "zero surgery vs exterior",
            Some(COR36_LIMIT),
            criterion_4,
        ),
        (
            5,
            "twisted vs cover polynomial",
            Some(PROP23_LIMIT),
            criterion_5,
        ),
        (
            6,
            "fiber-power subgroup index",
            Some(INDEX_LIMIT),
            criterion_6,
        ),
        (7, "cover arithmetic", None, criterion_7),
        (8, "obstruction pipeline", Some(PIPELINE_LIMIT), criterion_8),
        (9, "gluing vs knot surgery formula", None, criterion_9),
        (10, "verdict coherence", None, criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, title, limit, check) in criteria {
        let o = timed(limit, check);
        println!(
            "criterion {n:>2} [{title}]: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
