//! Non-fiberedness certificates, cover-model numerics and the symplectic
//! verdict for knot surgery on torus bundles.

use std::fmt;

use rayon::prelude::*;

use crate::covers::cover_invariants;
use crate::error::{Error, Result};
use crate::foxcalc::{
    alexander_polynomial, rep_from_epimorphism, twisted_alexander, TwistedAlexander,
};
use crate::groups::{torus_bundle, Mat2, PDCode, Word};
use crate::quotients::{enumerate_epimorphisms_with, EpiOptions, Epimorphism, FiniteGroup};
use crate::ring::{Coefficient, LaurentPoly};
use crate::swcalc::is_monic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonFiberedCertificate,
    NonMonic,
    NoObstructionFound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NonFiberedCertificate => "NonFiberedCertificate",
            Verdict::NonMonic => "NonMonic",
            Verdict::NoObstructionFound => "NoObstructionFound",
        })
    }
}

/// One epimorphism tried by the search and its twisted polynomial.
#[derive(Clone, Debug)]
pub struct TwistedEntry<C> {
    pub epimorphism: Epimorphism,
    pub twisted: TwistedAlexander<C>,
}

impl<C: Coefficient> TwistedEntry<C> {
    pub fn vanishing(&self) -> bool {
        self.twisted.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport<C> {
    pub knot: String,
    /// Untwisted Alexander polynomial of the zero surgery.
    pub delta: LaurentPoly<C>,
    pub monic: bool,
    pub entries: Vec<TwistedEntry<C>>,
    pub verdict: Verdict,
    /// Search nodes consumed by epimorphism enumeration.
    pub budget_used: u64,
    /// The search stopped early; `NoObstructionFound` then only holds within
    /// the budget.
    pub budget_exhausted: bool,
}

impl<C: Coefficient> ObstructionReport<C> {
    /// The first vanishing entry, if any.
    pub fn certificate(&self) -> Option<&TwistedEntry<C>> {
        self.entries.iter().find(|e| e.vanishing())
    }
}

impl<C: Coefficient> fmt::Display for ObstructionReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot: {}", self.knot)?;
        writeln!(f, "delta: {}", self.delta)?;
        writeln!(f, "monic: {}", if self.monic { "yes" } else { "no" })?;
        writeln!(f, "epimorphisms_checked: {}", self.entries.len())?;
        writeln!(f, "budget_used: {}", self.budget_used)?;
        if self.budget_exhausted {
            writeln!(f, "budget_exhausted: yes")?;
        }
        write!(f, "verdict: {}", self.verdict)?;
        if let Some(c) = self.certificate() {
            write!(f, "\ncertificate.group: {}", c.epimorphism.group().name())?;
            for line in c.epimorphism.to_string().lines() {
                write!(f, "\n  {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub catalog: Vec<FiniteGroup>,
    /// Total node budget shared across the catalog.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            catalog: FiniteGroup::default_catalog(),
            budget: EpiOptions::default().budget,
        }
    }
}

/// Searches the zero surgery of `knot` for a vanishing twisted Alexander
/// polynomial, with `φ` the abelianization and `α` ranging over the
/// epimorphisms onto the catalog groups in enumeration order.
pub fn fibered_obstruction_search<C: Coefficient>(
    name: &str,
    knot: &PDCode,
    opts: &SearchOptions,
) -> Result<ObstructionReport<C>> {
    let p = knot.zero_surgery();
    let delta = alexander_polynomial::<C>(&p)?.polynomial;
    let monic = is_monic(&delta);
    let mut report = ObstructionReport {
        knot: name.to_string(),
        delta,
        monic,
        entries: Vec::new(),
        verdict: Verdict::NonMonic,
        budget_used: 0,
        budget_exhausted: false,
    };
    if !monic {
        return Ok(report);
    }
    report.verdict = Verdict::NoObstructionFound;
    let phi = vec![1; p.generators()];
    for group in &opts.catalog {
        let remaining = opts.budget - report.budget_used;
        let (epis, used) = match enumerate_epimorphisms_with(
            &p,
            group,
            &EpiOptions {
                budget: remaining,
                dedup_conjugacy: false,
            },
        ) {
            Ok(r) => r,
            Err(Error::BudgetExhausted { found, .. }) => {
                report.budget_exhausted = true;
                (found, remaining)
            }
            Err(e) => return Err(e),
        };
        report.budget_used += used;
        let computed: Vec<TwistedEntry<C>> = epis
            .into_par_iter()
            .map(|e| {
                let rep = rep_from_epimorphism(&p, &e, &phi)?;
                Ok(TwistedEntry {
                    twisted: twisted_alexander(&p, &rep)?,
                    epimorphism: e,
                })
            })
            .collect::<Result<_>>()?;
        // keep entries up to and including the first vanishing one
        let cut = computed.iter().position(TwistedEntry::vanishing);
        match cut {
            Some(i) => {
                report.entries.extend(computed.into_iter().take(i + 1));
                report.verdict = Verdict::NonFiberedCertificate;
                return Ok(report);
            }
            None => report.entries.extend(computed),
        }
        if report.budget_exhausted {
            break;
        }
    }
    Ok(report)
}

/// Numerics of the finite cover built from an epimorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverModel {
    pub r: usize,
    pub l: usize,
    pub degree: usize,
    pub b1_bound: i64,
    pub b2plus_bound: i64,
    /// `r > 1`, needed by the bipartite-graph argument.
    pub r_ok: bool,
    /// `l > 3`; otherwise a preliminary cyclic cover is required.
    pub l_ok: bool,
}

impl CoverModel {
    pub fn from_rl(r: usize, l: usize) -> Self {
        let b1_bound = (r as i64 - 1) * (l as i64 - 1);
        CoverModel {
            r,
            l,
            degree: r * l * l * l,
            b1_bound,
            b2plus_bound: b1_bound - 1,
            r_ok: r > 1,
            l_ok: l > 3,
        }
    }
}

impl fmt::Display for CoverModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cover_model.r: {}", self.r)?;
        writeln!(f, "cover_model.l: {}", self.l)?;
        writeln!(f, "cover_model.degree: {}", self.degree)?;
        writeln!(f, "cover_model.b1_bound: {}", self.b1_bound)?;
        write!(f, "cover_model.b2plus_bound: {}", self.b2plus_bound)
    }
}

pub fn build_cover_model(alpha: &Epimorphism, peripheral: &Word) -> CoverModel {
    let d = cover_invariants(alpha, peripheral);
    CoverModel::from_rl(d.r, d.l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symplecticity {
    NotSymplectic,
    Symplectic,
    Inconclusive,
}

impl fmt::Display for Symplecticity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symplecticity::NotSymplectic => "not symplectic",
            Symplecticity::Symplectic => "symplectic",
            Symplecticity::Inconclusive => "inconclusive at this budget",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerdictOptions {
    pub search: SearchOptions,
    /// Treat the knot as fibered.
    pub assert_fibered: bool,
}

#[derive(Clone, Debug)]
pub struct VerdictReport<C> {
    pub search: ObstructionReport<C>,
    pub genus: usize,
    pub euler: (i64, i64),
    pub verdict: Symplecticity,
    /// Present when the obstruction comes with an epimorphism.
    pub cover_model: Option<CoverModel>,
    pub reason: String,
    /// Hypotheses taken on trust.
    pub assumptions: Vec<String>,
}

impl<C: Coefficient> fmt::Display for VerdictReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.search)?;
        writeln!(
            f,
            "bundle: genus {}, euler ({}, {})",
            self.genus, self.euler.0, self.euler.1
        )?;
        writeln!(f, "symplectic: {}", self.verdict)?;
        writeln!(f, "reason: {}", self.reason)?;
        if let Some(m) = &self.cover_model {
            writeln!(f, "{m}")?;
        }
        let assumptions: Vec<&str> = self.assumptions.iter().map(String::as_str).collect();
        write!(f, "assumptions: {}", assumptions.join("; "))
    }
}

/// Decides whether knot surgery along the fiber of the torus bundle can be
/// symplectic. The fiber class is assumed nonzero in homology.
///
/// Asserting fiberedness for a knot that carries an obstruction is an error.
pub fn symplectic_verdict<C: Coefficient>(
    name: &str,
    knot: &PDCode,
    monodromy: &[Mat2],
    euler: (i64, i64),
    opts: &VerdictOptions,
) -> Result<VerdictReport<C>> {
    torus_bundle(monodromy, euler)?;
    let search = fibered_obstruction_search::<C>(name, knot, &opts.search)?;
    let mut assumptions = vec!["fiber class [T] is nonzero in rational homology".to_string()];
    let obstructed = matches!(
        search.verdict,
        Verdict::NonMonic | Verdict::NonFiberedCertificate
    );
    if obstructed && opts.assert_fibered {
        return Err(Error::InvalidArgument(format!(
            "{name} was asserted fibered but the search found {}",
            search.verdict
        )));
    }
    let (verdict, cover_model, reason) = if obstructed {
        let dual = knot
            .zero_surgery()
            .peripheral("dual_knot")
            .cloned()
            .unwrap_or_else(|| Word::generator(0));
        let model = search
            .certificate()
            .map(|c| build_cover_model(&c.epimorphism, &dual));
        let reason = match search.verdict {
            Verdict::NonMonic => "Alexander polynomial is not monic".to_string(),
            _ => "a twisted Alexander polynomial of the zero surgery vanishes".to_string(),
        };
        (Symplecticity::NotSymplectic, model, reason)
    } else if knot.crossing_count() == 0 {
        (
            Symplecticity::Symplectic,
            None,
            "trivial knot; surgery returns the bundle".to_string(),
        )
    } else if opts.assert_fibered {
        assumptions.push(format!("{name} is fibered"));
        (
            Symplecticity::Symplectic,
            None,
            "fibered knot surgery on a symplectic bundle".to_string(),
        )
    } else {
        (
            Symplecticity::Inconclusive,
            None,
            "no obstruction found and fiberedness not asserted".to_string(),
        )
    };
    Ok(VerdictReport {
        search,
        genus: monodromy.len() / 2,
        euler,
        verdict,
        cover_model,
        reason,
        assumptions,
    })
}
