//! Command-line front end: argument parsing, the knot table and output
//! formatting. [`run`] is the whole program minus process exit.

pub mod record;
pub mod table;

use std::path::Path;

use clap::{Args, Parser, Subcommand};
use knotforge::covers::cover_invariants;
use knotforge::foxcalc::{alexander_polynomial, rep_from_epimorphism, twisted_alexander};
use knotforge::groups::{fiber_power_index, parse_monodromy, torus_bundle, Mat2, Word};
use knotforge::pipeline::{
    fibered_obstruction_search, symplectic_verdict, ObstructionReport, SearchOptions,
    VerdictOptions,
};
use knotforge::quotients::{enumerate_epimorphisms, EpiOptions, Epimorphism, FiniteGroup};
use knotforge::swcalc::{knot_surgery_sw, SWSeries, DEFAULT_TRUNCATION};
use knotforge::{BigInt, Poly, Series};

use record::Record;
pub use table::{knot_lookup, knot_table, resolve_knot, KnotTableEntry};

/// Largest coset table built by `cover-index`.
const MAX_COSETS: usize = 1_000_000;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown names or unreadable inputs; exit code 2.
    Usage(String),
    /// A computation failed; exit code 1.
    Compute(knotforge::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<knotforge::Error> for CliError {
    fn from(e: knotforge::Error) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "knotforge",
    version,
    about = "Twisted Alexander polynomials, covers and SW series for knot surgery"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BundleArgs {
    #[arg(long)]
    pub genus: usize,
    /// File of SL(2,Z) matrices, one per line, or `id`.
    #[arg(long)]
    pub monodromy: String,
    /// Euler class as `m,n`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub euler: (i64, i64),
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander polynomial of a knot.
    Alex { knot: String },
    /// Twisted Alexander polynomial of the knot group for one epimorphism.
    Talex {
        knot: String,
        #[arg(long)]
        group: String,
        /// 1-based position in the enumeration order.
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Epimorphisms of the knot group onto finite groups.
    Quotients {
        knot: String,
        #[arg(long, value_delimiter = ',', required = true)]
        groups: Vec<String>,
    },
    /// Non-fiberedness search on the zero surgery.
    Fibered {
        knot: String,
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Seiberg–Witten series after knot surgery.
    SurgerySw {
        /// Series file, or `1`.
        #[arg(long = "sw-x")]
        sw_x: String,
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: u32,
    },
    /// Presentation of the torus bundle group.
    BundlePi1 {
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Index of the fiber-power subgroup.
    CoverIndex {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        l: i64,
    },
    /// Symplecticity of knot surgery on a torus bundle.
    Verdict {
        knot: String,
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long)]
        assert_fibered: bool,
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected m,n but got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Result of a whole invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&r.to_json()).expect("records serialize")
            } else {
                r.render_text()
            };
            Outcome {
                code: 0,
                stdout: stdout + "\n",
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}

/// Sizes the global thread pool from `KNOTFORGE_THREADS`, if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KNOTFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Usage(format!("KNOTFORGE_THREADS={v:?} is not a count")))?;
    // a pool already built by an earlier call keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn groups_from(names: &Option<Vec<String>>) -> Result<Vec<FiniteGroup>, CliError> {
    match names {
        None => Ok(FiniteGroup::default_catalog()),
        Some(v) => v
            .iter()
            .map(|n| FiniteGroup::by_name(n.trim()).map_err(|e| CliError::Usage(e.to_string())))
            .collect(),
    }
}

fn search_options(
    groups: &Option<Vec<String>>,
    budget: Option<u64>,
) -> Result<SearchOptions, CliError> {
    Ok(SearchOptions {
        catalog: groups_from(groups)?,
        budget: budget.unwrap_or(EpiOptions::default().budget),
    })
}

fn read_monodromy(b: &BundleArgs) -> Result<Vec<Mat2>, CliError> {
    let text = if b.monodromy.trim() == "id" {
        "id".to_string()
    } else {
        std::fs::read_to_string(Path::new(&b.monodromy)).map_err(|e| {
            CliError::Usage(format!("cannot read monodromy file {:?}: {e}", b.monodromy))
        })?
    };
    parse_monodromy(&text, b.genus).map_err(|e| CliError::Usage(e.to_string()))
}

fn epi_lines(e: &Epimorphism) -> Vec<String> {
    e.to_string().lines().map(str::to_string).collect()
}

fn execute(cmd: &Command) -> Result<Record, CliError> {
    match cmd {
        Command::Alex { knot } => {
            let (name, pd) = resolve_knot(knot)?;
            let d = alexander_polynomial::<BigInt>(&pd.wirtinger())?;
            Ok(Record::new()
                .hidden("knot", name)
                .bare("delta", d.polynomial))
        }
        Command::Talex { knot, group, index } => talex(knot, group, *index),
        Command::Quotients { knot, groups } => {
            let (name, pd) = resolve_knot(knot)?;
            let p = pd.wirtinger();
            let mut r = Record::new().text("knot", name);
            for g in groups_from(&Some(groups.clone()))? {
                let epis = enumerate_epimorphisms(&p, &g, EpiOptions::default().budget)?;
                let mut lines = Vec::new();
                for (i, e) in epis.iter().enumerate() {
                    let images: Vec<String> = (0..p.generators())
                        .map(|x| e.image(x).to_string())
                        .collect();
                    lines.push(format!("{}: {}", i + 1, images.join(" ")));
                }
                r = r
                    .int(&format!("{}.count", g.name()), epis.len() as i64)
                    .lines(&format!("{}.epimorphisms", g.name()), lines);
            }
            Ok(r)
        }
        Command::Fibered {
            knot,
            groups,
            budget,
        } => {
            let (name, pd) = resolve_knot(knot)?;
            let report = fibered_obstruction_search::<BigInt>(
                &name,
                &pd,
                &search_options(groups, *budget)?,
            )?;
            Ok(report_record(&report))
        }
        Command::SurgerySw { sw_x, knot, trunc } => surgery(sw_x, knot, *trunc),
        Command::BundlePi1 { bundle } => {
            let p = torus_bundle(&read_monodromy(bundle)?, bundle.euler)?;
            let (b1, torsion) = p.abelianization();
            let torsion: Vec<String> = torsion.iter().map(BigInt::to_string).collect();
            Ok(Record::new()
                .int("generators", p.generators() as i64)
                .lines(
                    "relators",
                    p.relators().iter().map(ToString::to_string).collect(),
                )
                .int("b1", b1 as i64)
                .text(
                    "torsion",
                    if torsion.is_empty() {
                        "none".to_string()
                    } else {
                        torsion.join(" ")
                    },
                ))
        }
        Command::CoverIndex { bundle, l } => {
            let index = fiber_power_index(&read_monodromy(bundle)?, bundle.euler, *l, MAX_COSETS)?;
            Ok(Record::new().int("index", index as i64))
        }
        Command::Verdict {
            knot,
            bundle,
            assert_fibered,
            groups,
            budget,
        } => {
            let (name, pd) = resolve_knot(knot)?;
            let opts = VerdictOptions {
                search: search_options(groups, *budget)?,
                assert_fibered: *assert_fibered,
            };
            let v = symplectic_verdict::<BigInt>(
                &name,
                &pd,
                &read_monodromy(bundle)?,
                bundle.euler,
                &opts,
            )?;
            let mut r = report_record(&v.search)
                .text("bundle.genus", v.genus)
                .text("bundle.euler", format!("{},{}", v.euler.0, v.euler.1))
                .text("symplectic", v.verdict)
                .text("reason", &v.reason);
            if let Some(m) = v.cover_model {
                r = r
                    .int("cover_model.r", m.r as i64)
                    .int("cover_model.l", m.l as i64)
                    .int("cover_model.degree", m.degree as i64)
                    .int("cover_model.b1_bound", m.b1_bound)
                    .int("cover_model.b2plus_bound", m.b2plus_bound)
                    .flag("cover_model.r_gt_1", m.r_ok)
                    .flag("cover_model.l_gt_3", m.l_ok);
            }
            Ok(r.lines("assumptions", v.assumptions))
        }
    }
}

fn talex(knot: &str, group: &str, index: usize) -> Result<Record, CliError> {
    let (name, pd) = resolve_knot(knot)?;
    let g = FiniteGroup::by_name(group).map_err(|e| CliError::Usage(e.to_string()))?;
    let p = pd.wirtinger();
    let epis = enumerate_epimorphisms(&p, &g, EpiOptions::default().budget)?;
    if index == 0 || index > epis.len() {
        return Err(CliError::Usage(format!(
            "--index {index} out of range: {name} has {} epimorphisms onto {}",
            epis.len(),
            g.name()
        )));
    }
    let e = &epis[index - 1];
    let rep = rep_from_epimorphism::<BigInt>(&p, e, &vec![1; p.generators()])?;
    let d = twisted_alexander(&p, &rep)?;
    let meridian = p
        .peripheral("meridian")
        .cloned()
        .unwrap_or_else(|| Word::generator(0));
    let data = cover_invariants(e, &meridian);
    Ok(Record::new()
        .text("knot", name)
        .text("group", g.name())
        .text("index", format!("{index}/{}", epis.len()))
        .lines("images", epi_lines(e))
        .text("meridian_order", data.l)
        .text("polynomial", &d.polynomial)
        .int("deleted_generator", d.deleted_generator as i64 + 1)
        .flag("correction_exact", d.correction_exact))
}

fn surgery(sw_x: &str, knot: &str, trunc: u32) -> Result<Record, CliError> {
    let (name, pd) = resolve_knot(knot)?;
    let base: Series = if sw_x.trim() == "1" {
        SWSeries::finite(Poly::one(1))
    } else {
        let text = std::fs::read_to_string(sw_x)
            .map_err(|e| CliError::Usage(format!("cannot read series file {sw_x:?}: {e}")))?;
        text.parse()
            .map_err(|e: knotforge::Error| CliError::Usage(e.to_string()))?
    };
    let delta = alexander_polynomial::<BigInt>(&pd.wirtinger())?.polynomial;
    let out = knot_surgery_sw(&base, &delta)?.with_trunc(trunc);
    let listing = out.listing(trunc)?;
    Ok(Record::new()
        .text("knot", name)
        .text("delta", &delta)
        .text("num", out.numerator())
        .lines(
            "den",
            out.denominators()
                .iter()
                .map(|m| format!("(1-{m})"))
                .collect(),
        )
        .int("trunc", i64::from(trunc))
        .lines("expansion", listing.lines().map(str::to_string).collect()))
}

fn report_record(r: &ObstructionReport<BigInt>) -> Record {
    let mut rec = Record::new()
        .text("knot", &r.knot)
        .text("delta", &r.delta)
        .flag("monic", r.monic)
        .text("verdict", r.verdict)
        .int("epimorphisms_checked", r.entries.len() as i64)
        .int("budget_used", r.budget_used as i64)
        .flag("budget_exhausted", r.budget_exhausted);
    if let Some(c) = r.certificate() {
        rec = rec
            .text("certificate.group", c.epimorphism.group().name())
            .lines("certificate.images", epi_lines(&c.epimorphism));
    }
    rec
}
