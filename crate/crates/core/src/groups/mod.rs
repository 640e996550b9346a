//! Words, presentations, knot diagrams and coset machinery.

pub mod bundle;
mod coset;
mod pd;
mod presentation;
mod schreier;
mod word;

pub use bundle::{
    fiber_power_index, fiber_power_subgroup, mat2_mul, mat2_pow, parse_monodromy, pullback_bundle,
    torus_bundle, Mat2, IDENTITY,
};
pub use coset::{todd_coxeter, CosetTable};
pub use pd::{PDCode, WirtingerCrossing};
pub use presentation::Presentation;
pub use schreier::{reidemeister_schreier, SchreierSystem};
pub use word::Word;
