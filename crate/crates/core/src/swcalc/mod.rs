//! Lattice series for Seiberg–Witten invariants: rational forms, expansion
//! on finite boxes, gluing along lattice maps and the product formulas.

mod formulas;
mod series;

pub use formulas::{
    cor36_check, glue_sum, is_monic, knot_surgery_sw, meng_taubes, monicity, Monicity,
};
pub use series::{LatticeMap, SWSeries, DEFAULT_TRUNCATION};
