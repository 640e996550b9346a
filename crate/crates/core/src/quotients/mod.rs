//! Finite permutation groups and epimorphisms onto them.

mod epi;
mod group;
mod perm;

pub use epi::{enumerate_epimorphisms, enumerate_epimorphisms_with, EpiOptions, Epimorphism};
pub use group::{closure, FiniteGroup};
pub use perm::{element_order, Perm};
