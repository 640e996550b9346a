//! Fox calculus and twisted Alexander polynomials.

mod alexander;
mod fox;
mod rep;

pub use alexander::{alexander_polynomial, twisted_alexander, TwistedAlexander};
pub use fox::{fox_derivative, fox_jacobian_row, twisted_alexander_matrix, AlexanderMatrix};
pub use rep::{rep_from_epimorphism, IntMat, TwistedRep};
