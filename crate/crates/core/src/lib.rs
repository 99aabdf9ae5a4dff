//! Exact arithmetic on the Vogel plane: universal dimension formulas,
//! non-uniqueness factors and point-line configurations.

pub mod configs;
pub mod error;
pub mod formula;
pub mod identity;
pub mod linalg;
pub mod poly;
pub mod qsearch;
pub mod rational;
pub mod vogelplane;

pub use error::{Error, Result};
pub use formula::{adjoint_formula, x2k_adn_formula, EvalResult, FactorProduct};
pub use rational::Rational;
pub use vogelplane::{Basis, Family, LinearForm, Perm3, PlaneObject, ProjPoint};
