//! Exact construction and verification of the higher symmetries of the
//! bilaplacian `Δ²` on flat `R^n`.
//!
//! Everything is computed over the rationals: polynomials ([`exactpoly`]),
//! symmetric and pair-skew tensors ([`tensorcalc`]), differential operators in
//! Weyl-algebra normal form ([`weylop`]), conformal Killing tensor solvers
//! ([`cktsolve`]), the ambient `R^(n+2)` calculus ([`ambient`]) and the
//! `so(n+1,1)` layer with its operator identities ([`symalg`]).

pub mod ambient;
pub mod cktsolve;
pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod suite;
pub mod symalg;
pub mod tensorcalc;
pub mod weylop;

pub use error::{Error, Result};
pub use exactpoly::{Homogeneity, Monomial, Polynomial, Var, VarSpace};
pub use rational::{Exp, Rational};
pub use weylop::DiffOp;
