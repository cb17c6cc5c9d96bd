//! Exact combinatorial oracles, nonlinear eigenproblem verifiers and spectral
//! checks for graph cut constants: Cheeger, dual Cheeger, maxcut and
//! anti-Cheeger.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod dinkelbach;
pub mod eigen;
pub mod error;
pub mod functionals;
pub mod graph;
pub mod lp;
pub mod nodal;
pub mod oracles;
pub mod rational;
pub mod spectrum;
pub mod suite;

pub use error::{Error, Result};
pub use graph::{Graph, SetPair, VertexSet};
pub use rational::Rational;
