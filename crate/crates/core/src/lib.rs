//! Exact computations with newforms of unramified `U(2,1)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic`]: truncated arithmetic in `F` and `E = F[√ε]`, cyclotomic scalars;
//! * [`group`]: the unitary group, its subgroups and coset decompositions;
//! * [`induced`]: newforms in induced models and the level/Hecke operators;
//! * [`symbolic`]: rational functions in `X = q^{-2s}` over `Q(ν, λ, a, q)`;
//! * [`classify`]: conductor, L-factor and ε-factor tables;
//! * [`cli`]: configuration, verification suites and reports.

pub mod error;
pub mod group;
pub mod classify;
pub mod cli;
pub mod induced;
pub mod padic;
pub mod symbolic;

pub use error::{Error, Result};
