//! Aasen's `P A P^T = L T L^T` factorization for symmetric indefinite
//! matrices, together with tools for studying its element growth:
//!
//! * [`factor`] computes the factorization and solves linear systems with it.
//! * [`growth`] measures the growth factor and checks the entrywise bounds
//!   on `T` that give the `2^(n-1)` growth bound.
//! * [`lpcert`] builds and solves the linear program showing the bound is
//!   not attained for `n >= 6`.
//! * [`extremal`] generates the closed-form extremal matrices for
//!   `n = 4, 5, 6`.
//! * [`search`] runs a derivative-free search for large-growth matrices.
//! * [`io`], [`report`] and [`cli`] back the `aasen` command-line tool.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod extremal;
pub mod factor;
pub mod growth;
pub mod io;
pub mod lpcert;
pub mod matrix;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use extremal::{extremal_example, verify_example, ExampleReport, ExtremalExample};
pub use factor::{factorize, solve, tridiag_solve, AasenFactors, TieRule};
pub use growth::{
    bound_table, growth_factor, lemma_certificate, reference_growth_targets, BoundTable,
    GrowthCertificate,
};
pub use lpcert::{build_program, min_delta, solve_lp, tnn_upper_bound, DeltaProgram, LpSolution};
pub use matrix::{
    assemble, residual, Permutation, SymmetricMatrix, SymmetricTridiagonal, UnitLowerTriangular,
};
pub use search::{evaluate_candidate, maximize_growth, SearchConfig, SearchOutcome};
