//! Exact bicluster editing and cell formation.
//!
//! The crate turns a bipartite graph into a disjoint union of bicliques with
//! the fewest edge edits (optionally with per-vertex cluster size minima), and
//! maximizes grouping efficacy for part-machine matrices. The numerical core
//! (LP engine, separation, branch-and-cut) is generic over [`Scalar`]; the
//! aliases below fix it to `f64` or `f32`.

pub mod bench;
pub mod bnc;
pub mod error;
pub mod graph;
pub mod io;
pub mod lp;
pub mod mcfp;
pub mod oracle;
pub mod preprocess;
pub mod scalar;
pub mod separation;

pub use error::{Error, Result};
pub use graph::{Biclusterization, BipartiteInstance, Cell, EditSolution, Efficacy};
pub use scalar::Scalar;

pub type LinearProgram64 = lp::LinearProgram<f64>;
pub type LinearProgram32 = lp::LinearProgram<f32>;
pub type LpSolution64 = lp::LpSolution<f64>;
pub type LpSolution32 = lp::LpSolution<f32>;
pub type SimplexSolver64 = lp::SimplexSolver<f64>;
pub type FractionalPoint64 = separation::FractionalPoint<f64>;
pub type FractionalPoint32 = separation::FractionalPoint<f32>;
pub type ModelSpec64 = bnc::ModelSpec<f64>;
pub type ModelSpec32 = bnc::ModelSpec<f32>;
pub type BncConfig64 = bnc::BncConfig<f64>;
pub type BncConfig32 = bnc::BncConfig<f32>;
pub type MilpResult64 = bnc::MilpResult<f64>;
pub type MilpResult32 = bnc::MilpResult<f32>;
