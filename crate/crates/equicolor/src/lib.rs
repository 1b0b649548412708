//! Equitable and dominating colorings of finite graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple undirected graphs, components, blocks, Gallai trees.
//! * [`coloring`]: partial colorings, list assignments, greedy maximal colorings.
//! * [`distribution`]: exact color distributions, the `⊴` order and the convergence ledger.
//! * [`dynamics`]: recoloring moves and the equitable `k`-coloring driver for `k ≥ Δ + 1`.
//! * [`list_domination`]: total list colorings dominating a partial coloring.
//! * [`forest`]: one-ended subforests and dominating `Δ`-colorings.
//! * [`pipeline`]: the sparse-graph equitable `Δ`-coloring pipeline.
//! * [`oracle`]: brute-force ground truth for tiny instances.
//! * [`io`] and [`generate`]: file formats and seeded instance generators.
//!
//! All measure-like quantities are exact rationals over the vertex count.

pub mod coloring;
pub mod debug;
pub mod distribution;
pub mod dynamics;
pub mod error;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod io;
pub mod list_domination;
pub mod oracle;
pub mod pipeline;
pub mod rational;

pub use coloring::{Color, ListAssignment, PartialColoring};
pub use distribution::ColorDistribution;
pub use error::Error;
pub use graph::Graph;
pub use rational::Rational;
