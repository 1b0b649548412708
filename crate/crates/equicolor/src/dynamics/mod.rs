//! Recoloring moves and the equitable `k`-coloring driver for `k ≥ Δ + 1`.
//!
//! A move recolors a few vertices of one component at once. The driver
//! repeatedly applies *admissible* moves: acceptable (the result is proper),
//! improving (some gaining class is strictly smaller than every losing
//! class) and `⊴`-monotone on the class counts. Every step is fed to a
//! [`ConvergenceLedger`](crate::distribution::ConvergenceLedger) with `A = 6`.

mod batch;
mod driver;
mod search;
mod trace;

pub use batch::{apply_monotone_prefix, select_separated_batch, Batch};
pub use driver::{equitable_k_coloring, equitable_k_coloring_observed, DriverConfig};
pub use search::{find_improving_move, find_move, FoundMove, MoveKind, MovePolicy};
pub use trace::{DynamicsTrace, StepKind, TraceStep};

use crate::coloring::{Color, ColoringError, PartialColoring};
use crate::distribution::DistributionError;
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

/// Ledger constant used throughout: moves of size at most three change at
/// most six class counts by one while the witness gains at least one.
pub const LEDGER_A: i128 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum DynamicsError {
    #[error("candidate {index} has a different (D+, D-) signature")]
    SignatureMismatch { index: usize },
    #[error("moves {first} and {second} are not separated")]
    NotSeparated { first: usize, second: usize },
    #[error("move {index} is not acceptable")]
    UnacceptableMove { index: usize },
    #[error("no admissible move found; class gap {gap} remains")]
    Stalled { gap: usize, counts: Vec<usize>, coloring: Vec<Color> },
    #[error("palette of size {k} is too small for maximum degree {max_degree}")]
    PaletteTooSmall { k: usize, max_degree: usize },
    #[error("start coloring is not a total proper coloring: {reason}")]
    InvalidStart { reason: String },
    #[error("moved {changed} vertices of {n}, above the stability bound {bound}")]
    StabilityViolation { changed: usize, n: usize, bound: String },
    #[error("iteration cap of {cap} steps exceeded")]
    IterationCap { cap: String },
    #[error(transparent)]
    #[serde(untagged)]
    Ledger(#[from] DistributionError),
    #[error(transparent)]
    #[serde(untagged)]
    Coloring(#[from] ColoringError),
}

/// A recoloring move: a nonempty partial map vertex → color, kept sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RecoloringMove {
    assignments: Vec<(usize, Color)>,
}

impl RecoloringMove {
    /// Panics on an empty map or a repeated vertex.
    pub fn new(mut assignments: Vec<(usize, Color)>) -> RecoloringMove {
        assert!(!assignments.is_empty(), "a move needs a nonempty domain");
        assignments.sort_unstable();
        assert!(assignments.windows(2).all(|w| w[0].0 != w[1].0), "repeated vertex in move");
        RecoloringMove { assignments }
    }

    pub fn single(v: usize, c: Color) -> RecoloringMove {
        RecoloringMove { assignments: vec![(v, c)] }
    }

    pub fn assignments(&self) -> &[(usize, Color)] {
        &self.assignments
    }

    pub fn size(&self) -> usize {
        self.assignments.len()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.assignments.iter().map(|&(v, _)| v).collect()
    }

    pub fn color_of(&self, v: usize) -> Option<Color> {
        self.assignments.iter().find(|&&(w, _)| w == v).map(|&(_, c)| c)
    }

    /// Whether the domain lies in one connected component of `g`.
    pub fn in_single_component(&self, g: &Graph) -> bool {
        let label = crate::graph::component_labels(g);
        let first = label[self.assignments[0].0];
        self.assignments.iter().all(|&(v, _)| label[v] == first)
    }
}

/// `f ⊕ φ`.
pub fn apply_move(f: &PartialColoring, mv: &RecoloringMove) -> PartialColoring {
    let mut out = f.clone();
    for &(v, c) in mv.assignments() {
        out.set(v, Some(c));
    }
    out
}

/// `δ_α(f, φ) = |φ⁻¹(α)| − |dom(φ) ∩ f⁻¹(α)|`.
pub fn delta_alpha(f: &PartialColoring, mv: &RecoloringMove, alpha: Color) -> i64 {
    let gained = mv.assignments().iter().filter(|&&(_, c)| c == alpha).count() as i64;
    let lost = mv.assignments().iter().filter(|&&(v, _)| f.get(v) == Some(alpha)).count() as i64;
    gained - lost
}

/// Nonzero `δ` values as `(color, δ)`, sorted by color.
pub fn deltas(f: &PartialColoring, mv: &RecoloringMove) -> Vec<(Color, i64)> {
    let mut d: Vec<(Color, i64)> = Vec::with_capacity(2 * mv.size());
    let mut bump = |c: Color, by: i64| match d.iter_mut().find(|e| e.0 == c) {
        Some(e) => e.1 += by,
        None => d.push((c, by)),
    };
    for &(v, c) in mv.assignments() {
        bump(c, 1);
        if let Some(old) = f.get(v) {
            bump(old, -1);
        }
    }
    d.retain(|e| e.1 != 0);
    d.sort_unstable();
    d
}

/// `(D⁺(f, φ), D⁻(f, φ))`.
pub fn signature(f: &PartialColoring, mv: &RecoloringMove) -> (Vec<Color>, Vec<Color>) {
    let d = deltas(f, mv);
    (
        d.iter().filter(|e| e.1 > 0).map(|e| e.0).collect(),
        d.iter().filter(|e| e.1 < 0).map(|e| e.0).collect(),
    )
}

/// Whether `f ⊕ φ` is proper, checked on `dom(φ)` and its neighbourhood.
pub fn is_acceptable(g: &Graph, f: &PartialColoring, mv: &RecoloringMove) -> bool {
    mv.assignments().iter().all(|&(v, c)| {
        g.neighbors(v).iter().all(|&w| {
            let cw = mv.color_of(w).or_else(|| f.get(w));
            cw != Some(c)
        })
    })
}

/// Witness color for "φ improves f": acceptable, and some gaining color is
/// strictly smaller than every losing color. Among witnesses the one with
/// the smallest class, then smallest id, is returned.
pub fn improves(g: &Graph, f: &PartialColoring, mv: &RecoloringMove) -> Option<Color> {
    if !is_acceptable(g, f, mv) {
        return None;
    }
    let d = deltas(f, mv);
    let minus: Vec<Color> = d.iter().filter(|e| e.1 < 0).map(|e| e.0).collect();
    d.iter()
        .filter(|e| e.1 > 0)
        .map(|e| e.0)
        .filter(|&a| minus.iter().all(|&b| f.count(a) < f.count(b)))
        .min_by_key(|&a| (f.count(a), a))
}

/// Witness color if `φ` is admissible for `f`: it improves `f`, the
/// post-move witness class is no larger than any post-move losing class
/// (so the count distribution moves up in `⊴`), and the step satisfies the
/// ledger hypothesis `‖Δω‖₁ ≤ 6 · gain(α)` for every gaining color.
pub fn admissible(g: &Graph, f: &PartialColoring, mv: &RecoloringMove) -> Option<Color> {
    if !is_acceptable(g, f, mv) {
        return None;
    }
    admissible_by_counts(f.counts(), &deltas(f, mv))
}

/// The count-only part of [`admissible`].
pub(crate) fn admissible_by_counts(counts: &[usize], d: &[(Color, i64)]) -> Option<Color> {
    let l1: i64 = d.iter().map(|e| e.1.abs()).sum();
    let min_gain = d.iter().filter(|e| e.1 > 0).map(|e| e.1).min()?;
    if l1 > LEDGER_A as i64 * min_gain {
        return None;
    }
    let c = |x: Color| counts[x] as i64;
    d.iter()
        .filter(|e| e.1 > 0)
        .filter(|&&(a, da)| {
            d.iter()
                .filter(|e| e.1 < 0)
                .all(|&(b, db)| c(a) < c(b) && c(a) + da <= c(b) + db)
        })
        .map(|e| e.0)
        .min_by_key(|&a| (counts[a], a))
}
