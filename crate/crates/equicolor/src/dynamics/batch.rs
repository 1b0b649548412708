//! Separated batches of moves sharing one `(D⁺, D⁻)` signature.

use super::{apply_move, deltas, is_acceptable, signature, DynamicsError, RecoloringMove};
use crate::coloring::{Color, PartialColoring};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub moves: Vec<RecoloringMove>,
    pub d_plus: Vec<Color>,
    pub d_minus: Vec<Color>,
    /// Largest domain size in the batch.
    pub m: usize,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

fn separated(g: &Graph, a: &RecoloringMove, b: &RecoloringMove) -> bool {
    a.assignments().iter().all(|&(v, _)| {
        b.color_of(v).is_none() && g.neighbors(v).iter().all(|&w| b.color_of(w).is_none())
    })
}

/// Greedily keeps, in input order, each candidate separated from all kept ones.
///
/// The signature is taken relative to `f`; every candidate must share it.
pub fn select_separated_batch(
    g: &Graph,
    f: &PartialColoring,
    candidates: &[RecoloringMove],
) -> Result<Batch, DynamicsError> {
    let Some(first) = candidates.first() else {
        return Ok(Batch { moves: Vec::new(), d_plus: Vec::new(), d_minus: Vec::new(), m: 0 });
    };
    let sig = signature(f, first);
    if let Some(index) = candidates.iter().position(|mv| signature(f, mv) != sig) {
        return Err(DynamicsError::SignatureMismatch { index });
    }
    let mut moves: Vec<RecoloringMove> = Vec::new();
    for mv in candidates {
        if moves.iter().all(|kept| separated(g, kept, mv)) {
            moves.push(mv.clone());
        }
    }
    let m = moves.iter().map(RecoloringMove::size).max().unwrap_or(0);
    Ok(Batch { moves, d_plus: sig.0, d_minus: sig.1, m })
}

/// Applies the longest prefix of `batch` whose class counts stay `⊴`-above `f`.
///
/// All moves share one signature, so after `t` moves each color changes by
/// `t·δ`. The prefix is valid while some gaining color is still no larger
/// than every losing color; that set of `t` is downward closed.
pub fn apply_monotone_prefix(
    g: &Graph,
    f: &PartialColoring,
    batch: &Batch,
) -> Result<(PartialColoring, usize), DynamicsError> {
    for (i, a) in batch.moves.iter().enumerate() {
        if !is_acceptable(g, f, a) {
            return Err(DynamicsError::UnacceptableMove { index: i });
        }
        for (j, b) in batch.moves.iter().enumerate().skip(i + 1) {
            if !separated(g, a, b) {
                return Err(DynamicsError::NotSeparated { first: i, second: j });
            }
        }
    }
    let Some(first) = batch.moves.first() else {
        return Ok((f.clone(), 0));
    };
    let d = deltas(f, first);
    let counts = f.counts();
    let valid = |t: i64| {
        d.iter().filter(|e| e.1 > 0).any(|&(a, da)| {
            d.iter()
                .filter(|e| e.1 < 0)
                .all(|&(b, db)| counts[a] as i64 + t * da <= counts[b] as i64 + t * db)
        })
    };
    let mut t = 0;
    while t < batch.len() && valid(t as i64 + 1) {
        t += 1;
    }
    let mut out = f.clone();
    for mv in &batch.moves[..t] {
        out = apply_move(&out, mv);
    }
    if t > 0 {
        let changed = (0..f.n()).filter(|&v| f.get(v) != out.get(v)).count() as i64;
        let l1: i64 = d.iter().map(|e| e.1.abs()).sum::<i64>() * t as i64;
        let m = batch.m as i64;
        assert!(changed <= m * l1, "batch moved more vertices than m·ℓ₁");
        for &(_, da) in d.iter().filter(|e| e.1 > 0) {
            assert!(l1 <= 2 * m * da * t as i64, "batch ℓ₁ exceeds 2m·gain");
        }
    }
    Ok((out, t))
}
