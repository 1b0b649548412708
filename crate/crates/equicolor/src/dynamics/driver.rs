use super::batch::{apply_monotone_prefix, select_separated_batch};
use super::search::{find_move, pattern_candidates};
use super::{apply_move, signature, DynamicsError, DynamicsTrace, MovePolicy, StepKind, TraceStep, LEDGER_A};
use crate::coloring::{
    first_conflict, greedy_extend_full_ordered, identity_order, shuffled_order, PartialColoring,
};
use crate::distribution::{discrepancy, l1_distance, ColorDistribution, ConvergenceLedger};
use crate::graph::Graph;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DriverConfig {
    /// Largest move domain searched before restarting.
    pub m_max: usize,
    /// Leaf budget per exhaustive domain size.
    pub exhaustive_budget: u64,
    /// Fresh greedy starts tried after a stall.
    pub retries: usize,
    /// Apply separated batches of same-signature moves instead of single moves.
    pub batch: bool,
    pub seed: u64,
    /// Build the default start coloring from a shuffled vertex order.
    pub randomize_start: bool,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            m_max: 6,
            exhaustive_budget: 2_000_000,
            retries: 8,
            batch: false,
            seed: 0,
            randomize_start: false,
        }
    }
}

const BATCH_CANDIDATES: usize = 4096;

/// Equitable proper `k`-coloring of `g` for `k ≥ Δ + 1`.
///
/// Starts from `f0` (or a greedy coloring) and applies admissible moves
/// until class sizes differ by at most one.
pub fn equitable_k_coloring(
    g: &Graph,
    k: usize,
    f0: Option<&PartialColoring>,
    config: &DriverConfig,
) -> Result<(PartialColoring, DynamicsTrace), DynamicsError> {
    equitable_k_coloring_observed(g, k, f0, config, &mut |_| {})
}

/// [`equitable_k_coloring`] that reports each trace step as it happens.
pub fn equitable_k_coloring_observed(
    g: &Graph,
    k: usize,
    f0: Option<&PartialColoring>,
    config: &DriverConfig,
    observer: &mut dyn FnMut(&TraceStep),
) -> Result<(PartialColoring, DynamicsTrace), DynamicsError> {
    if k <= g.max_degree() {
        return Err(DynamicsError::PaletteTooSmall { k, max_degree: g.max_degree() });
    }
    let n = g.n();
    let mut f = match f0 {
        Some(f0) => validate_start(g, k, f0)?,
        None => {
            let order = if config.randomize_start { shuffled_order(n, config.seed) } else { identity_order(n) };
            greedy_extend_full_ordered(g, k, &PartialColoring::new(n, k), &order)?
        }
    };
    let policy = MovePolicy { m_max: config.m_max, exhaustive_budget: config.exhaustive_budget };
    let initial = ColorDistribution::from_counts(f.counts());
    let mut trace = DynamicsTrace {
        start: f.to_total().expect("start coloring is total"),
        initial: initial.clone(),
        steps: Vec::new(),
        ledger: ConvergenceLedger::new(int(LEDGER_A), &initial),
        restarts: 0,
    };
    let mut start = f.clone();
    let mut cap = iteration_cap(n, k, trace.ledger.disc0());
    let mut attempt_steps: u128 = 0;

    while f.gap() > 1 {
        let Some(found) = find_move(g, &f, &policy) else {
            if trace.restarts >= config.retries {
                return Err(DynamicsError::Stalled {
                    gap: f.gap(),
                    counts: f.counts().to_vec(),
                    coloring: f.to_total().expect("driver keeps colorings total"),
                });
            }
            trace.restarts += 1;
            let seed = config.seed ^ (trace.restarts as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            f = greedy_extend_full_ordered(g, k, &PartialColoring::new(n, k), &shuffled_order(n, seed))?;
            start = f.clone();
            let dist = ColorDistribution::from_counts(f.counts());
            trace.ledger = ConvergenceLedger::new(int(LEDGER_A), &dist);
            cap = iteration_cap(n, k, trace.ledger.disc0());
            attempt_steps = 0;
            let attempt = trace.restarts;
            let all = f.to_total().expect("greedy start is total").into_iter().enumerate().collect();
            push(&mut trace, observer, StepKind::Restart { attempt }, all, None, &f, int(0));
            continue;
        };

        let prev = ColorDistribution::from_counts(f.counts());
        let (next, kind, assignments) = if config.batch {
            let sig = signature(&f, &found.mv);
            let mut candidates = vec![found.mv.clone()];
            candidates.extend(
                pattern_candidates(g, &f, config.m_max.min(3), BATCH_CANDIDATES)
                    .into_iter()
                    .map(|c| c.mv)
                    .filter(|mv| *mv != found.mv && signature(&f, mv) == sig),
            );
            let batch = select_separated_batch(g, &f, &candidates)?;
            let (next, applied) = apply_monotone_prefix(g, &f, &batch)?;
            assert!(applied >= 1, "the first candidate is admissible on its own");
            let assignments = batch.moves[..applied].iter().flat_map(|mv| mv.assignments().to_vec()).collect();
            let kind = StepKind::Batch { found_by: found.kind, candidates: batch.len(), applied };
            (next, kind, assignments)
        } else {
            (apply_move(&f, &found.mv), StepKind::Move { found_by: found.kind }, found.mv.assignments().to_vec())
        };
        debug_assert!(first_conflict(g, &next).is_none());
        let after = ColorDistribution::from_counts(next.counts());
        trace.ledger.record(&prev, &after, Some(found.witness))?;
        let l1 = l1_distance(&prev, &after)?;
        f = next;
        push(&mut trace, observer, kind, assignments, Some(found.witness), &f, l1);
        attempt_steps += 1;
        if cap.is_some_and(|c| attempt_steps > c) {
            return Err(DynamicsError::IterationCap { cap: cap.unwrap().to_string() });
        }
    }

    check_stability(&start, &f, k, &trace.ledger)?;
    Ok((f, trace))
}

fn validate_start(g: &Graph, k: usize, f0: &PartialColoring) -> Result<PartialColoring, DynamicsError> {
    if f0.n() != g.n() {
        return Err(DynamicsError::InvalidStart { reason: format!("coloring has {} vertices, graph has {}", f0.n(), g.n()) });
    }
    if !f0.is_total() {
        return Err(DynamicsError::InvalidStart { reason: "coloring is partial".into() });
    }
    if let Some((u, v)) = first_conflict(g, f0) {
        return Err(DynamicsError::InvalidStart { reason: format!("edge ({u}, {v}) is monochromatic") });
    }
    f0.with_palette(k).map_err(|e| DynamicsError::InvalidStart { reason: e.to_string() })
}

/// `n · 7^{k+1} / 12 · disc₀` applied steps, or `None` past `i128`.
fn iteration_cap(n: usize, k: usize, disc0: Rational) -> Option<u128> {
    let a = int(LEDGER_A);
    let p = rational::checked_pow(int(1) + a, k as u32 + 1)?;
    let c = rational::checked_mul(&(p / (int(2) * a)), &disc0)?;
    let c = rational::checked_mul(&c, &int(n as i128))?;
    Some(c.to_integer().max(0) as u128)
}

/// `dist(f₀, f)/n ≤ 7^{k+1}/2 · disc(f₀)`.
fn check_stability(
    start: &PartialColoring,
    end: &PartialColoring,
    k: usize,
    ledger: &ConvergenceLedger,
) -> Result<(), DynamicsError> {
    let n = start.n();
    if n == 0 {
        return Ok(());
    }
    let changed = (0..n).filter(|&v| start.get(v) != end.get(v)).count();
    let Some(p) = rational::checked_pow(int(1 + LEDGER_A), k as u32 + 1) else {
        return Ok(());
    };
    let Some(bound) = rational::checked_mul(&(p / int(2)), &ledger.disc0()) else {
        return Ok(());
    };
    if int(changed as i128) / int(n as i128) > bound {
        return Err(DynamicsError::StabilityViolation { changed, n, bound: rational::to_string(&bound) });
    }
    Ok(())
}

fn push(
    trace: &mut DynamicsTrace,
    observer: &mut dyn FnMut(&TraceStep),
    kind: StepKind,
    assignments: Vec<(usize, usize)>,
    witness: Option<usize>,
    f: &PartialColoring,
    l1: Rational,
) {
    let dist = ColorDistribution::from_counts(f.counts());
    let step = TraceStep {
        step: trace.steps.len(),
        kind,
        assignments,
        witness,
        counts: f.counts().to_vec(),
        disc: discrepancy(&dist),
        l1,
        cumulative: trace.ledger.cumulative(),
    };
    observer(&step);
    trace.steps.push(step);
}
