//! Exact color distributions, discrepancy, rearrangement, the `⊴` order
//! and the convergence ledger bounding total `ℓ₁` movement.

use crate::debug;
use crate::rational::{self, int, rat, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum DistributionError {
    #[error("palettes differ: {left} vs {right} colors")]
    PaletteMismatch { left: usize, right: usize },
    #[error("first distribution is not strictly below the second")]
    NotComparable,
    #[error("step {step} is not ⊴-monotone")]
    MonotonicityViolation { step: usize },
    #[error("step {step}: l1 movement {l1} exceeds A times gain {gain} of color {color}")]
    HypothesisViolation { step: usize, color: usize, l1: String, gain: String },
    #[error("step {step}: cumulative movement {cumulative} exceeds bound {bound}")]
    BoundViolation { step: usize, cumulative: String, bound: String },
}

/// Integer counts over a common positive total; `ω(α) = counts[α] / total`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColorDistribution {
    counts: Vec<u64>,
    total: u64,
}

impl ColorDistribution {
    /// Distribution whose total is the sum of `counts` (which must be positive).
    pub fn from_counts(counts: &[usize]) -> ColorDistribution {
        let counts: Vec<u64> = counts.iter().map(|&c| c as u64).collect();
        let total = counts.iter().sum();
        assert!(total > 0, "a distribution needs positive total mass");
        ColorDistribution { counts, total }
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn value(&self, c: usize) -> Rational {
        rat(self.counts[c] as i128, self.total as i128)
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.k()).map(|c| self.value(c)).collect()
    }
}

fn same_palette(a: &ColorDistribution, b: &ColorDistribution) -> Result<(), DistributionError> {
    if a.k() != b.k() {
        return Err(DistributionError::PaletteMismatch { left: a.k(), right: b.k() });
    }
    Ok(())
}

/// `max_α |ω(α) − 1/k|`.
pub fn discrepancy(d: &ColorDistribution) -> Rational {
    let target = rat(1, d.k() as i128);
    (0..d.k()).map(|c| (d.value(c) - target).abs()).max().unwrap_or_else(Rational::zero)
}

/// `Σ_α |d1(α) − d2(α)|`.
pub fn l1_distance(d1: &ColorDistribution, d2: &ColorDistribution) -> Result<Rational, DistributionError> {
    same_palette(d1, d2)?;
    Ok((0..d1.k()).map(|c| (d1.value(c) - d2.value(c)).abs()).sum())
}

/// `ℓ₁` distance between two equal-length value sequences.
pub fn l1_values(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Values sorted nondecreasingly (`ω*`).
pub fn rearranged(d: &ColorDistribution) -> Vec<Rational> {
    let mut v = d.values();
    v.sort();
    v
}

/// Colors gaining and losing mass from `ω` to `η`.
pub fn d_plus_minus(w: &ColorDistribution, e: &ColorDistribution) -> (Vec<usize>, Vec<usize>) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for c in 0..w.k() {
        match e.value(c).cmp(&w.value(c)) {
            std::cmp::Ordering::Greater => plus.push(c),
            std::cmp::Ordering::Less => minus.push(c),
            std::cmp::Ordering::Equal => {}
        }
    }
    (plus, minus)
}

/// Colors `α ∈ D⁺(ω, η)` with `η(α) ≤ η(β)` for all `β ∈ D⁻(ω, η)`.
pub fn equitability_witnesses(w: &ColorDistribution, e: &ColorDistribution) -> Vec<usize> {
    let (plus, minus) = d_plus_minus(w, e);
    plus.into_iter()
        .filter(|&a| minus.iter().all(|&b| e.value(a) <= e.value(b)))
        .collect()
}

/// `ω ◁ η` when `strict`, otherwise `ω ⊴ η`.
pub fn is_more_equitable(w: &ColorDistribution, e: &ColorDistribution, strict: bool) -> Result<bool, DistributionError> {
    same_palette(w, e)?;
    let equal = (0..w.k()).all(|c| w.value(c) == e.value(c));
    if equal {
        return Ok(!strict);
    }
    Ok(!equitability_witnesses(w, e).is_empty())
}

/// For `ω ◁ η`, an index `ℓ` (1-based) and color `α ∈ D⁺` such that the
/// rearranged values satisfy `ω*(i) ≤ η*(i)` for `i ≤ ℓ` and the prefix
/// gain up to `ℓ` is at least `η(α) − ω(α)`.
///
/// `α` is the smallest-id `◁` witness and `ℓ` the least index with
/// `η*(ℓ) = η(α)`.
pub fn initial_sums_witness(w: &ColorDistribution, e: &ColorDistribution) -> Result<(usize, usize), DistributionError> {
    same_palette(w, e)?;
    let alpha = *equitability_witnesses(w, e).first().ok_or(DistributionError::NotComparable)?;
    let es = rearranged(e);
    let target = e.value(alpha);
    let ell = es.iter().position(|v| *v == target).expect("η(α) is one of the values") + 1;
    if debug::enabled() {
        let ws = rearranged(w);
        assert!((0..ell).all(|i| ws[i] <= es[i]), "prefix domination fails at ℓ = {ell}");
        let gap: Rational = (0..ell).map(|i| es[i] - ws[i]).sum();
        assert!(gap >= e.value(alpha) - w.value(alpha), "prefix gap too small");
    }
    Ok((ell, alpha))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerStep {
    #[serde(with = "rational::serde_str")]
    pub l1: Rational,
    pub witness: Option<usize>,
    #[serde(with = "rational::serde_str")]
    pub gain: Rational,
}

/// Running check of the hypothesis and conclusion of the convergence bound
/// `Σ ‖ω_{n+1} − ω_n‖₁ ≤ (1+A)^{k+1}/A · disc(ω₀)`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceLedger {
    #[serde(with = "rational::serde_str")]
    a: Rational,
    k: usize,
    #[serde(with = "rational::serde_str")]
    disc0: Rational,
    #[serde(with = "rational::serde_str")]
    cumulative: Rational,
    /// `None` when the bound does not fit in `i128`; the check is then vacuous.
    #[serde(skip)]
    bound: Option<Rational>,
    steps: Vec<LedgerStep>,
    /// Per-`ℓ` sums of `S_{n+1}(ℓ) − S_n(ℓ)` over steps whose index is `ℓ`;
    /// only maintained when debug checks are on.
    #[serde(skip)]
    prefix_gains: Option<Vec<Rational>>,
}

impl ConvergenceLedger {
    pub fn new(a: Rational, initial: &ColorDistribution) -> ConvergenceLedger {
        assert!(a >= int(1), "A must be at least 1");
        let k = initial.k();
        let disc0 = discrepancy(initial);
        let bound = rational::checked_pow(int(1) + a, k as u32 + 1)
            .and_then(|p| rational::checked_mul(&(p / a), &disc0));
        ConvergenceLedger {
            a,
            k,
            disc0,
            cumulative: Rational::zero(),
            bound,
            steps: Vec::new(),
            prefix_gains: debug::enabled().then(|| vec![Rational::zero(); k + 1]),
        }
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn disc0(&self) -> Rational {
        self.disc0
    }

    pub fn cumulative(&self) -> Rational {
        self.cumulative
    }

    /// `(1+A)^{k+1}/A · disc(ω₀)`.
    pub fn bound(&self) -> Option<Rational> {
        self.bound
    }

    pub fn steps(&self) -> &[LedgerStep] {
        &self.steps
    }

    /// Observed `cumulative / disc(ω₀)`; `None` when `disc(ω₀) = 0`.
    pub fn observed_ratio(&self) -> Option<Rational> {
        (!self.disc0.is_zero()).then(|| self.cumulative / self.disc0)
    }

    /// Records the step `ω_n → ω_{n+1}` with the caller's witness color.
    pub fn record(
        &mut self,
        prev: &ColorDistribution,
        next: &ColorDistribution,
        witness: Option<usize>,
    ) -> Result<(), DistributionError> {
        same_palette(prev, next)?;
        let step = self.steps.len();
        let l1 = l1_distance(prev, next)?;
        if l1.is_zero() {
            self.steps.push(LedgerStep { l1, witness: None, gain: Rational::zero() });
            return Ok(());
        }
        if !is_more_equitable(prev, next, false)? {
            return Err(DistributionError::MonotonicityViolation { step });
        }
        let (plus, _) = d_plus_minus(prev, next);
        let witness = witness.filter(|c| plus.contains(c)).unwrap_or(plus[0]);
        for &c in &plus {
            let gain = next.value(c) - prev.value(c);
            if l1 > self.a * gain {
                return Err(DistributionError::HypothesisViolation {
                    step,
                    color: c,
                    l1: rational::to_string(&l1),
                    gain: rational::to_string(&gain),
                });
            }
        }
        if let Some(gains) = self.prefix_gains.as_mut() {
            let (ell, _) = initial_sums_witness(prev, next)?;
            let ps = rearranged(prev);
            let ns = rearranged(next);
            let diff: Rational = (0..ell).map(|i| ns[i] - ps[i]).sum();
            gains[ell] += diff;
            let one_plus_a = int(1) + self.a;
            let cap = rational::checked_pow(one_plus_a, ell as u32)
                .and_then(|p| rational::checked_mul(&((p - int(1)) / self.a), &self.disc0));
            if let Some(cap) = cap {
                assert!(gains[ell] <= cap, "prefix-sum bookkeeping exceeded at ℓ = {ell}");
            }
        }
        let gain = next.value(witness) - prev.value(witness);
        self.cumulative += l1;
        self.steps.push(LedgerStep { l1, witness: Some(witness), gain });
        if let Some(bound) = self.bound.filter(|b| self.cumulative > *b) {
            return Err(DistributionError::BoundViolation {
                step,
                cumulative: rational::to_string(&self.cumulative),
                bound: rational::to_string(&bound),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "A": rational::to_string(&self.a),
            "k": self.k,
            "disc0": rational::to_string(&self.disc0),
            "cumulative": rational::to_string(&self.cumulative),
            "bound": self.bound.map(|b| rational::to_string(&b)),
            "observed_ratio": self.observed_ratio().map(|r| rational::to_string(&r)),
            "steps": self.steps,
        })
    }
}
