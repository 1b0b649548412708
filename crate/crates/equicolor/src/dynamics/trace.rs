use super::MoveKind;
use crate::coloring::Color;
use crate::distribution::{ColorDistribution, ConvergenceLedger};
use crate::rational::{self, Rational};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    Move { found_by: MoveKind },
    Batch { found_by: MoveKind, candidates: usize, applied: usize },
    /// The search stalled and the driver restarted from a fresh greedy
    /// coloring; the step assigns every vertex.
    Restart { attempt: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    #[serde(flatten)]
    pub kind: StepKind,
    /// Vertices recolored in this step, with their new colors.
    pub assignments: Vec<(usize, Color)>,
    pub witness: Option<Color>,
    pub counts: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub disc: Rational,
    #[serde(with = "rational::serde_str")]
    pub l1: Rational,
    /// Ledger total since the latest (re)start.
    #[serde(with = "rational::serde_str")]
    pub cumulative: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynamicsTrace {
    /// Start coloring; replaying the step assignments reproduces every later coloring.
    pub start: Vec<Color>,
    pub initial: ColorDistribution,
    pub steps: Vec<TraceStep>,
    /// Ledger of the final attempt.
    pub ledger: ConvergenceLedger,
    pub restarts: usize,
}

impl DynamicsTrace {
    /// One JSON object per step, preceded by a header line with the initial counts.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({ "initial": self.initial.counts(), "restarts": self.restarts });
        out.push_str(&header.to_string());
        out.push('\n');
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("trace steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,disc,l1,cumulative\n");
        for s in &self.steps {
            writeln!(
                out,
                "{},{},{},{}",
                s.step,
                rational::to_string(&s.disc),
                rational::to_string(&s.l1),
                rational::to_string(&s.cumulative)
            )
            .unwrap();
        }
        out
    }

    /// Count of applied move and batch steps.
    pub fn move_steps(&self) -> usize {
        self.steps.iter().filter(|s| !matches!(s.kind, StepKind::Restart { .. })).count()
    }
}
