//! Crate-wide error wrapping every module error, with a stable kind name.

use crate::coloring::ColoringError;
use crate::distribution::DistributionError;
use crate::dynamics::DynamicsError;
use crate::forest::ForestError;
use crate::generate::GenerateError;
use crate::graph::GraphError;
use crate::io::IoError;
use crate::list_domination::ListDominationError;
use crate::oracle::OracleError;
use crate::pipeline::PipelineError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "module", content = "detail", rename_all = "snake_case")]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    ListDomination(#[from] ListDominationError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

impl Error {
    /// Variant name of the innermost error, e.g. `"PreconditionViolated"`.
    pub fn kind(&self) -> String {
        let value = serde_json::to_value(self).expect("error enums serialize");
        value["detail"]["error"].as_str().unwrap_or("Unknown").to_string()
    }

    /// `{"error": kind, "module": ..., "message": ..., "detail": {...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("error enums serialize");
        let obj = value.as_object_mut().expect("tagged enum");
        obj.insert("error".into(), self.kind().into());
        obj.insert("message".into(), self.to_string().into());
        value
    }
}
