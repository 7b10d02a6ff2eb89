//! JSON report shapes, one per subcommand.

use std::collections::BTreeMap;

use nckit_core::bisim::BisimReport;
use nckit_core::kripke::ModelFile;
use nckit_core::semantics::Countermodel;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckReport {
    pub formula: String,
    pub world: String,
    pub holds: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelValidityReport {
    pub formula: String,
    pub valid: bool,
    pub failing_worlds: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FrameValidityReport {
    pub formula: String,
    pub premises: Vec<String>,
    pub valid: bool,
    pub countermodel: Option<Countermodel>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TranslateReport {
    pub input: String,
    pub target: String,
    pub output: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BisimilarityReport {
    pub kind: String,
    pub left: String,
    pub right: String,
    pub bisimilar: bool,
    /// Largest bisimulation over the disjoint union.
    pub largest: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationCheckReport {
    pub valid: bool,
    pub report: BisimReport,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ContractReport {
    pub model: ModelFile,
    pub block_of: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub language: String,
    pub left: String,
    pub right: String,
    pub equivalent: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PropertyStatus {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FramePropertiesReport {
    pub properties: BTreeMap<String, PropertyStatus>,
}
