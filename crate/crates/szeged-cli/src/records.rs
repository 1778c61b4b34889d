//! JSON output schema. Costs are serialized as decimal strings so values of
//! any magnitude round-trip exactly.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ResultRecord {
    pub schema_version: u32,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub cost: String,
    pub child_count: usize,
    pub children_sizes: Vec<usize>,
    pub shape: String,
    pub ties: Vec<TieRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct TieRecord {
    pub child_count: usize,
    pub children_sizes: Vec<usize>,
    pub shape: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ThresholdRowRecord {
    pub size: usize,
    pub threshold: usize,
    pub child_count: usize,
    pub children: Vec<usize>,
    pub tie: bool,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct TreeRowRecord {
    pub n: usize,
    pub child_count: usize,
    pub children: Vec<usize>,
    pub cost: String,
    pub tie: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureRecord {
    pub id: String,
    pub range: String,
    pub holds: bool,
    pub witnesses: Vec<WitnessRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct WitnessRecord {
    pub n: usize,
    pub path: Vec<u32>,
    pub detail: String,
}
