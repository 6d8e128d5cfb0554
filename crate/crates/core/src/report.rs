//! JSON report structures emitted by the command-line front end. Field
//! order and collection ordering are fixed so identical runs render
//! byte-identical reports.

use crate::builder::BuildTrace;
use crate::randgrp::ExperimentReport;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub ok: bool,
    pub vertices: usize,
    pub edges: usize,
    pub wall_classes: usize,
    pub dimension: usize,
    pub distance_matches_separators: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub word: String,
    pub wall: (String, String),
    pub forward: Vec<String>,
    pub backward: Vec<String>,
    pub visibly_parallel: Vec<String>,
    pub crossing_parallel: Vec<String>,
    pub disjoint_parallel: Vec<String>,
    pub fixed_wall_flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub progressing_ok: bool,
    pub words_move_ok: bool,
    pub max_len: usize,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DTableReport {
    pub eps0: String,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    pub monotone: bool,
    pub eps_threshold: Vec<String>,
    pub gamma: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub k: usize,
    pub density: String,
    pub length: usize,
    pub model: String,
    pub seed: u64,
    pub count: usize,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RipsReport {
    pub generators: usize,
    pub relators: usize,
    pub base_relators: usize,
    pub conjugation_relators: usize,
    pub smallcanc: Option<crate::randgrp::SmallCancReport>,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomatonSummary {
    pub vertices: usize,
    pub edges: usize,
    pub checkpoints: usize,
    pub alphabet: usize,
    pub active_alphabet: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub window: String,
    pub basepoint: String,
    pub subdivided: bool,
    pub fix_set: Vec<String>,
    pub branch: String,
    pub automaton: AutomatonSummary,
    pub shape: String,
    pub shape_vertex_bound_ok: bool,
    pub growth_lambda: String,
    pub growth_horizon: usize,
    pub progressing_ok: bool,
    pub words_move_ok: bool,
    pub counts: Vec<(usize, String)>,
    pub trace: Option<BuildTrace>,
    pub experiment: Option<ExperimentReport>,
    pub checks_passed: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization")
}
