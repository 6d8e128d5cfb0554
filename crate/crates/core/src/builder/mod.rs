//! The constructive machinery assembling progressing automata from an
//! action: exact growth constants, easy tree extensions, crossing-route
//! trees, generator descent, and the end-to-end builder.

mod backwards;
mod crossing;
mod descent;
mod dtable;
mod easy;
mod orchestrate;

pub use backwards::check_backward_bound;
pub use crossing::{build_wall_tree, StageTrace, WallTreeTrace};
pub use descent::{max_pairwise_crossing, subset_descent, DescentCert};
pub use dtable::{
    alpha_raw, deep_entry, eps_threshold, growth_alpha, growth_schedule, reduced_rank_threshold,
    BranchingTable, GrowthSchedule,
};
pub use easy::{extend_tree_easy, start_tree, EasyCase};
pub use orchestrate::{build_automaton, build_automaton_over, BuildTrace, LevelTrace, TreeTrace};

use crate::action::ActionError;
use crate::automaton::{RealizeError, TreeViolation};
use crate::partition::PartitionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no extension case applies at leaf spelling {0}")]
    NoCaseApplies(String),
    #[error("construction stalled at stage {stage}: {detail}")]
    Stalled { stage: usize, detail: String },
    #[error("built automaton fails growth floor at vertex {0}")]
    GrowthFloor(u32),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Tree(#[from] TreeViolation),
    #[error(transparent)]
    Realize(#[from] RealizeError),
}
