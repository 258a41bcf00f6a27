//! Absorbed random walks: exact exit laws, strips, monotone crossings and the log-concavity check.

mod exit;
mod logconcave;
mod model;
mod monotone;
mod strip;

pub(crate) use exit::check_inputs;
pub use exit::{exact_exit_distribution, exit_distribution, value_iteration, ExitDistribution};
pub use logconcave::{log_concavity_check, log_concavity_check_map, LogConcavityReport, Violation};
pub use model::{ColumnSpec, ColumnWeights, ModelSpec, TransitionModel};
pub use monotone::{monotone_crossing_distribution, uniform_monotone, MonotoneCrossing};
pub use strip::{
    ladder_limit, truncated_strip_distribution, StripDistribution, StripModel, DEFAULT_MAX_HEIGHT,
    DEFAULT_START_HEIGHT,
};
