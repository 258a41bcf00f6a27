//! The path-pair injection behind log-concavity of exit laws.

mod instance;
mod loop_erase;
mod phi;
mod svg;
mod verify;

pub use instance::{InjectionInstance, InstanceSpec, PathPair};
pub use loop_erase::{fomin_swap, key_intersection, loop_erase, loop_erase_indices, swap_at};
pub use phi::{lambda, lower_hat, phi_forward, phi_inverse, upper_hat, ConstructionTrace};
pub use svg::render_trace_svg;
pub use verify::{
    enumerate_pairs, theorem_count_check, verify_injection, verify_injection_with, CountRow, Duplicate, Failure,
    InjectionReport,
};
