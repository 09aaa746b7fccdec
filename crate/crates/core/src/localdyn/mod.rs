//! Dynamics in the completions of `Q(t)`.

mod green;
mod local;

pub use green::{
    escape_threshold, g_crit_v_general, g_crit_v_normal, green_function, max_of, GreenOptions, GreenResult,
    GreenStatus,
};
pub use local::{localize, Completion, LocalElement, LocalValuation};
