//! Command implementations and emission machinery behind the `hyperstab`
//! binary. Kept as a library so the integration suites can drive the same
//! code paths the binary uses.

pub mod commands;
pub mod emit;
pub mod manifest;

pub use commands::{
    cmd_form, cmd_index, cmd_oracle, cmd_spectrum, cmd_tension, cmd_verify, parse_energy,
    parse_m_range, parse_rat, parse_routes, RadiusArg,
};
pub use emit::{CmdOutput, Format, RunConfig, OUT_DIR_ENV};
pub use manifest::{known_ids, Finding};
