//! Scenario files, JSON forms and the commands behind the `whittaker`
//! binary.

pub mod commands;
pub mod schema;

pub use commands::Output;
