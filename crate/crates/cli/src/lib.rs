//! Library half of the `zigzag-hh` binary, split out so tests can drive the
//! commands without spawning processes.

pub mod commands;
pub mod output;
pub mod spec;
