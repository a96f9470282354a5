//! Library half of the `fvs-lab` binary, so the integration tests can drive
//! the commands without spawning a process.

pub mod battery;
pub mod commands;
pub mod report;
