//! Library side of the `hecke` command: jobfile parsing and dispatch.

pub mod job;
pub mod run;
