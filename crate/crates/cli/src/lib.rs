//! Library side of the `schwarzian-lab` command-line tool.
//!
//! # Series text format
//!
//! ```text
//! # comments and blank lines are ignored
//! order 3
//! 1 1 0
//! 2 0.5 -0.25
//! ```
//!
//! The first record is `order N`; each following line is `n re im` for
//! `0 <= n <= N`. Missing indices are zero; repeated indices and any other
//! line are rejected. Floats are written in shortest round-trip
//! scientific notation, so export then import is bit-exact.

pub mod args;
pub mod commands;
pub mod svg;
pub mod table;

pub use args::ConfigError;
pub use commands::{
    cmd_bounds, cmd_norm, cmd_plot, cmd_sharpness, cmd_verify, CommandError, PlotKind,
    PlotOptions, PlotOutput, Quantity, RunConfig, VerifyOptions,
};
pub use table::{fmt_num, Cell, Table};
