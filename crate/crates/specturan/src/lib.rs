//! File formats, report rendering, the threaded runner and the command line
//! for `specturan-core`.

pub mod cli;
pub mod config;
pub mod formats;
pub mod render;
pub mod runner;

pub use runner::Threaded;
