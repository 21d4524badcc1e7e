//! Pluggable map over independent work items.
//!
//! Pipelines hand every per-graph or per-restart job to an [`Executor`];
//! results always come back in input order, so the outcome does not depend
//! on how the work was scheduled.

use alloc::vec::Vec;

pub trait Executor: Sync {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}
