use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use specturan_core::Executor;

/// Executor backed by a dedicated rayon pool. Results keep input order.
pub struct Threaded {
    pool: ThreadPool,
}

impl Threaded {
    /// `threads == None` uses the available parallelism.
    pub fn new(threads: Option<usize>) -> Result<Threaded, rayon::ThreadPoolBuildError> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t.max(1));
        }
        Ok(Threaded { pool: builder.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Threaded {
    fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}
