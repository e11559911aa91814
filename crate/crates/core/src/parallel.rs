//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature and more than one job the work runs on a
//! dedicated rayon pool; otherwise it runs sequentially. Either way results
//! come back in input order, so downstream reports do not depend on the
//! worker count.

/// Worker-count setting. `jobs == 0` lets rayon pick the thread count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exec {
    pub jobs: usize,
}

impl Exec {
    pub fn sequential() -> Self {
        Exec { jobs: 1 }
    }

    pub fn with_jobs(jobs: usize) -> Self {
        Exec { jobs }
    }

    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.jobs != 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.jobs)
                .build()
                .expect("thread pool");
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }
}
