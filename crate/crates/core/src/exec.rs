//! Execution mode for the exhaustive checks.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over rayon; without it, both modes run sequentially. Results are
//! identical either way: every helper here preserves input order.

/// How exhaustive loops are driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// First `Some` in input order, so parallel and sequential runs report
    /// the same witness.
    pub fn find_first<T, U, F>(self, items: &[T], f: F) -> Option<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }
}
