//! Execution-mode switch for the data-parallel hot loops.
//!
//! With the `parallel` feature enabled (the default), heavy loops run on the
//! rayon global thread pool; results are bitwise identical to the sequential
//! path because every reduction is order-insensitive by construction
//! (independent per-chunk arithmetic plus a totally ordered max, or an
//! index-preserving collect followed by a sequential fold). Without the
//! feature, rayon is not linked and [`Execution::Parallel`] silently behaves
//! like [`Execution::Sequential`].

/// Which code path the heavy loops take. [`Execution::default`] picks
/// `Parallel` when the `parallel` feature is compiled in, `Sequential`
/// otherwise. The benchmarks compare both on identical inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Map `f` over `items`, preserving order, on the pool selected by `exec`.
pub(crate) fn map_collect<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.into_iter().map(f).collect(),
        Execution::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}
