//! Batch evaluation over slices: parallel via rayon when the `parallel`
//! feature is enabled (the default), plain sequential iteration otherwise.
//!
//! Every operation in this crate is a pure function over immutable values,
//! so batch evaluation over graph families, seeds or parameter grids is
//! embarrassingly parallel.  Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, parallel when the `parallel` feature is on.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential map, regardless of features.  Kept public so benchmarks can
/// compare the two code paths in one build.
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
