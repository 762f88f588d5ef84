//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off. Results never depend on the number of workers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f(0), f(1), …, f(len - 1)` collected in index order.
pub fn map_indices<T, F>(len: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// `f` applied to each item, collected in input order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
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

/// The result for the lowest index at which `f` returns `Some`.
pub fn find_map_first<T, F>(len: u32, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u32) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).find_map(f)
    }
}

/// Like [`find_map_first`] over a slice.
pub fn find_map_first_in<S, T, F>(items: &[S], f: F) -> Option<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}
