//! Order-preserving batch mapping with an optional data-parallel backend.
//!
//! Sweeps in this crate are embarrassingly parallel over primes or grid
//! points. With the `parallel` feature (default) the work is spread with
//! rayon; results come back in input order either way, so output is
//! bit-identical between the two backends.

/// Map `f` over `xs`, preserving order. `parallel` selects the rayon
/// backend when the `parallel` feature is compiled in; otherwise it is
/// ignored and the map runs sequentially.
pub fn map_ordered<T, U, F>(xs: &[T], f: F, parallel: bool) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return xs.par_iter().map(&f).collect();
    }
    let _ = parallel;
    xs.iter().map(f).collect()
}
