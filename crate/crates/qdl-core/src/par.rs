//! Data-parallel map/reduce helpers.
//!
//! Every hot loop in the crate (per-character zero scans, family averages
//! over d, quadrature node batches) goes through [`map_fn`] so that the
//! `parallel` feature can swap rayon in and out without touching call sites.
//! Reductions are always performed by a fixed-shape pairwise tree over the
//! collected results, so sums are bitwise identical for any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_complex::Complex64;

/// Configure the static worker pool. `0` keeps the hardware default.
///
/// May be called once per process; later calls are ignored (rayon's global
/// pool cannot be rebuilt).
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Number of workers the mapped loops will use.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Map `f` over `0..n`, preserving index order in the output.
pub fn map_fn<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_fn_seq(n, f)
    }
}

/// Sequential twin of [`map_fn`]; kept unconditionally for benches.
pub fn map_fn_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Map over a slice, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
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

/// Pairwise tree sum with a fixed shape: deterministic regardless of thread
/// count, and noticeably more accurate than a running sum on long inputs.
pub fn tree_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            tree_sum(&xs[..mid]) + tree_sum(&xs[mid..])
        }
    }
}

/// Complex pairwise tree sum, same shape as [`tree_sum`].
pub fn tree_sum_c(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            tree_sum_c(&xs[..mid]) + tree_sum_c(&xs[mid..])
        }
    }
}

/// Parallel weighted sum `Σ f(i)` over `0..n`, reduced by fixed-chunk tree.
///
/// Chunking is by index ranges of `chunk` elements, independent of the
/// worker count, so the float result is reproducible bit for bit.
pub fn sum_fn(n: usize, chunk: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
    let chunk = chunk.max(1);
    let n_chunks = n.div_ceil(chunk);
    let partials = map_fn(n_chunks, |c| {
        let lo = c * chunk;
        let hi = ((c + 1) * chunk).min(n);
        let vals: Vec<f64> = (lo..hi).map(&f).collect();
        tree_sum(&vals)
    });
    tree_sum(&partials)
}

/// Complex version of [`sum_fn`].
pub fn sum_fn_c(n: usize, chunk: usize, f: impl Fn(usize) -> Complex64 + Sync + Send) -> Complex64 {
    let chunk = chunk.max(1);
    let n_chunks = n.div_ceil(chunk);
    let partials = map_fn(n_chunks, |c| {
        let lo = c * chunk;
        let hi = ((c + 1) * chunk).min(n);
        let vals: Vec<Complex64> = (lo..hi).map(&f).collect();
        tree_sum_c(&vals)
    });
    tree_sum_c(&partials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_sum_matches_naive_on_smooth_data() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((tree_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn sum_fn_is_chunk_deterministic() {
        let f = |i: usize| ((i as f64) * 0.1).cos() / (i as f64 + 1.0);
        let a = sum_fn(10_000, 64, f);
        let b = sum_fn(10_000, 64, f);
        assert_eq!(a.to_bits(), b.to_bits());
        // Sequential twin agrees bitwise because the tree shape is fixed.
        let partials: Vec<f64> = (0..10_000_usize.div_ceil(64))
            .map(|c| {
                let lo = c * 64;
                let hi = ((c + 1) * 64).min(10_000);
                let vals: Vec<f64> = (lo..hi).map(f).collect();
                tree_sum(&vals)
            })
            .collect();
        assert_eq!(tree_sum(&partials).to_bits(), a.to_bits());
    }
}
