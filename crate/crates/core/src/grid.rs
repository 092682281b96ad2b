//! Data-parallel grid evaluation with a deterministic reduction order.
//!
//! Grid points are independent, so the map step may run on a thread pool.
//! Results are always collected in index order and reduced sequentially,
//! which keeps outputs bit-stable regardless of worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f` at every index `0..n`, in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_indexed_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential reference path; always available.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Rayon path. `collect` on an indexed parallel iterator preserves order.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Index and value of the minimum, ties resolved to the smallest index.
pub fn argmin(values: &[f64]) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_index_order() {
        let v = map_indexed(100, |i| i as f64 * 0.5);
        assert_eq!(v[7], 3.5);
        assert_eq!(v.len(), 100);
    }

    #[test]
    fn argmin_ties_go_to_smallest_index() {
        let (i, v) = argmin(&[3.0, 1.0, 1.0, 2.0]);
        assert_eq!(i, 1);
        assert_eq!(v, 1.0);
    }
}
