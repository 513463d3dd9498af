//! Evaluation strategy helpers.
//!
//! Data-parallel kernels (boundary scans, quadrature, per-degree reports)
//! map an index range into a vector and reduce it afterwards. With the
//! `parallel` feature the map runs on rayon; without it the same closure
//! runs sequentially. Reductions always happen in a fixed order (pairwise
//! over the materialized vector), so results are bitwise independent of the
//! schedule.

use crate::quat::Quaternion;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

pub(crate) fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Pairwise (cascade) summation; deterministic and stable for long sums.
pub(crate) fn pairwise_sum_f64(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_f64(&values[..mid]) + pairwise_sum_f64(&values[mid..])
}

pub(crate) fn pairwise_sum_quat(values: &[Quaternion]) -> Quaternion {
    if values.len() <= 32 {
        return values.iter().fold(Quaternion::ZERO, |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum_quat(&values[..mid]) + pairwise_sum_quat(&values[mid..])
}
