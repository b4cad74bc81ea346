//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper returns exactly what its sequential form returns, so results
//! never depend on scheduling. Without the `parallel` feature,
//! [`Execution::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Smallest index in `0..len` satisfying `pred`.
pub fn find_first<F>(exec: Execution, len: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..len).find(|&i| pred(i))
}

/// `f` applied to every item, in input order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `f` applied to every index in `0..len`, in index order.
pub fn map_range<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Maximum of `f` over `0..len` (0 when empty).
pub fn max_range<F>(exec: Execution, len: usize, f: F) -> usize
where
    F: Fn(usize) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).max().unwrap_or(0);
    }
    let _ = exec;
    (0..len).map(f).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(find_first(exec, 1000, |i| i % 37 == 36 && i > 100), Some(110));
            assert_eq!(find_first(exec, 10, |_| false), None);
            assert_eq!(map_range(exec, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(map(exec, &[3, 1, 2], |x| x + 1), vec![4, 2, 3]);
            assert_eq!(max_range(exec, 100, |i| (i * 7) % 31), 30);
            assert_eq!(max_range(exec, 0, |i| i), 0);
        }
    }
}
