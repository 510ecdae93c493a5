//! Node-level data parallelism with a sequential fallback.

use serde::{Deserialize, Serialize};

/// Chunks smaller than this are not worth a rayon task; a 1D step over a few
/// hundred nodes is cheaper than waking the pool.
pub const MIN_PAR_LEN: usize = 2048;

/// How per-node loops are executed.
///
/// `Parallel` silently degrades to sequential when the crate is built
/// without the `parallel` feature, so callers never need to care.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
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

/// `out[i] = f(i)` for every index.
pub fn fill<F>(exec: Execution, out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && out.len() >= 2 * MIN_PAR_LEN {
        use rayon::prelude::*;
        out.par_iter_mut()
            .with_min_len(MIN_PAR_LEN)
            .enumerate()
            .for_each(|(i, v)| *v = f(i));
        return;
    }
    let _ = exec;
    for (i, v) in out.iter_mut().enumerate() {
        *v = f(i);
    }
}

/// Maps `f` over `0..n` and collects the results in order.
pub fn map<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && n >= 2 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Largest value of `f(i)` over `0..n`, or `init` when larger.
pub fn max_over<F>(exec: Execution, n: usize, init: f64, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && n >= 2 * MIN_PAR_LEN {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .with_min_len(MIN_PAR_LEN)
            .map(&f)
            .reduce(|| init, f64::max);
    }
    let _ = exec;
    (0..n).map(f).fold(init, f64::max)
}

/// Installs a global rayon pool with `threads` workers. Returns false when a
/// pool already exists or the feature is off.
pub fn set_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        return rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok();
    }
    #[allow(unreachable_code)]
    {
        let _ = threads;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let n = 5000;
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        fill(Execution::Sequential, &mut a, |i| (i as f64).sin());
        fill(Execution::Parallel, &mut b, |i| (i as f64).sin());
        assert_eq!(a, b);
        let s = max_over(Execution::Sequential, n, f64::NEG_INFINITY, |i| a[i]);
        let p = max_over(Execution::Parallel, n, f64::NEG_INFINITY, |i| a[i]);
        assert_eq!(s, p);
        assert_eq!(map(Execution::Parallel, 10, |i| i * 2), map(Execution::Sequential, 10, |i| i * 2));
    }
}
