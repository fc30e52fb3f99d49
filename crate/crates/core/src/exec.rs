//! Execution policy for the data-parallel enumeration loops.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it, or when [`Execution::Sequential`] is requested, the same fold
//! runs on the calling thread. Both paths merge partial results with the same
//! associative operation, so outputs are identical.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when this build can actually run in parallel.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Folds `range` into per-worker accumulators and merges them.
pub(crate) fn fold_range<T, I, F, M>(exec: Execution, range: Range<u64>, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, u64) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().fold(&init, &fold).reduce(&init, &merge);
    }
    let _ = &merge;
    let _ = exec;
    range.fold(init(), fold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_policies_agree() {
        let run = |exec| fold_range(exec, 0..10_000, || 0u64, |acc, i| acc + i * i, |a, b| a + b);
        assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    }
}
