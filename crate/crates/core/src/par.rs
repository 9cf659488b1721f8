//! Data-parallel helpers with a sequential fallback. Without the `parallel`
//! feature every mode runs sequentially.

/// How independent sub-computations are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Parallel,
    Sequential,
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

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Runs two closures, concurrently when allowed.
pub fn join<A, B, FA, FB>(exec: Execution, fa: FA, fb: FB) -> (A, B)
where
    A: Send,
    B: Send,
    FA: FnOnce() -> A + Send,
    FB: FnOnce() -> B + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        return rayon::join(fa, fb);
    }
    let _ = exec;
    (fa(), fb())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let a = map(Execution::Parallel, &xs, |x| x * x);
        let b = map(Execution::Sequential, &xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(join(Execution::Parallel, || 1, || 2), (1, 2));
    }
}
