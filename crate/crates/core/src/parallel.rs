//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature, [`Parallelism::Threads`] runs work on a rayon
//! pool of the requested size. Without it, or with one thread, work runs on
//! the calling thread. Results are always returned in input order.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parallelism {
    #[default]
    Sequential,
    Threads(usize),
}

impl Parallelism {
    /// `jobs` worker threads; 0 and 1 both mean sequential.
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Parallelism::Sequential
        } else {
            Parallelism::Threads(jobs)
        }
    }

    pub fn threads(&self) -> usize {
        match *self {
            Parallelism::Sequential => 1,
            Parallelism::Threads(n) => n.max(1),
        }
    }
}

pub fn par_map<T, R, F>(items: &[T], par: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.threads() > 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(par.threads())
            .build()
        {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = par;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = par_map(&xs, Parallelism::Sequential, |x| x * x);
        let par = par_map(&xs, Parallelism::Threads(4), |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[999], 999 * 999);
    }

    #[test]
    fn from_jobs() {
        assert_eq!(Parallelism::from_jobs(0), Parallelism::Sequential);
        assert_eq!(Parallelism::from_jobs(1), Parallelism::Sequential);
        assert_eq!(Parallelism::from_jobs(8), Parallelism::Threads(8));
    }
}
