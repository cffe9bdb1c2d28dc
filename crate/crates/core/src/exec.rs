//! Execution strategy for the enumeration kernels.
//!
//! Every driver that scans a large index space goes through [`Exec`], so the
//! same code path runs sequentially or on the rayon pool. Results never depend
//! on the strategy: searches return the witness with the lowest index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `f(i)` for the smallest `i < n` where it is `Some`.
    pub fn find_first<T, F>(self, n: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
            _ => (0..n).find_map(f),
        }
    }

    /// `[f(0), .., f(n-1)]` in index order.
    pub fn map<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Like [`Exec::find_first`] over a slice of prepared cases.
    pub fn find_first_in<I, T, F>(self, items: &[I], f: F) -> Option<T>
    where
        I: Sync,
        T: Send,
        F: Fn(usize, &I) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items
                .par_iter()
                .enumerate()
                .find_map_first(|(i, item)| f(i, item)),
            _ => items.iter().enumerate().find_map(|(i, item)| f(i, item)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_on_first_witness() {
        let probe = |i: u64| (i % 7 == 3 && i > 10).then_some(i);
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.find_first(10_000, probe), Some(17));
            assert_eq!(exec.find_first(5, probe), None);
            assert_eq!(exec.map(4, |i| i * i), vec![0, 1, 4, 9]);
            let items = [5, 8, 13, 8];
            assert_eq!(
                exec.find_first_in(&items, |i, &x| (x == 8).then_some(i)),
                Some(1)
            );
        }
    }
}
