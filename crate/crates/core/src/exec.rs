//! Data-parallel helpers with a sequential fallback.
//!
//! Hot loops in the verifiers (pair enumeration over `X × X`, clique
//! growth, neighbour counting) go through [`Exec`]. With the `parallel`
//! feature enabled the default is [`Exec::Parallel`], backed by rayon;
//! without it every mode runs on the calling thread. Results never depend
//! on the mode: "first failure" searches use `find_map_first`, which
//! returns the lowest-index hit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
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
    /// Lowest `i < n` for which `f(i)` is `Some`, together with its value.
    pub fn find_map_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
            _ => (0..n).find_map(f),
        }
    }

    /// `(0..n).map(f).collect()`, order preserved.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        self.find_map_first(n, |i| if f(i) { None } else { Some(()) })
            .is_none()
    }
}
