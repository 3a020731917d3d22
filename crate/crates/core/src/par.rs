//! Execution-mode switch for the exhaustive scans.
//!
//! With the `parallel` feature the scans fan out over rayon's pool; without it
//! (or with [`Mode::Sequential`]) the same closures run on the calling thread.
//! Both paths return identical results, including which witness is reported.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

impl Default for Mode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// First (lowest index) `Some` produced by `f` over `range`.
pub fn find_first<T, F>(mode: Mode, range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
        _ => range.into_iter().find_map(f),
    }
}

/// Whether `f` holds on every index.
pub fn all<F>(mode: Mode, range: Range<usize>, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_first(mode, range, |i| if f(i) { None } else { Some(()) }).is_none()
}

/// `f` applied to every index, in order.
pub fn map<T, F>(mode: Mode, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.into_iter().map(f).collect(),
    }
}
