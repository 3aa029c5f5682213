//! Execution mode for the data-parallel loops.
//!
//! Every parallel search returns the same answer as its sequential
//! counterpart: searches report the first hit in index order.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExecMode {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// First `Some(f(i))` in increasing `i`.
pub fn find_map_first<T, F>(mode: ExecMode, range: Range<u64>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
        _ => range.into_iter().find_map(f),
    }
}

/// `items.map(f)` preserving order.
pub fn map_ordered<I, T, F>(mode: ExecMode, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_first_hit() {
        let f = |i: u64| (i % 97 == 13 && i > 500).then_some(i);
        let a = find_map_first(ExecMode::Sequential, 0..100_000, f);
        let b = find_map_first(ExecMode::Parallel, 0..100_000, f);
        assert_eq!(a, Some(595));
        assert_eq!(a, b);
        let xs: Vec<u32> = (0..1000).collect();
        assert_eq!(
            map_ordered(ExecMode::Sequential, &xs, |x| x * 2),
            map_ordered(ExecMode::Parallel, &xs, |x| x * 2)
        );
    }
}
