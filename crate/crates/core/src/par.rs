//! Data-parallel helpers. With the `parallel` feature the `Parallel`
//! strategy runs on the rayon pool; without it every strategy runs
//! sequentially. Results always come back in input order.

use std::ops::Range;

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

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Splits `range` into blocks of `block` and concatenates `f` over them in
/// order.
pub fn flat_map_blocks<R, F>(exec: Exec, range: Range<u64>, block: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> Vec<R> + Sync + Send,
{
    let block = block.max(1);
    let starts: Vec<u64> = (range.start..range.end).step_by(block as usize).collect();
    let blocks = map(exec, &starts, |&s| f(s..(s + block).min(range.end)));
    blocks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = map(Exec::Sequential, &xs, |x| x * 3);
        let b = map(Exec::Parallel, &xs, |x| x * 3);
        assert_eq!(a, b);
        let f = |r: Range<u64>| r.filter(|v| v % 7 == 0).collect::<Vec<_>>();
        let a = flat_map_blocks(Exec::Sequential, 3..1003, 64, f);
        let b = flat_map_blocks(Exec::Parallel, 3..1003, 64, f);
        assert_eq!(a, b);
        assert_eq!(a, (3..1003).filter(|v| v % 7 == 0).collect::<Vec<_>>());
    }
}
