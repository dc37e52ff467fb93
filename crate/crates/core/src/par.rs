//! Data-parallel helpers. Matrix columns, relation checks and random-vector
//! batches are independent items; they are mapped in parallel when the
//! `parallel` feature is on and the process-wide mode says so.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Sets the process-wide execution mode. Without the `parallel` feature
/// every mode runs sequentially.
pub fn set_execution(mode: Execution) {
    MODE.store(
        match mode {
            Execution::Sequential => 0,
            Execution::Parallel => 1,
        },
        Ordering::Relaxed,
    );
}

pub fn execution() -> Execution {
    match MODE.load(Ordering::Relaxed) {
        0 => Execution::Sequential,
        _ => Execution::Parallel,
    }
}

/// `(0..len).map(f)` collected in index order.
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel && len > 1 {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// `items.iter().map(f)` collected in order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    map_indexed(items.len(), |k| f(&items[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let expect: Vec<usize> = (0..100).map(|k| k * k).collect();
        assert_eq!(map_indexed(100, |k| k * k), expect);
        let items: Vec<usize> = (0..100).collect();
        assert_eq!(map_slice(&items, |k| k * k), expect);
    }
}
