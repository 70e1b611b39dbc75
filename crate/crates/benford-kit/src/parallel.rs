//! Deterministic fork-join helper.
//!
//! Per-digit and per-rate evaluations are independent, so they can run on a
//! thread pool; results are merged back in input order, keeping every
//! computation bit-reproducible. The `BENFORD_KIT_THREADS` environment
//! variable caps the number of worker threads.

/// Worker-thread cap: `BENFORD_KIT_THREADS` when set to a positive number,
/// otherwise the available parallelism.
pub(crate) fn max_threads() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("BENFORD_KIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => available.min(n),
        _ => available,
    }
}

/// Maps `f` over `items`, possibly in parallel, returning results in input
/// order regardless of scheduling.
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = max_threads().min(items.len().max(1));
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let mut out: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        for (input, output) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(|| {
                for (item, slot) in input.iter().zip(output.iter_mut()) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    out.into_iter()
        .map(|slot| slot.expect("worker filled slot"))
        .collect()
}
