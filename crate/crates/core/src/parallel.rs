use std::ops::Range;

use crate::error::Result;

/// Splits `0..len` into at most `workers` contiguous chunks and evaluates
/// them on scoped threads. Results come back in chunk order, so any
/// associative merge reproduces the sequential answer exactly.
pub(crate) fn map_chunks<T, F>(len: u64, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> Result<T> + Sync,
{
    let workers = workers.max(1) as u64;
    if workers == 1 || len < 2 {
        return Ok(vec![f(0..len)?]);
    }
    let chunk = len.div_ceil(workers);
    let ranges: Vec<Range<u64>> = (0..workers)
        .map(|w| (w * chunk).min(len)..((w + 1) * chunk).min(len))
        .filter(|r| !r.is_empty())
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let f = &f;
                scope.spawn(move || f(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
