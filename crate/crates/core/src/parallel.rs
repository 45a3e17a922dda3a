//! Deterministic fork-join mapping.
//!
//! Work is chunked by index and results are written back by index, so the
//! output is identical for every thread count. Used by the aperiodicity
//! witness search and the center solver's matrix assembly.

/// Map `f` over `items` on up to `threads` OS threads, preserving order.
pub fn map_indexed<T, R, F>(threads: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut out: Vec<Option<R>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    let fref = &f;
    std::thread::scope(|scope| {
        for (islice, oslice) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (item, slot) in islice.iter().zip(oslice.iter_mut()) {
                    *slot = Some(fref(item));
                }
            });
        }
    });
    out.into_iter()
        .map(|o| o.expect("every slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_every_thread_count() {
        let items: Vec<u64> = (0..97).collect();
        let expect: Vec<u64> = items.iter().map(|x| x * x).collect();
        for threads in [1, 2, 3, 8, 64] {
            assert_eq!(map_indexed(threads, &items, |x| x * x), expect);
        }
    }
}
