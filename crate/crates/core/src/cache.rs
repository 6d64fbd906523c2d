use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Write-once memo table: each key is initialized exactly once, concurrent
/// readers of a key under construction block until it is ready.
pub struct OnceMap<K, V> {
    cells: Mutex<BTreeMap<K, Arc<OnceLock<V>>>>,
}

impl<K: Ord, V: Clone> OnceMap<K, V> {
    pub fn new() -> Self {
        OnceMap { cells: Mutex::new(BTreeMap::new()) }
    }

    pub fn get_or_init(&self, key: K, init: impl FnOnce() -> V) -> V {
        let cell = {
            let mut g = self.cells.lock().expect("cache lock poisoned");
            g.entry(key).or_default().clone()
        };
        cell.get_or_init(init).clone()
    }

    pub fn len(&self) -> usize {
        self.cells.lock().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Ord, V: Clone> Default for OnceMap<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K, V> std::fmt::Debug for OnceMap<K, V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("OnceMap { .. }")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn initializes_once_under_contention() {
        let map: OnceMap<u32, Arc<u64>> = OnceMap::new();
        let calls = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    let v = map.get_or_init(7, || {
                        calls.fetch_add(1, Ordering::SeqCst);
                        std::thread::sleep(std::time::Duration::from_millis(20));
                        Arc::new(49)
                    });
                    assert_eq!(*v, 49);
                });
            }
        });
        assert_eq!(calls.load(Ordering::SeqCst), 1);
    }
}
