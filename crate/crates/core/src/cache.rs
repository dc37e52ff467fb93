use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// A lazily created process-wide memo table.
pub(crate) type Memo<K, V> = OnceLock<OnceMap<K, V>>;

/// A memo table whose entries are each computed exactly once, even under
/// concurrent first access. Readers of an initialized entry never block on
/// other keys' initialization.
pub(crate) struct OnceMap<K, V> {
    slots: Mutex<HashMap<K, Arc<OnceLock<Arc<V>>>>>,
}

impl<K: Eq + Hash + Clone, V> OnceMap<K, V> {
    pub(crate) fn new() -> Self {
        OnceMap {
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_init<F: FnOnce() -> V>(&self, key: &K, init: F) -> Arc<V> {
        let slot = {
            let mut slots = self.slots.lock().expect("cache mutex poisoned");
            slots.entry(key.clone()).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(init())).clone()
    }
}

impl<K: Eq + Hash + Clone, V> Default for OnceMap<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
