use std::collections::hash_map::RandomState;
use std::collections::VecDeque;
use std::hash::BuildHasher;
use std::sync::Arc;

use mivs_core::Instance;

/// Bounded in-memory store of uploaded instances; the oldest entry is
/// evicted once `capacity` is exceeded.
#[derive(Debug)]
pub struct Registry {
    capacity: usize,
    next: u64,
    salt: RandomState,
    entries: VecDeque<(String, Arc<Instance>)>,
}

impl Registry {
    pub fn new(capacity: usize) -> Self {
        Registry { capacity: capacity.max(1), next: 0, salt: RandomState::new(), entries: VecDeque::new() }
    }

    /// Store an instance under a fresh opaque id.
    pub fn insert(&mut self, instance: Arc<Instance>) -> String {
        self.next += 1;
        let id = format!("{:016x}{:04x}", self.salt.hash_one(self.next), self.next & 0xffff);
        self.entries.push_back((id.clone(), instance));
        while self.entries.len() > self.capacity {
            self.entries.pop_front();
        }
        id
    }

    pub fn get(&self, id: &str) -> Option<Arc<Instance>> {
        self.entries.iter().find(|(k, _)| k == id).map(|(_, v)| v.clone())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mivs_core::io::{generate_instance, GeneratorParams};

    #[test]
    fn evicts_oldest_and_issues_distinct_ids() {
        let inst: Arc<Instance> = Arc::new(generate_instance(&GeneratorParams::new(2, 2, 1)).unwrap());
        let mut reg = Registry::new(2);
        let a = reg.insert(inst.clone());
        let b = reg.insert(inst.clone());
        assert_ne!(a, b);
        let c = reg.insert(inst);
        assert_eq!(reg.len(), 2);
        assert!(reg.get(&a).is_none());
        assert!(reg.get(&b).is_some() && reg.get(&c).is_some());
    }
}
