use crate::chess::Move;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact,
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: u64,
    pub depth: u8,
    pub score: i32,
    pub bound: Bound,
    pub best_move: Option<Move>,
    age: u8,
}

/// Fixed-capacity, single-slot-per-index table with depth-preferred
/// replacement. Entries from an older search generation are always
/// replaceable.
pub struct TranspositionTable {
    slots: Vec<Option<Entry>>,
    mask: usize,
    age: u8,
}

pub const DEFAULT_TT_BITS: u32 = 20;

impl TranspositionTable {
    /// Table with `1 << bits` entries.
    pub fn new(bits: u32) -> TranspositionTable {
        let size = 1usize << bits;
        TranspositionTable { slots: vec![None; size], mask: size - 1, age: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Number of occupied slots.
    pub fn len(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(Option::is_none)
    }

    pub fn clear(&mut self) {
        self.slots.iter_mut().for_each(|s| *s = None);
        self.age = 0;
    }

    /// Marks the start of a new search; earlier entries become replaceable.
    pub fn new_search(&mut self) {
        self.age = self.age.wrapping_add(1);
    }

    #[inline]
    pub fn probe(&self, key: u64) -> Option<&Entry> {
        self.slots[key as usize & self.mask].as_ref().filter(|e| e.key == key)
    }

    pub fn store(&mut self, key: u64, depth: u8, score: i32, bound: Bound, best_move: Option<Move>) {
        let age = self.age;
        let slot = &mut self.slots[key as usize & self.mask];
        let replace = match slot {
            None => true,
            Some(old) => old.key == key || old.age != age || depth >= old.depth,
        };
        if replace {
            *slot = Some(Entry { key, depth, score, bound, best_move, age });
        }
    }
}

impl Default for TranspositionTable {
    fn default() -> Self {
        TranspositionTable::new(DEFAULT_TT_BITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_checks_full_key() {
        let mut tt = TranspositionTable::new(4);
        tt.store(0x13, 3, 50, Bound::Exact, None);
        assert_eq!(tt.probe(0x13).map(|e| e.score), Some(50));
        // Same slot (low bits 0x3), different key.
        assert!(tt.probe(0x23).is_none());
    }

    #[test]
    fn depth_preferred_within_a_search() {
        let mut tt = TranspositionTable::new(4);
        tt.store(0x13, 5, 1, Bound::Exact, None);
        tt.store(0x23, 2, 2, Bound::Exact, None);
        assert_eq!(tt.probe(0x13).map(|e| e.score), Some(1));
        assert!(tt.probe(0x23).is_none());
        tt.new_search();
        tt.store(0x23, 2, 2, Bound::Exact, None);
        assert_eq!(tt.probe(0x23).map(|e| e.score), Some(2));
    }

    #[test]
    fn capacity_is_fixed() {
        let mut tt = TranspositionTable::new(3);
        for k in 0..1000u64 {
            tt.store(k.wrapping_mul(0x9e37_79b9_7f4a_7c15), (k % 7) as u8, 0, Bound::Lower, None);
        }
        assert_eq!(tt.capacity(), 8);
        assert!(tt.len() <= 8);
        tt.clear();
        assert!(tt.is_empty());
    }
}
