use crate::error::{Error, Result};

/// Dynamic integer set over `[0, universe)` with strict predecessor/successor.
///
/// A 64-ary bit trie: level 0 holds one bit per key, each higher level one bit
/// per nonempty word below it. All operations touch `O(log_64 universe)` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedKeySet {
    universe: usize,
    len: usize,
    levels: Vec<Vec<u64>>,
}

impl OrderedKeySet {
    pub fn new(universe: usize) -> Self {
        let mut levels = Vec::new();
        let mut words = universe.div_ceil(64).max(1);
        loop {
            levels.push(vec![0u64; words]);
            if words == 1 {
                break;
            }
            words = words.div_ceil(64);
        }
        Self {
            universe,
            len: 0,
            levels,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.levels[0][x >> 6] >> (x & 63) & 1 == 1
    }

    /// Returns `false` if `x` was already present. Panics if `x` is outside the universe.
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(
            x < self.universe,
            "key {x} outside universe {}",
            self.universe
        );
        if self.contains(x) {
            return false;
        }
        let mut idx = x;
        for level in &mut self.levels {
            let word = &mut level[idx >> 6];
            let was_empty = *word == 0;
            *word |= 1 << (idx & 63);
            if !was_empty {
                break;
            }
            idx >>= 6;
        }
        self.len += 1;
        true
    }

    pub fn delete(&mut self, x: usize) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::KeyNotFound(x));
        }
        let mut idx = x;
        for level in &mut self.levels {
            let word = &mut level[idx >> 6];
            *word &= !(1 << (idx & 63));
            if *word != 0 {
                break;
            }
            idx >>= 6;
        }
        self.len -= 1;
        Ok(())
    }

    /// Largest key strictly below `x`.
    pub fn pred(&self, x: usize) -> Option<usize> {
        if x == 0 || self.universe == 0 {
            return None;
        }
        self.max_at_most((x - 1).min(self.universe - 1))
    }

    /// Smallest key strictly above `x`.
    pub fn succ(&self, x: usize) -> Option<usize> {
        self.min_at_least(x.checked_add(1)?)
    }

    pub fn min(&self) -> Option<usize> {
        self.min_at_least(0)
    }

    pub fn max(&self) -> Option<usize> {
        self.universe
            .checked_sub(1)
            .and_then(|y| self.max_at_most(y))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.min(), move |&x| self.succ(x))
    }

    fn min_at_least(&self, y: usize) -> Option<usize> {
        if y >= self.universe {
            return None;
        }
        let mut idx = y;
        for (l, level) in self.levels.iter().enumerate() {
            let word = idx >> 6;
            if word >= level.len() {
                return None;
            }
            let mask = level[word] & (!0u64 << (idx & 63));
            if mask != 0 {
                let mut pos = (word << 6) | mask.trailing_zeros() as usize;
                for below in self.levels[..l].iter().rev() {
                    pos = (pos << 6) | below[pos].trailing_zeros() as usize;
                }
                return Some(pos);
            }
            idx = word + 1;
        }
        None
    }

    fn max_at_most(&self, y: usize) -> Option<usize> {
        let mut idx = y;
        for (l, level) in self.levels.iter().enumerate() {
            let word = idx >> 6;
            let bit = idx & 63;
            let keep = if bit == 63 {
                !0u64
            } else {
                (1u64 << (bit + 1)) - 1
            };
            let mask = level[word] & keep;
            if mask != 0 {
                let mut pos = (word << 6) | (63 - mask.leading_zeros() as usize);
                for below in self.levels[..l].iter().rev() {
                    pos = (pos << 6) | (63 - below[pos].leading_zeros() as usize);
                }
                return Some(pos);
            }
            if word == 0 {
                return None;
            }
            idx = word - 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn strict_neighbors() {
        let mut s = OrderedKeySet::new(10);
        s.insert(3);
        s.insert(7);
        assert_eq!(s.pred(7), Some(3));
        assert_eq!(s.succ(3), Some(7));
        assert_eq!(s.pred(3), None);
        assert_eq!(s.succ(7), None);
        s.insert(5);
        assert_eq!(s.pred(7), Some(5));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 5, 7]);
    }

    #[test]
    fn delete_absent_key() {
        let mut s = OrderedKeySet::new(4);
        assert_eq!(s.delete(2), Err(Error::KeyNotFound(2)));
        s.insert(2);
        assert!(!s.insert(2));
        s.delete(2).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.min(), None);
    }

    #[test]
    fn spans_several_levels() {
        let m = 64 * 64 * 3 + 5;
        let mut s = OrderedKeySet::new(m);
        s.insert(0);
        s.insert(m - 1);
        assert_eq!(s.succ(0), Some(m - 1));
        assert_eq!(s.pred(m - 1), Some(0));
        assert_eq!(s.pred(usize::MAX), Some(m - 1));
        s.delete(m - 1).unwrap();
        assert_eq!(s.succ(0), None);
        assert_eq!(s.max(), Some(0));
    }

    #[derive(Debug, Clone)]
    enum Op {
        Insert(usize),
        Delete(usize),
        Probe(usize),
    }

    fn ops(m: usize) -> impl Strategy<Value = Vec<Op>> {
        prop::collection::vec(
            prop_oneof![
                (0..m).prop_map(Op::Insert),
                (0..m).prop_map(Op::Delete),
                (0..m + 2).prop_map(Op::Probe),
            ],
            0..400,
        )
    }

    proptest! {
        #[test]
        fn matches_btreeset((m, seq) in (1usize..9000).prop_flat_map(|m| (Just(m), ops(m)))) {
            let mut s = OrderedKeySet::new(m);
            let mut oracle = BTreeSet::new();
            for op in seq {
                match op {
                    Op::Insert(x) => prop_assert_eq!(s.insert(x), oracle.insert(x)),
                    Op::Delete(x) => prop_assert_eq!(s.delete(x).is_ok(), oracle.remove(&x)),
                    Op::Probe(x) => {
                        prop_assert_eq!(s.pred(x), oracle.range(..x).next_back().copied());
                        prop_assert_eq!(s.succ(x), oracle.range(x + 1..).next().copied());
                    }
                }
                prop_assert_eq!(s.len(), oracle.len());
            }
            prop_assert_eq!(s.iter().collect::<Vec<_>>(), oracle.into_iter().collect::<Vec<_>>());
        }
    }
}
