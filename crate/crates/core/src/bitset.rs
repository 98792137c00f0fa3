//! Bit-packed sets of small indices.
//!
//! Message sets, symbol supports and client sets all live in `Z_P` with
//! `P <= MAX_MESSAGES`, so a single `u128` word holds any of them. The same
//! word doubles as a GF(2) row vector.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, BitXorAssign, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest message count representable by [`IndexSet`].
pub const MAX_MESSAGES: usize = 128;

/// A set of indices in `[0, 128)`, stored as one `u128`.
///
/// Ordering compares the packed words, which is the order used for
/// lexicographic tie-breaks in the oracles.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u128);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        IndexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_MESSAGES);
        if n == MAX_MESSAGES {
            IndexSet(u128::MAX)
        } else {
            IndexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_MESSAGES);
        IndexSet(1u128 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_MESSAGES && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    /// Flips membership of `i`; this is XOR of a unit vector.
    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.0 ^= 1u128 << i;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True iff the set has exactly one element.
    #[inline]
    pub fn is_singleton(self) -> bool {
        self.0 != 0 && self.0 & (self.0 - 1) == 0
    }

    #[inline]
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Cyclic rotation inside `Z_n`: every element `x` maps to `(x + shift) mod n`.
    pub fn rotate(self, n: usize, shift: usize) -> Self {
        debug_assert!((1..=MAX_MESSAGES).contains(&n));
        debug_assert!(self.is_subset(IndexSet::full(n)));
        let shift = shift % n;
        if shift == 0 {
            return self;
        }
        let mask = IndexSet::full(n).0;
        IndexSet(((self.0 << shift) | (self.0 >> (n - shift))) & mask)
    }

    /// Smallest rotation of this set in `Z_n` (the necklace representative).
    pub fn canonical_rotation(self, n: usize) -> Self {
        (0..n).map(|r| self.rotate(n, r)).min().unwrap_or(self)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for IndexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

macro_rules! bit_op {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for IndexSet {
            type Output = IndexSet;
            #[inline]
            fn $f(self, rhs: IndexSet) -> IndexSet {
                IndexSet(self.0 $op rhs.0)
            }
        }
        impl $atr for IndexSet {
            #[inline]
            fn $af(&mut self, rhs: IndexSet) {
                self.0 = self.0 $op rhs.0;
            }
        }
    };
}

bit_op!(BitOr, bitor, BitOrAssign, bitor_assign, |);
bit_op!(BitAnd, bitand, BitAndAssign, bitand_assign, &);
bit_op!(BitXor, bitxor, BitXorAssign, bitxor_assign, ^);

impl Sub for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn sub(self, rhs: IndexSet) -> IndexSet {
        IndexSet(self.0 & !rhs.0)
    }
}

impl Not for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn not(self) -> IndexSet {
        IndexSet(!self.0)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        let mut s = IndexSet::EMPTY;
        for i in raw {
            if i >= MAX_MESSAGES {
                return Err(serde::de::Error::custom(format!(
                    "index {i} exceeds the supported maximum {}",
                    MAX_MESSAGES - 1
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_wraps_inside_n() {
        let s: IndexSet = [0, 5, 6].into_iter().collect();
        assert_eq!(s.rotate(7, 1).to_vec(), vec![0, 1, 6]);
        assert_eq!(s.rotate(7, 7), s);
        assert_eq!(IndexSet::full(128).rotate(128, 5), IndexSet::full(128));
    }

    #[test]
    fn canonical_rotation_is_orbit_minimum() {
        let s: IndexSet = [3, 5].into_iter().collect();
        assert_eq!(s.canonical_rotation(8).to_vec(), vec![0, 2]);
        let t: IndexSet = [1, 7].into_iter().collect();
        assert_eq!(t.canonical_rotation(8).to_vec(), vec![0, 2]);
    }

    #[test]
    fn singleton_and_iteration() {
        assert!(IndexSet::singleton(127).is_singleton());
        assert!(!IndexSet::EMPTY.is_singleton());
        let s: IndexSet = [9, 1, 4].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 4, 9]);
        assert_eq!(s.to_string(), "{1,4,9}");
        assert_eq!(s.min(), Some(1));
    }

    #[test]
    fn serde_round_trip_sorted() {
        let s: IndexSet = [8, 3].into_iter().collect();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[3,8]");
        let back: IndexSet = serde_json::from_str("[8,3,3]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<IndexSet>("[128]").is_err());
    }
}
