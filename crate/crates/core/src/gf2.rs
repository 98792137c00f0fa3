//! Row-reduced echelon bases over GF(2).
//!
//! Each row is one packed word. Rows are kept fully reduced with the pivot
//! at the lowest set index, so two bases compare equal iff they span the
//! same space, whatever order the vectors were inserted in.

use crate::bitset::IndexSet;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Basis {
    // sorted by pivot ascending
    rows: Vec<IndexSet>,
}

#[inline]
fn pivot(row: IndexSet) -> usize {
    row.min().expect("basis rows are nonzero")
}

impl Gf2Basis {
    pub fn new() -> Self {
        Gf2Basis { rows: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = IndexSet>>(vectors: I) -> Self {
        let mut b = Gf2Basis::new();
        for v in vectors {
            b.insert(v);
        }
        b
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IndexSet] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: IndexSet) -> IndexSet {
        for &row in &self.rows {
            if v.contains(pivot(row)) {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: IndexSet) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, v: IndexSet) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let p = pivot(r);
        for row in self.rows.iter_mut() {
            if row.contains(p) {
                *row ^= r;
            }
        }
        let at = self.rows.partition_point(|&row| pivot(row) < p);
        self.rows.insert(at, r);
        true
    }

    /// Unit vectors `e_m` in the span.
    ///
    /// In a fully reduced basis `e_m` is in the span iff some row equals it.
    pub fn unit_vectors(&self) -> IndexSet {
        self.rows
            .iter()
            .filter(|r| r.is_singleton())
            .fold(IndexSet::EMPTY, |acc, &r| acc | r)
    }

    /// The same span rotated by `shift` inside `Z_n`.
    pub fn rotated(&self, n: usize, shift: usize) -> Self {
        Gf2Basis::from_vectors(self.rows.iter().map(|r| r.rotate(n, shift)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn order_independent() {
        let vs = [set(&[0, 1]), set(&[1, 2]), set(&[0, 2]), set(&[3, 4, 5])];
        let a = Gf2Basis::from_vectors(vs);
        let b = Gf2Basis::from_vectors(vs.iter().rev().copied());
        assert_eq!(a, b);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn detects_unit_vectors() {
        let b = Gf2Basis::from_vectors([set(&[0, 1]), set(&[1])]);
        assert_eq!(b.unit_vectors(), set(&[0, 1]));
        let c = Gf2Basis::from_vectors([set(&[0, 1]), set(&[1, 2])]);
        assert!(c.unit_vectors().is_empty());
        assert!(c.contains(set(&[0, 2])));
        assert!(!c.contains(set(&[0])));
    }

    #[test]
    fn rotation_preserves_rank() {
        let b = Gf2Basis::from_vectors([set(&[0, 4]), set(&[2, 6])]);
        let r = b.rotated(7, 3);
        assert_eq!(r.rank(), 2);
        assert!(r.contains(set(&[3, 0])));
    }
}
