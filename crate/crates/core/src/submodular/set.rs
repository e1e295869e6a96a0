use std::fmt;

use crate::error::{Error, Result};

/// Subset of a ground set with at most [`ElementSet::CAPACITY`] elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        ElementSet(0)
    }

    pub fn singleton(element: usize) -> Self {
        assert!(element < Self::CAPACITY, "element {element} out of range");
        ElementSet(1u128 << element)
    }

    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// Builds a set from element ids, rejecting any id `>= ground_size`.
    pub fn from_elements(elements: &[usize], ground_size: usize) -> Result<Self> {
        let mut set = ElementSet::empty();
        for &e in elements {
            if e >= ground_size || e >= Self::CAPACITY {
                return Err(Error::input(format!(
                    "element {e} outside ground set of size {ground_size}"
                )));
            }
            set.insert(e);
        }
        Ok(set)
    }

    pub fn insert(&mut self, element: usize) {
        self.0 |= 1u128 << element;
    }

    pub fn contains(self, element: usize) -> bool {
        element < Self::CAPACITY && self.0 >> element & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn without(self, element: usize) -> Self {
        ElementSet(self.0 & !(1u128 << element))
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True when every element is below `ground_size`.
    pub fn fits(self, ground_size: usize) -> bool {
        ground_size >= Self::CAPACITY || self.0 >> ground_size == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(e)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ElementSet::empty();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
