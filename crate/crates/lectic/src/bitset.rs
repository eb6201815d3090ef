//! Fixed-width bit vectors over a base set `{0..width-1}`.
//!
//! All set operations require both operands to have the same width; mixing
//! widths is a programmer error and panics. Unused high bits of the last
//! word are kept zero so that equality and hashing work word-wise.

use std::fmt;

const WORD_BITS: usize = u64::BITS as usize;

/// A subset of `{0..width-1}` backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    width: usize,
    words: Vec<u64>,
}

impl BitSet {
    /// The empty subset of a base set of the given width.
    pub fn new(width: usize) -> Self {
        BitSet {
            width,
            words: vec![0; width.div_ceil(WORD_BITS)],
        }
    }

    /// The full base set `{0..width-1}`.
    pub fn full(width: usize) -> Self {
        let mut set = BitSet::new(width);
        for (i, word) in set.words.iter_mut().enumerate() {
            let bits_here = (width - i * WORD_BITS).min(WORD_BITS);
            *word = if bits_here == WORD_BITS {
                u64::MAX
            } else {
                (1u64 << bits_here) - 1
            };
        }
        set
    }

    pub fn from_indices(width: usize, indices: &[usize]) -> Self {
        let mut set = BitSet::new(width);
        for &i in indices {
            set.insert(i);
        }
        set
    }

    /// The subset given by the low `width` bits of `mask`; handy for
    /// exhaustive sweeps over small base sets.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD_BITS, "from_mask is limited to 64-bit base sets");
        assert!(
            width == WORD_BITS || mask >> width == 0,
            "mask {mask:#x} has bits outside the base set of width {width}"
        );
        let mut set = BitSet::new(width);
        if let Some(word) = set.words.first_mut() {
            *word = mask;
        }
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, index: usize) -> bool {
        assert!(index < self.width, "index {index} out of range {}", self.width);
        self.words[index / WORD_BITS] & (1u64 << (index % WORD_BITS)) != 0
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.width, "index {index} out of range {}", self.width);
        self.words[index / WORD_BITS] |= 1u64 << (index % WORD_BITS);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.width, "index {index} out of range {}", self.width);
        self.words[index / WORD_BITS] &= !(1u64 << (index % WORD_BITS));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.check_width(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn symmetric_difference(&self, other: &BitSet) -> BitSet {
        self.check_width(other);
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        out
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_superset_of(&self, other: &BitSet) -> bool {
        other.is_subset_of(self)
    }

    /// Smallest member, if any.
    pub fn min_index(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Whether both sets agree on all positions strictly below `limit`.
    pub fn eq_below(&self, other: &BitSet, limit: usize) -> bool {
        self.check_width(other);
        assert!(limit <= self.width);
        let full_words = limit / WORD_BITS;
        if self.words[..full_words] != other.words[..full_words] {
            return false;
        }
        let rem = limit % WORD_BITS;
        if rem == 0 {
            return true;
        }
        let mask = (1u64 << rem) - 1;
        (self.words[full_words] ^ other.words[full_words]) & mask == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD_BITS + bit)
                }
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_width(&self, other: &BitSet) {
        assert_eq!(
            self.width, other.width,
            "bit set width mismatch: {} vs {}",
            self.width, other.width
        );
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for BitSet {
    /// Collects indices into a set just wide enough to hold them.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let indices: Vec<usize> = iter.into_iter().collect();
        let width = indices.iter().map(|&i| i + 1).max().unwrap_or(0);
        BitSet::from_indices(width, &indices)
    }
}
