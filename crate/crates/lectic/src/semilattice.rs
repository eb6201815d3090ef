//! Lectic-order enumeration of a finite join-semilattice from a generating
//! sequence.
//!
//! The engine works on any structure with an associative, commutative,
//! idempotent binary operation and a decidable equality, presented through
//! the [`JoinSemilattice`] trait. A [`GeneratorTable`] fixes a finite
//! sequence `(x_0, ..., x_{n-1})` of generators; the position in the
//! sequence is the index order, with position 0 the most significant.
//!
//! Two generated elements are compared by the least index at which their
//! generator memberships differ: `a < b` iff for `i = min Δ(a, b)` the
//! generator `x_i` lies below `b`. This is a total order on the generated
//! semilattice extending the semilattice order, and [`GeneratorTable::next_element`]
//! walks it one step at a time without materializing the whole lattice.

use crate::bitset::BitSet;
use thiserror::Error;

/// A join-semilattice structure over some element type.
///
/// `join` must be associative, commutative and idempotent on every element
/// reachable from the generators it is used with, and `eq` must decide
/// equality on the same elements. The semilattice order is derived:
/// `a ≤ b` iff `a ∨ b = b`.
///
/// The structure is passed explicitly (rather than being a bound on the
/// element type) so that one element type can carry many semilattice
/// structures — for example bit sets under union, under intersection, or
/// under the closure of their union.
pub trait JoinSemilattice {
    type Elem: Clone;

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// The derived order `a ≤ b :⟺ a ∨ b = b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.eq(&self.join(a, b), b)
    }
}

impl<S: JoinSemilattice + ?Sized> JoinSemilattice for &S {
    type Elem = S::Elem;

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).join(a, b)
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).eq(a, b)
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).leq(a, b)
    }
}

/// Bit sets under union: the powerset join-semilattice, ordered by `⊆`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BitSetUnion;

impl JoinSemilattice for BitSetUnion {
    type Elem = BitSet;

    fn join(&self, a: &BitSet, b: &BitSet) -> BitSet {
        a.union(b)
    }

    fn eq(&self, a: &BitSet, b: &BitSet) -> bool {
        a == b
    }

    fn leq(&self, a: &BitSet, b: &BitSet) -> bool {
        a.is_subset_of(b)
    }
}

/// Bit sets under intersection, ordered by `⊇`.
///
/// A meet-semilattice of sets is a join-semilattice once the order is
/// flipped; this is the structure of the intents of a formal context.
#[derive(Clone, Copy, Debug, Default)]
pub struct BitSetIntersection;

impl JoinSemilattice for BitSetIntersection {
    type Elem = BitSet;

    fn join(&self, a: &BitSet, b: &BitSet) -> BitSet {
        a.intersection(b)
    }

    fn eq(&self, a: &BitSet, b: &BitSet) -> bool {
        a == b
    }

    fn leq(&self, a: &BitSet, b: &BitSet) -> bool {
        a.is_superset_of(b)
    }
}

/// The index set `{i : x_i ≤ a}` of generators lying below an element.
///
/// Footprints identify generated elements uniquely: every generated `a`
/// is the join of the generators in its footprint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Footprint(BitSet);

impl Footprint {
    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn as_bitset(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bitset(self) -> BitSet {
        self.0
    }
}

/// Outcome of a lectic comparison.
///
/// When the elements differ, `witness` is the least index at which their
/// footprints disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LecticOrdering {
    Less { witness: usize },
    Equal,
    Greater { witness: usize },
}

impl LecticOrdering {
    pub fn is_less(self) -> bool {
        matches!(self, LecticOrdering::Less { .. })
    }

    pub fn is_le(self) -> bool {
        matches!(self, LecticOrdering::Less { .. } | LecticOrdering::Equal)
    }

    pub fn witness(self) -> Option<usize> {
        match self {
            LecticOrdering::Less { witness } | LecticOrdering::Greater { witness } => Some(witness),
            LecticOrdering::Equal => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LecticError {
    /// Semilattices are nonempty; an empty generating sequence is a caller
    /// bug, not an empty enumeration.
    #[error("empty generator table: no semilattice to enumerate")]
    EmptyGeneratorTable,
}

/// A finite generating sequence of a join-semilattice.
///
/// The table is immutable after construction and safe to share between
/// concurrent enumeration cursors; all operations are pure functions of
/// `(element, table)`.
#[derive(Clone, Debug)]
pub struct GeneratorTable<S: JoinSemilattice> {
    lattice: S,
    generators: Vec<S::Elem>,
}

impl<S: JoinSemilattice> GeneratorTable<S> {
    /// Duplicate generators are permitted; the enumeration handles them
    /// correctly (equal generators never separate equal elements).
    pub fn new(lattice: S, generators: Vec<S::Elem>) -> Self {
        GeneratorTable { lattice, generators }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, index: usize) -> &S::Elem {
        &self.generators[index]
    }

    pub fn generators(&self) -> &[S::Elem] {
        &self.generators
    }

    pub fn lattice(&self) -> &S {
        &self.lattice
    }

    /// The derived semilattice order.
    pub fn leq(&self, a: &S::Elem, b: &S::Elem) -> bool {
        self.lattice.leq(a, b)
    }

    /// Which generators lie below `a`.
    pub fn footprint(&self, a: &S::Elem) -> Footprint {
        let mut bits = BitSet::new(self.generators.len());
        for (i, x) in self.generators.iter().enumerate() {
            if self.lattice.leq(x, a) {
                bits.insert(i);
            }
        }
        Footprint(bits)
    }

    /// Indices of generators below exactly one of `a`, `b`.
    pub fn delta(&self, a: &S::Elem, b: &S::Elem) -> BitSet {
        self.footprint(a)
            .into_bitset()
            .symmetric_difference(self.footprint(b).as_bitset())
    }

    /// Total lectic comparison of two generated elements.
    ///
    /// For elements outside the generated semilattice, `Equal` only means
    /// the generators cannot distinguish them.
    pub fn lectic_compare(&self, a: &S::Elem, b: &S::Elem) -> LecticOrdering {
        match self.delta(a, b).min_index() {
            None => LecticOrdering::Equal,
            Some(i) => {
                if self.lattice.leq(&self.generators[i], b) {
                    LecticOrdering::Less { witness: i }
                } else {
                    LecticOrdering::Greater { witness: i }
                }
            }
        }
    }

    /// The candidate successor `a ⊕ i`: the join of `x_i` with every
    /// earlier generator lying below `a`.
    pub fn plus(&self, a: &S::Elem, index: usize) -> S::Elem {
        let mut acc = self.generators[index].clone();
        for j in 0..index {
            if self.lattice.leq(&self.generators[j], a) {
                acc = self.lattice.join(&acc, &self.generators[j]);
            }
        }
        acc
    }

    fn plus_masked(&self, below: &Footprint, index: usize) -> S::Elem {
        let mut acc = self.generators[index].clone();
        for j in 0..index {
            if below.contains(j) {
                acc = self.lattice.join(&acc, &self.generators[j]);
            }
        }
        acc
    }

    /// The immediate successor of `a` in the lectic order, or `None` at
    /// the maximum.
    ///
    /// Scans indices in descending order, skipping `i` with `x_i ≤ a`
    /// (such an `i` can never witness `a < a ⊕ i`), and returns the first
    /// candidate `a ⊕ i` whose witness really is `i`.
    pub fn next_element(&self, a: &S::Elem) -> Option<S::Elem> {
        let below = self.footprint(a);
        for i in (0..self.generators.len()).rev() {
            if below.contains(i) {
                continue;
            }
            let candidate = self.plus_masked(&below, i);
            // a <_i a⊕i iff no k < i gained membership: x_k ≤ a⊕i but
            // x_k ≰ a. The converse direction holds by construction of ⊕.
            let accepted = (0..i).all(|k| {
                below.contains(k) || !self.lattice.leq(&self.generators[k], &candidate)
            });
            if accepted {
                return Some(candidate);
            }
        }
        None
    }

    /// The lectic minimum of the generated semilattice: among the
    /// generators minimal in the semilattice order, the one with the
    /// largest index.
    ///
    /// Two distinct minimal elements compare by their earliest
    /// occurrences alone, so duplicates are ranked by first occurrence.
    pub fn first_element(&self) -> Result<S::Elem, LecticError> {
        if self.generators.is_empty() {
            return Err(LecticError::EmptyGeneratorTable);
        }
        let mut best = None;
        for (j, x) in self.generators.iter().enumerate() {
            if self.generators[..j].iter().any(|y| self.lattice.eq(y, x)) {
                continue;
            }
            let minimal = self
                .generators
                .iter()
                .all(|y| !(self.lattice.leq(y, x) && !self.lattice.eq(y, x)));
            if minimal {
                best = Some(j);
            }
        }
        let j = best.expect("a finite nonempty generator set has minimal elements");
        Ok(self.generators[j].clone())
    }

    /// Every element of the generated semilattice exactly once, strictly
    /// increasing in the lectic order.
    pub fn enumerate_all(&self) -> Result<Vec<S::Elem>, LecticError> {
        Ok(self.cursor()?.collect())
    }

    /// Streaming form of [`enumerate_all`](Self::enumerate_all).
    pub fn cursor(&self) -> Result<LecticCursor<'_, S>, LecticError> {
        Ok(LecticCursor {
            table: self,
            pending: Some(self.first_element()?),
        })
    }

    /// Brute-force oracle: the closure of the generator set under pairwise
    /// join, computed to a fixpoint. Independent of the successor search.
    pub fn generated_semilattice(&self) -> Vec<S::Elem> {
        let mut elements: Vec<S::Elem> = Vec::new();
        let push_new = |elements: &mut Vec<S::Elem>, e: S::Elem| {
            if !elements.iter().any(|x| self.lattice.eq(x, &e)) {
                elements.push(e);
            }
        };
        for g in &self.generators {
            push_new(&mut elements, g.clone());
        }
        let mut i = 0;
        while i < elements.len() {
            for j in 0..=i {
                let joined = self.lattice.join(&elements[i], &elements[j]);
                push_new(&mut elements, joined);
            }
            i += 1;
        }
        elements
    }
}

/// Iterator over a generated semilattice in lectic order.
///
/// Cursors are independent: several may walk the same table concurrently.
pub struct LecticCursor<'a, S: JoinSemilattice> {
    table: &'a GeneratorTable<S>,
    pending: Option<S::Elem>,
}

impl<S: JoinSemilattice> Iterator for LecticCursor<'_, S> {
    type Item = S::Elem;

    fn next(&mut self) -> Option<S::Elem> {
        let current = self.pending.take()?;
        self.pending = self.table.next_element(&current);
        Some(current)
    }
}

/// The elements of `elements` that are not a join of other elements:
/// those with nothing strictly below them, or whose strictly smaller
/// elements join to something strictly smaller.
pub fn join_irreducibles<S: JoinSemilattice>(lattice: &S, elements: &[S::Elem]) -> Vec<S::Elem> {
    elements
        .iter()
        .filter(|a| {
            let mut below = elements
                .iter()
                .filter(|b| lattice.leq(b, a) && !lattice.eq(b, a));
            match below.next() {
                None => true,
                Some(first) => {
                    let joined = below.fold(first.clone(), |acc, b| lattice.join(&acc, b));
                    // joined ≤ a holds automatically; irreducible iff strict.
                    !lattice.eq(&joined, a)
                }
            }
        })
        .cloned()
        .collect()
}
