//! Formal contexts, derivation operators, object clarification and
//! reduction, and intent enumeration driven by the object intents.
//!
//! A context relates objects to attributes through an incidence matrix.
//! Its intents (attribute sets closed under double derivation) form a
//! semilattice under intersection, generated by the rows `{g}'` — which
//! is exactly the shape the generic engine wants. [`ObjectIntentTable`]
//! stores those rows once; the successor search afterwards never touches
//! the incidence matrix again, which is the point of the algorithm when
//! context access is expensive. The matrix keeps an access counter so
//! tests can hold it to that.
//!
//! The emitted order is the lectic order of the object-generator
//! sequence, so successive intents have lectically ascending extents on
//! the reduced object set. It need not coincide with a lectic order over
//! any attribute sequence; [`intents_classic`] produces one of those.

use crate::bitset::BitSet;
use crate::closure::ClosureOperator;
use std::fmt;
use std::ops::AddAssign;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("{rows} incidence rows for {objects} objects")]
    RowCountMismatch { rows: usize, objects: usize },
    #[error("incidence row {row} has width {found}, expected {expected}")]
    RowWidthMismatch {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("duplicate object name {0:?}")]
    DuplicateObject(String),
    #[error("duplicate attribute name {0:?}")]
    DuplicateAttribute(String),
    #[error("incidence row {row} has illegal symbol {symbol:?} (expected '.' or 'X')")]
    IllegalSymbol { row: usize, symbol: char },
}

/// A formal context: named objects, named attributes, and an incidence
/// bit matrix (one row per object).
///
/// Immutable after construction; the embedded read counter is the only
/// interior state and does not affect behavior.
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    reads: AtomicU64,
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Result<Self, ContextError> {
        if rows.len() != objects.len() {
            return Err(ContextError::RowCountMismatch {
                rows: rows.len(),
                objects: objects.len(),
            });
        }
        for (g, row) in rows.iter().enumerate() {
            if row.width() != attributes.len() {
                return Err(ContextError::RowWidthMismatch {
                    row: g,
                    found: row.width(),
                    expected: attributes.len(),
                });
            }
        }
        for (i, name) in objects.iter().enumerate() {
            if objects[..i].contains(name) {
                return Err(ContextError::DuplicateObject(name.clone()));
            }
        }
        for (i, name) in attributes.iter().enumerate() {
            if attributes[..i].contains(name) {
                return Err(ContextError::DuplicateAttribute(name.clone()));
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            reads: AtomicU64::new(0),
        })
    }

    /// Build from cross-table rows of `.` and `X`.
    pub fn from_cross_table(
        objects: Vec<String>,
        attributes: Vec<String>,
        table: &[&str],
    ) -> Result<Self, ContextError> {
        let mut rows = Vec::with_capacity(table.len());
        for (g, line) in table.iter().enumerate() {
            let mut row = BitSet::new(attributes.len());
            let mut width = 0;
            for (m, symbol) in line.chars().enumerate() {
                width += 1;
                match symbol {
                    'X' if m < attributes.len() => row.insert(m),
                    'X' | '.' => {}
                    _ => return Err(ContextError::IllegalSymbol { row: g, symbol }),
                }
            }
            if width != attributes.len() {
                return Err(ContextError::RowWidthMismatch {
                    row: g,
                    found: width,
                    expected: attributes.len(),
                });
            }
            rows.push(row);
        }
        FormalContext::new(objects, attributes, rows)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_name(&self, g: usize) -> &str {
        &self.objects[g]
    }

    pub fn attribute_name(&self, m: usize) -> &str {
        &self.attributes[m]
    }

    /// Whether object `g` has attribute `m`. Counts one matrix read.
    pub fn incidence(&self, g: usize, m: usize) -> bool {
        self.reads.fetch_add(1, Ordering::Relaxed);
        assert!(m < self.attribute_count());
        self.rows[g].contains(m)
    }

    /// The row `{g}'` as an owned set. Counts one full-row read.
    pub fn object_intent(&self, g: usize) -> BitSet {
        self.row(g).clone()
    }

    fn row(&self, g: usize) -> &BitSet {
        self.reads
            .fetch_add(self.attribute_count() as u64, Ordering::Relaxed);
        &self.rows[g]
    }

    /// Incidence-matrix reads so far, in cells (a row read counts as
    /// `|M|` cells).
    pub fn incidence_reads(&self) -> u64 {
        self.reads.load(Ordering::Relaxed)
    }

    pub fn reset_incidence_reads(&self) {
        self.reads.store(0, Ordering::Relaxed);
    }

    /// `A' = {m : every g in A has m}`; the empty object set derives to
    /// all attributes.
    pub fn derive_attributes(&self, objects: &BitSet) -> BitSet {
        assert_eq!(objects.width(), self.object_count());
        let mut shared = BitSet::full(self.attribute_count());
        for g in objects.iter() {
            shared.intersect_with(self.row(g));
        }
        shared
    }

    /// `B' = {g : g has every m in B}`; the empty attribute set derives
    /// to all objects.
    pub fn derive_objects(&self, attributes: &BitSet) -> BitSet {
        assert_eq!(attributes.width(), self.attribute_count());
        let mut members = BitSet::new(self.object_count());
        for g in 0..self.object_count() {
            if self.row(g).is_superset_of(attributes) {
                members.insert(g);
            }
        }
        members
    }

    /// The double derivation `B''`: the smallest intent containing `B`.
    pub fn intent_closure(&self, attributes: &BitSet) -> BitSet {
        self.derive_attributes(&self.derive_objects(attributes))
    }

    /// Swap objects and attributes.
    pub fn transpose(&self) -> FormalContext {
        let mut columns = vec![BitSet::new(self.object_count()); self.attribute_count()];
        for g in 0..self.object_count() {
            for m in self.row(g).iter() {
                columns[m].insert(g);
            }
        }
        FormalContext::new(self.attributes.clone(), self.objects.clone(), columns)
            .expect("a transposed context stays consistent")
    }

    /// Remove duplicate object rows (the first-listed object survives),
    /// rows equal to the full attribute set, and rows equal to the
    /// intersection of the other rows strictly containing them. The
    /// intent set is unchanged; the surviving rows are exactly the
    /// ∩-irreducible intents apart from `M`.
    pub fn clarify_reduce_objects(&self) -> FormalContext {
        let full = BitSet::full(self.attribute_count());
        let mut kept: Vec<usize> = Vec::new();
        for g in 0..self.object_count() {
            let row = self.row(g);
            if !kept.iter().any(|&h| self.rows[h] == *row) {
                kept.push(g);
            }
        }
        let survivors: Vec<usize> = kept
            .iter()
            .copied()
            .filter(|&g| {
                if self.rows[g] == full {
                    return false;
                }
                let mut meet: Option<BitSet> = None;
                for &h in &kept {
                    let other = &self.rows[h];
                    if h != g && self.rows[g].is_subset_of(other) && *other != self.rows[g] {
                        match &mut meet {
                            None => meet = Some(other.clone()),
                            Some(acc) => acc.intersect_with(other),
                        }
                    }
                }
                meet != Some(self.rows[g].clone())
            })
            .collect();
        FormalContext::new(
            survivors.iter().map(|&g| self.objects[g].clone()).collect(),
            self.attributes.clone(),
            survivors.iter().map(|&g| self.rows[g].clone()).collect(),
        )
        .expect("a row subset of a valid context stays consistent")
    }
}

impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.attributes == other.attributes
            && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

impl Clone for FormalContext {
    fn clone(&self) -> Self {
        FormalContext {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            rows: self.rows.clone(),
            reads: AtomicU64::new(0),
        }
    }
}

impl fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalContext")
            .field("objects", &self.objects)
            .field("attributes", &self.attributes)
            .field("rows", &self.rows)
            .finish()
    }
}

/// The `B ↦ B''` operator of a context, as a closure operator on the
/// attribute set.
pub struct IntentClosure<'a>(pub &'a FormalContext);

impl ClosureOperator for IntentClosure<'_> {
    fn base_size(&self) -> usize {
        self.0.attribute_count()
    }

    fn close(&self, set: &BitSet) -> BitSet {
        self.0.intent_closure(set)
    }
}

/// Counts of the primitive set operations one successor search performs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub superset_tests: u64,
    pub intersections: u64,
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, other: OpCounters) {
        self.superset_tests += other.superset_tests;
        self.intersections += other.intersections;
    }
}

/// The object intents `{g}'` of a context, read off the incidence matrix
/// in a single pass and stored for reuse.
///
/// All successor searches work on this table alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectIntentTable {
    rows: Vec<BitSet>,
    attribute_count: usize,
}

impl ObjectIntentTable {
    pub fn new(context: &FormalContext) -> Self {
        ObjectIntentTable {
            rows: (0..context.object_count())
                .map(|g| context.object_intent(g))
                .collect(),
            attribute_count: context.attribute_count(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.rows.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attribute_count
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// The lectically next intent after `intent`, in the order induced
    /// by `⊇` with the object rows as generators (and the full attribute
    /// set as a virtual generator past them, skipped here because it
    /// contains every intent).
    ///
    /// `intent` must be an intent of the (clarified and reduced) context
    /// the table was built from; the full set `M` is allowed.
    pub fn next_intent(&self, intent: &BitSet) -> Option<BitSet> {
        self.next_intent_instrumented(intent).0
    }

    /// As [`next_intent`](Self::next_intent), also reporting how many
    /// superset tests and intersections the call performed.
    pub fn next_intent_instrumented(&self, intent: &BitSet) -> (Option<BitSet>, OpCounters) {
        let mut counters = OpCounters::default();
        let n = self.rows.len();
        // Rows containing the current intent, computed once per call.
        let mut covering = BitSet::new(n);
        for h in 0..n {
            counters.superset_tests += 1;
            if self.rows[h].is_superset_of(intent) {
                covering.insert(h);
            }
        }
        for g in (0..n).rev() {
            if covering.contains(g) {
                continue;
            }
            // candidate = intent ⊕ g: the meet of row g with every
            // earlier row containing the intent.
            let mut candidate = self.rows[g].clone();
            for h in 0..g {
                if covering.contains(h) {
                    counters.intersections += 1;
                    candidate.intersect_with(&self.rows[h]);
                }
            }
            // Accept iff no earlier row gained the candidate: rows not
            // containing the intent must not contain the candidate.
            let mut accepted = true;
            for h in 0..g {
                if !covering.contains(h) {
                    counters.superset_tests += 1;
                    if self.rows[h].is_superset_of(&candidate) {
                        accepted = false;
                        break;
                    }
                }
            }
            if accepted {
                return (Some(candidate), counters);
            }
        }
        (None, counters)
    }
}

/// Iterator over all intents of a context, the full attribute set first.
pub struct IntentIterator {
    table: ObjectIntentTable,
    pending: Option<BitSet>,
}

impl IntentIterator {
    fn from_table(table: ObjectIntentTable) -> Self {
        let first = BitSet::full(table.attribute_count());
        IntentIterator {
            table,
            pending: Some(first),
        }
    }

    pub fn table(&self) -> &ObjectIntentTable {
        &self.table
    }
}

impl Iterator for IntentIterator {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        let current = self.pending.take()?;
        self.pending = self.table.next_intent(&current);
        Some(current)
    }
}

/// Stream the intents of a context. Clarifies and reduces the objects
/// first; the matrix is then read once to set up the search.
pub fn intents(context: &FormalContext) -> IntentIterator {
    IntentIterator::from_table(ObjectIntentTable::new(&context.clarify_reduce_objects()))
}

/// Stream the intents of a context the caller guarantees to be object
/// clarified and reduced already.
pub fn intents_of_reduced(context: &FormalContext) -> IntentIterator {
    IntentIterator::from_table(ObjectIntentTable::new(context))
}

/// All intents, lectically increasing from the full attribute set down
/// to the attributes common to all objects.
pub fn enumerate_intents(context: &FormalContext) -> Vec<BitSet> {
    intents(context).collect()
}

/// All extents: the intents of the transposed context.
pub fn enumerate_extents(context: &FormalContext) -> Vec<BitSet> {
    enumerate_intents(&context.transpose())
}

/// Baseline: classic Next-Closure over the `B ↦ B''` operator. Produces
/// the same intent set as [`enumerate_intents`] in a generally different
/// order (attribute-indexed rather than object-indexed lectic).
pub fn intents_classic(context: &FormalContext) -> Vec<BitSet> {
    crate::closure::classic_enumerate(&IntentClosure(context))
}
