//! Closure operators on a finite base set and classic Next-Closure
//! enumeration of their closed sets.
//!
//! The base set is `{0..n-1}`; position 0 is lectically most significant.
//! [`closure_generators`] rebuilds the same enumeration on top of the
//! generic semilattice engine: the closed sets form a join-semilattice
//! under `X ∨ Y = c(X ∪ Y)`, generated by the singleton closures
//! `c({i})` together with the bottom element `c(∅)` at the last index.

use crate::bitset::BitSet;
use crate::random::SplitMix64;
use crate::semilattice::{GeneratorTable, JoinSemilattice};
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// An idempotent, monotone, extensive map on subsets of `{0..base_size-1}`.
///
/// Operators are opaque callables: the axioms are not checked per call
/// (that costs an exponential sweep); use [`validate_closure_axioms`]
/// when in doubt.
pub trait ClosureOperator {
    fn base_size(&self) -> usize;

    fn close(&self, set: &BitSet) -> BitSet;
}

impl<C: ClosureOperator + ?Sized> ClosureOperator for &C {
    fn base_size(&self) -> usize {
        (**self).base_size()
    }

    fn close(&self, set: &BitSet) -> BitSet {
        (**self).close(set)
    }
}

/// The identity operator: every subset is closed.
#[derive(Clone, Copy, Debug)]
pub struct Identity(pub usize);

impl ClosureOperator for Identity {
    fn base_size(&self) -> usize {
        self.0
    }

    fn close(&self, set: &BitSet) -> BitSet {
        set.clone()
    }
}

/// A closure operator given by an arbitrary function.
pub struct FnOperator<F> {
    size: usize,
    apply: F,
}

impl<F: Fn(&BitSet) -> BitSet> FnOperator<F> {
    pub fn new(size: usize, apply: F) -> Self {
        FnOperator { size, apply }
    }
}

impl<F: Fn(&BitSet) -> BitSet> ClosureOperator for FnOperator<F> {
    fn base_size(&self) -> usize {
        self.size
    }

    fn close(&self, set: &BitSet) -> BitSet {
        (self.apply)(set)
    }
}

/// Wrapper counting how often the underlying operator is applied.
pub struct CountingOperator<C> {
    inner: C,
    applications: AtomicU64,
}

impl<C: ClosureOperator> CountingOperator<C> {
    pub fn new(inner: C) -> Self {
        CountingOperator {
            inner,
            applications: AtomicU64::new(0),
        }
    }

    pub fn applications(&self) -> u64 {
        self.applications.load(Ordering::Relaxed)
    }
}

impl<C: ClosureOperator> ClosureOperator for CountingOperator<C> {
    fn base_size(&self) -> usize {
        self.inner.base_size()
    }

    fn close(&self, set: &BitSet) -> BitSet {
        self.applications.fetch_add(1, Ordering::Relaxed);
        self.inner.close(set)
    }
}

/// A witnessed failure of one of the three closure axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `c(c(input)) ≠ c(input)`
    NotIdempotent { input: BitSet },
    /// `smaller ⊆ larger` but `c(smaller) ⊄ c(larger)`
    NotMonotone { smaller: BitSet, larger: BitSet },
    /// `input ⊄ c(input)`
    NotExtensive { input: BitSet },
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub checks: u64,
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Base-set size up to which [`validate_closure_axioms`] sweeps all
/// subsets instead of sampling.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 12;

/// Check the three closure axioms, exhaustively for small base sets and
/// on `samples` seeded random subsets otherwise. Violations are returned
/// as data, not as errors.
pub fn validate_closure_axioms<C: ClosureOperator>(operator: &C, samples: usize) -> AxiomReport {
    let n = operator.base_size();
    let mut report = AxiomReport {
        violations: Vec::new(),
        checks: 0,
        exhaustive: n <= EXHAUSTIVE_AXIOM_LIMIT,
    };
    if report.exhaustive {
        for mask in 0..(1u64 << n) {
            let input = BitSet::from_mask(n, mask);
            check_pointwise(operator, &input, &mut report);
            // Stepwise monotonicity implies the full axiom by chaining.
            for extra in 0..n {
                if !input.contains(extra) {
                    let mut larger = input.clone();
                    larger.insert(extra);
                    check_monotone(operator, &input, &larger, &mut report);
                }
            }
        }
    } else {
        let mut rng = SplitMix64::new(0x1ec7_1c0d_e5ee_d001);
        let random_set = |rng: &mut SplitMix64| {
            let mut set = BitSet::new(n);
            for i in 0..n {
                if rng.next_u64() & 1 == 0 {
                    set.insert(i);
                }
            }
            set
        };
        for _ in 0..samples {
            let input = random_set(&mut rng);
            check_pointwise(operator, &input, &mut report);
            let larger = input.union(&random_set(&mut rng));
            check_monotone(operator, &input, &larger, &mut report);
        }
    }
    report
}

fn check_pointwise<C: ClosureOperator>(operator: &C, input: &BitSet, report: &mut AxiomReport) {
    let closed = operator.close(input);
    report.checks += 2;
    if !input.is_subset_of(&closed) {
        report.violations.push(AxiomViolation::NotExtensive { input: input.clone() });
    }
    if operator.close(&closed) != closed {
        report.violations.push(AxiomViolation::NotIdempotent { input: input.clone() });
    }
}

fn check_monotone<C: ClosureOperator>(
    operator: &C,
    smaller: &BitSet,
    larger: &BitSet,
    report: &mut AxiomReport,
) {
    report.checks += 1;
    if !operator.close(smaller).is_subset_of(&operator.close(larger)) {
        report.violations.push(AxiomViolation::NotMonotone {
            smaller: smaller.clone(),
            larger: larger.clone(),
        });
    }
}

/// `A ⊕ i = c({j ∈ A | j < i} ∪ {i})` for a closed set `A`.
pub fn classic_plus<C: ClosureOperator>(operator: &C, closed: &BitSet, index: usize) -> BitSet {
    let n = operator.base_size();
    let mut seed = BitSet::new(n);
    for j in closed.iter().take_while(|&j| j < index) {
        seed.insert(j);
    }
    seed.insert(index);
    operator.close(&seed)
}

/// The lectically next closed set after `closed`, or `None` at the
/// maximum. Only indices outside the set are candidates.
pub fn classic_next<C: ClosureOperator>(operator: &C, closed: &BitSet) -> Option<BitSet> {
    for i in (0..operator.base_size()).rev() {
        if closed.contains(i) {
            continue;
        }
        let candidate = classic_plus(operator, closed, i);
        // The candidate keeps every element of `closed` below i, so prefix
        // agreement means exactly that nothing below i was gained.
        if candidate.eq_below(closed, i) {
            return Some(candidate);
        }
    }
    None
}

/// All closed sets in lectic order, starting at `c(∅)`.
pub fn classic_enumerate<C: ClosureOperator>(operator: &C) -> Vec<BitSet> {
    closed_sets(operator).collect()
}

/// Streaming form of [`classic_enumerate`].
pub fn closed_sets<C: ClosureOperator>(operator: C) -> ClosedSetIter<C> {
    let first = operator.close(&BitSet::new(operator.base_size()));
    ClosedSetIter {
        operator,
        pending: Some(first),
    }
}

pub struct ClosedSetIter<C: ClosureOperator> {
    operator: C,
    pending: Option<BitSet>,
}

impl<C: ClosureOperator> Iterator for ClosedSetIter<C> {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        let current = self.pending.take()?;
        self.pending = classic_next(&self.operator, &current);
        Some(current)
    }
}

/// Closed sets under `X ∨ Y = c(X ∪ Y)`.
#[derive(Clone, Debug)]
pub struct ClosureJoin<C>(pub C);

impl<C: ClosureOperator> JoinSemilattice for ClosureJoin<C> {
    type Elem = BitSet;

    fn join(&self, a: &BitSet, b: &BitSet) -> BitSet {
        self.0.close(&a.union(b))
    }

    fn eq(&self, a: &BitSet, b: &BitSet) -> bool {
        a == b
    }

    // On closed sets, c(a ∪ b) = b reduces to a ⊆ b.
    fn leq(&self, a: &BitSet, b: &BitSet) -> bool {
        a.is_subset_of(b)
    }
}

/// The generic-engine presentation of a closure system: generators
/// `c({0}), ..., c({n-1})` plus the bottom element `c(∅)` at the last
/// index, over the join `X ∨ Y = c(X ∪ Y)`.
///
/// The trailing generator exists only to supply the first element; it
/// lies below every closed set, so the successor search skips it.
pub fn closure_generators<C: ClosureOperator>(operator: C) -> GeneratorTable<ClosureJoin<C>> {
    let n = operator.base_size();
    let mut generators = Vec::with_capacity(n + 1);
    for i in 0..n {
        generators.push(operator.close(&BitSet::from_indices(n, &[i])));
    }
    generators.push(operator.close(&BitSet::new(n)));
    GeneratorTable::new(ClosureJoin(operator), generators)
}

pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("base set of size {size} exceeds the brute-force cap of {cap}")]
pub struct BaseSetTooLarge {
    pub size: usize,
    pub cap: usize,
}

/// Oracle: every closed set, obtained by closing all `2^n` subsets.
pub fn brute_force_closed<C: ClosureOperator>(operator: &C) -> Result<Vec<BitSet>, BaseSetTooLarge> {
    brute_force_closed_with_cap(operator, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_closed_with_cap<C: ClosureOperator>(
    operator: &C,
    cap: usize,
) -> Result<Vec<BitSet>, BaseSetTooLarge> {
    let n = operator.base_size();
    if n > cap {
        return Err(BaseSetTooLarge { size: n, cap });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        let closed = operator.close(&BitSet::from_mask(n, mask));
        if seen.insert(closed.clone()) {
            out.push(closed);
        }
    }
    Ok(out)
}
