//! Lectic-order enumeration of finite semilattices, closure systems, and
//! formal-context intents.
//!
//! The crate has three layers:
//!
//! - [`semilattice`]: a generic successor-search engine that walks every
//!   element of a finite join-semilattice exactly once, given only a
//!   generating sequence and the join. Elements are compared by the least
//!   generator index separating them.
//! - [`closure`]: closure operators on a finite base set with the classic
//!   Next-Closure enumeration of closed sets, and the presentation of any
//!   closure system as a generator table for the engine above.
//! - [`context`]: formal contexts with derivation operators, object
//!   clarification/reduction, and an intent enumeration that reads the
//!   incidence matrix exactly once, driving the search from the object
//!   intents `{g}'` (the ∩-irreducible generators).
//!
//! [`cxt`] reads and writes the Burmeister `.cxt` format, [`random`]
//! generates reproducible random contexts, and [`cli`] exposes the whole
//! thing as the `lectic` binary.

pub mod bitset;
pub mod cli;
pub mod closure;
pub mod context;
pub mod cxt;
pub mod random;
pub mod semilattice;

pub use bitset::BitSet;
pub use closure::{
    brute_force_closed, classic_enumerate, classic_next, classic_plus, closed_sets,
    closure_generators, validate_closure_axioms, ClosureOperator,
};
pub use context::{
    enumerate_extents, enumerate_intents, intents, intents_classic, intents_of_reduced,
    FormalContext, IntentClosure, ObjectIntentTable, OpCounters,
};
pub use cxt::{parse_cxt, write_cxt, CxtError};
pub use random::{random_context, SplitMix64};
pub use semilattice::{
    join_irreducibles, Footprint, GeneratorTable, JoinSemilattice, LecticError, LecticOrdering,
};
