//! Deterministic random context generation.
//!
//! The generator is pinned to the splitmix64 sequence so that a given
//! `(objects, attributes, density, seed)` quadruple produces the same
//! context on every platform and in every implementation of this scheme.

use crate::context::FormalContext;
use thiserror::Error;

/// splitmix64: 64 bits of state, one mix per draw.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection-free modulo; good enough
    /// for test-corpus sampling, not for statistics.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RandomContextError {
    #[error("density {0} is not a probability in [0, 1]")]
    InvalidDensity(f64),
}

/// A random formal context with each cell set independently with the given
/// probability.
///
/// Cells consume one splitmix64 draw each, row-major; a cell is set iff
/// `draw / 2^64 < density` in exact arithmetic. Objects are named
/// `g0, g1, ...` and attributes `m0, m1, ...`.
pub fn random_context(
    objects: usize,
    attributes: usize,
    density: f64,
    seed: u64,
) -> Result<FormalContext, RandomContextError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(RandomContextError::InvalidDensity(density));
    }
    // density * 2^64 is exact in f64 (scaling by a power of two), and the
    // ceiling turns the strict real-valued comparison into an integer one.
    let threshold = (density * 18_446_744_073_709_551_616.0).ceil() as u128;
    let mut rng = SplitMix64::new(seed);
    let object_names = (0..objects).map(|g| format!("g{g}")).collect();
    let attribute_names = (0..attributes).map(|m| format!("m{m}")).collect();
    let rows = (0..objects)
        .map(|_| {
            let mut row = crate::bitset::BitSet::new(attributes);
            for m in 0..attributes {
                if (rng.next_u64() as u128) < threshold {
                    row.insert(m);
                }
            }
            row
        })
        .collect();
    Ok(FormalContext::new(object_names, attribute_names, rows)
        .expect("generated names and rows are consistent"))
}
