//! Binary reflected Gray code.

use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{FccError, Result};

pub const MAX_GRAY_BITS: usize = 20;

/// A cyclic ordering of all `n`-bit words in which neighbours differ in one
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayOrdering {
    pub n: usize,
    pub sequence: Vec<BitVector>,
}

impl GrayOrdering {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitVector> {
        self.sequence.iter()
    }
}

/// Integer form of the reflected code: element `i` of the ordering, first
/// coordinate in the most significant of the `n` low bits.
///
/// Built by the reflection rule: the `(n+1)`-bit list is the `n`-bit list
/// with a 0 prefix followed by its reverse with a 1 prefix.
pub(crate) fn reflected_values(n: usize) -> Vec<u32> {
    let mut list = vec![0u32, 1];
    for width in 1..n {
        let prefix = 1u32 << width;
        let reflected: Vec<u32> = list.iter().rev().map(|v| v | prefix).collect();
        list.extend(reflected);
    }
    list
}

/// The binary reflected Gray code on `n` bits, starting at the zero word.
pub fn reflected_gray(n: usize) -> Result<GrayOrdering> {
    if !(1..=MAX_GRAY_BITS).contains(&n) {
        return Err(FccError::arg(format!(
            "Gray code width must be in 1..={MAX_GRAY_BITS}, got {n}"
        )));
    }
    let sequence = reflected_values(n)
        .into_iter()
        .map(|v| BitVector::from_u64(v as u64, n))
        .collect();
    Ok(GrayOrdering { n, sequence })
}
