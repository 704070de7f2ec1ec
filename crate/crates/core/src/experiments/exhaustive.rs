//! Exact `L4` norms of every Littlewood completion of `J_r`.
//!
//! Completions are visited in Gray-code order so that consecutive members
//! differ in a single coefficient; the autocorrelations are then updated in
//! `O(n)` per step instead of recomputed in `O(n^2)`. Results are reported in
//! terms of the lexicographic enumeration index (see
//! [`completion_at_index`]), with ties broken towards the smaller index.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::norms::autocorrelation_direct;
use crate::numbers::FactoredModulus;
use crate::sequences::{
    character_polynomial, completion_at_index, free_indices, rotate, Rotation, TernarySequence,
    MAX_ENUMERATION_PSI,
};

/// Number of leading enumeration bits split into independent work items.
const SPLIT_BITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveSummary {
    pub count: u64,
    /// Smallest `||J_r + V_r||_4^4` (largest merit factor) and its index.
    pub min_l4: i128,
    pub min_index: u64,
    /// Largest `||J_r + V_r||_4^4` (smallest merit factor) and its index.
    pub max_l4: i128,
    pub max_index: u64,
    /// Number of completions attaining each `L4` value.
    pub histogram: BTreeMap<i128, u64>,
}

impl ExhaustiveSummary {
    fn merge(mut self, other: ExhaustiveSummary) -> ExhaustiveSummary {
        self.count += other.count;
        if (other.min_l4, other.min_index) < (self.min_l4, self.min_index) {
            self.min_l4 = other.min_l4;
            self.min_index = other.min_index;
        }
        if other.max_l4 > self.max_l4
            || (other.max_l4 == self.max_l4 && other.max_index < self.max_index)
        {
            self.max_l4 = other.max_l4;
            self.max_index = other.max_index;
        }
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self
    }

    /// Completions whose `L4` norm is strictly larger than `l4`, i.e. whose
    /// merit factor is strictly smaller.
    pub fn count_worse_than(&self, l4: i128) -> u64 {
        use std::ops::Bound::{Excluded, Unbounded};
        self.histogram
            .range((Excluded(l4), Unbounded))
            .map(|(_, c)| c)
            .sum()
    }
}

/// Enumerate all `2^psi(n)` completions at rotation `rot`.
pub fn exhaustive_l4(m: &FactoredModulus, rot: Rotation) -> Result<ExhaustiveSummary> {
    let psi = m.psi() as usize;
    if psi as u64 > MAX_ENUMERATION_PSI {
        return Err(Error::EnumerationTooLarge {
            psi: psi as u64,
            limit: MAX_ENUMERATION_PSI,
        });
    }
    let n = m.len();
    let shift = rot.shift(n);
    let positions: Vec<usize> = free_indices(m)
        .iter()
        .map(|&j| (j as i64 - shift).rem_euclid(n as i64) as usize)
        .collect();
    let jr = rotate(&character_polynomial(m), rot);

    let split = SPLIT_BITS.min(psi);
    let low = psi - split;
    (0..1u64 << split)
        .into_par_iter()
        .map(|prefix| enumerate_block(&jr, &positions, prefix, low))
        .reduce_with(ExhaustiveSummary::merge)
        .ok_or_else(|| Error::Precondition("no completions to enumerate".into()))
}

/// All completions whose lexicographic index has the given top bits.
fn enumerate_block(
    jr: &TernarySequence,
    positions: &[usize],
    prefix: u64,
    low: usize,
) -> ExhaustiveSummary {
    let psi = positions.len();
    let n = jr.len();
    let base = prefix << low;

    let mut x: Vec<i64> = jr.coeffs().iter().map(|&c| i64::from(c)).collect();
    for (i, &p) in positions.iter().enumerate() {
        x[p] = if (base >> (psi - 1 - i)) & 1 == 1 {
            1
        } else {
            -1
        };
    }
    let start =
        TernarySequence::from_parts_unchecked(x.iter().map(|&v| v as i8).collect(), jr.kind());
    let mut c: Vec<i64> = autocorrelation_direct(&start).values().to_vec();
    let n2 = (n as i128) * (n as i128);
    let mut off: i64 = c[1..].iter().map(|v| v * v).sum();
    let l4 = |off: i64| n2 + 2 * off as i128;

    let first = l4(off);
    let mut summary = ExhaustiveSummary {
        count: 1,
        min_l4: first,
        min_index: base,
        max_l4: first,
        max_index: base,
        histogram: BTreeMap::from([(first, 1)]),
    };

    for t in 1..1u64 << low {
        let bit = t.trailing_zeros() as usize;
        let p = positions[psi - 1 - bit];
        let s2 = 2 * x[p];
        for (u, &xv) in x[p + 1..].iter().enumerate() {
            let cu = &mut c[u + 1];
            let new = *cu - s2 * xv;
            off += new * new - *cu * *cu;
            *cu = new;
        }
        for (u, &xv) in x[..p].iter().rev().enumerate() {
            let cu = &mut c[u + 1];
            let new = *cu - s2 * xv;
            off += new * new - *cu * *cu;
            *cu = new;
        }
        x[p] = -x[p];

        let index = base | (t ^ (t >> 1));
        let value = l4(off);
        summary.count += 1;
        if (value, index) < (summary.min_l4, summary.min_index) {
            summary.min_l4 = value;
            summary.min_index = index;
        }
        if value > summary.max_l4 || (value == summary.max_l4 && index < summary.max_index) {
            summary.max_l4 = value;
            summary.max_index = index;
        }
        *summary.histogram.entry(value).or_default() += 1;
    }
    summary
}

/// The completion `V` at a lexicographic index, for reporting.
pub fn completion_for_index(m: &FactoredModulus, index: u64) -> TernarySequence {
    completion_at_index(m, &free_indices(m), index)
}
