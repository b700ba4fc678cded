//! Exact counting of what a coalition below the threshold can observe.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::codes::{backend_for, CodeParams};
use crate::error::{Error, Result};
use crate::oracle::expand::{cell_bit, set_cell_bit, symbol_shape};

/// Enumeration budget in (secret, random tuple) states.
pub const MAX_STATES: u128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PerfectlyUniform,
    /// Largest spread, over all views, between the most and least frequent
    /// secret.
    Leaky(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecrecyReport {
    pub adversary_view_count: usize,
    /// Sorted view frequencies for each secret value.
    pub per_secret_counts: Vec<Vec<u64>>,
    pub verdict: Verdict,
}

fn symbol_from_bits(cp: &CodeParams, bits: u64) -> Vec<u8> {
    let (cells, _) = symbol_shape(cp);
    let mut sym = vec![0u8; cp.symbol_bytes()];
    for cell in 0..cells {
        if bits >> cell & 1 == 1 {
            set_cell_bit(cp, &mut sym, cell, 0);
        }
    }
    sym
}

/// Enumerates every secret and every random tuple (bit-plane 0 only for
/// array codes) and checks that the view of `adversary` plus all public
/// parities is distributed identically for every secret.
pub fn secrecy_audit(cp: &CodeParams, adversary: &[usize]) -> Result<SecrecyReport> {
    let backend = backend_for(cp);
    let participants = backend.participants();
    let limit = cp.threshold() - 1;
    let mut seen = BTreeSet::new();
    for &i in adversary {
        if i == 0 || i > participants {
            return Err(Error::OutOfRange { position: i, limit: participants + 1 });
        }
        if !seen.insert(i) {
            return Err(Error::DuplicatePosition(i));
        }
    }
    if adversary.len() > limit {
        return Err(Error::AdversaryTooLarge { size: adversary.len(), threshold: cp.threshold() });
    }

    let (cells, _) = symbol_shape(cp);
    let randoms = backend.random_symbols();
    let total_bits = cells as u128 * (1 + randoms) as u128;
    if total_bits >= 127 || 1u128 << total_bits > MAX_STATES {
        return Err(Error::TooLargeToEnumerate {
            states: if total_bits >= 127 { u128::MAX } else { 1u128 << total_bits },
        });
    }
    let secrets = 1u64 << cells;
    let tuples = 1u64 << (cells * randoms);
    let sb = cp.symbol_bytes();
    let observed: Vec<usize> =
        adversary.iter().map(|&i| i - 1).chain(participants..participants + backend.public_parity_count()).collect();
    let mask = (1u64 << cells) - 1;

    let per_secret: Vec<HashMap<Vec<u8>, u64>> = (0..secrets)
        .into_par_iter()
        .map(|s| {
            let secret = symbol_from_bits(cp, s);
            let mut random = vec![0u8; randoms * sb];
            let mut out = vec![0u8; (participants + backend.public_parity_count()) * sb];
            let mut counts = HashMap::new();
            for t in 0..tuples {
                for (i, chunk) in random.chunks_exact_mut(sb).enumerate() {
                    chunk.copy_from_slice(&symbol_from_bits(cp, t >> (i * cells) & mask));
                }
                backend.encode(&secret, &random, &mut out).expect("sizes fixed by the backend");
                let view: Vec<u8> = observed
                    .iter()
                    .flat_map(|&o| {
                        let sym = &out[o * sb..(o + 1) * sb];
                        (0..cells).map(move |c| cell_bit(cp, sym, c, 0) as u8)
                    })
                    .collect();
                *counts.entry(view).or_insert(0) += 1;
            }
            counts
        })
        .collect();

    let views: BTreeSet<&Vec<u8>> = per_secret.iter().flat_map(|m| m.keys()).collect();
    let mut deviation = 0;
    for v in &views {
        let counts = per_secret.iter().map(|m| m.get(*v).copied().unwrap_or(0));
        let (lo, hi) = counts.fold((u64::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        deviation = deviation.max(hi - lo);
    }
    let per_secret_counts = per_secret
        .iter()
        .map(|m| {
            let mut c: Vec<u64> = m.values().copied().collect();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(SecrecyReport {
        adversary_view_count: views.len(),
        per_secret_counts,
        verdict: if deviation == 0 { Verdict::PerfectlyUniform } else { Verdict::Leaky(deviation) },
    })
}
