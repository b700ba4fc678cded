//! Splitting a byte string into symbols and back.
//!
//! The secret is read as a little-endian bit stream and cut into
//! `symbol_bits`-bit symbols, each stored in `symbol_bytes` little-endian
//! bytes. The last symbol is zero-padded.

use crate::codes::CodeParams;

pub fn chunk_count(cp: &CodeParams, secret_len: usize) -> usize {
    (secret_len * 8).div_ceil(cp.symbol_bits())
}

fn bit(bytes: &[u8], i: usize) -> u64 {
    bytes.get(i / 8).map_or(0, |b| (b >> (i % 8) & 1) as u64)
}

pub fn to_symbols(cp: &CodeParams, secret: &[u8]) -> Vec<u8> {
    let bits = cp.symbol_bits();
    let sb = cp.symbol_bytes();
    let count = chunk_count(cp, secret.len());
    let mut out = vec![0u8; count * sb];
    if bits.is_multiple_of(8) {
        out[..secret.len()].copy_from_slice(secret);
        return out;
    }
    for (c, sym) in out.chunks_exact_mut(sb).enumerate() {
        let v: u64 = (0..bits).map(|b| bit(secret, c * bits + b) << b).sum();
        sym.copy_from_slice(&v.to_le_bytes()[..sb]);
    }
    out
}

pub fn from_symbols(cp: &CodeParams, symbols: &[u8], secret_len: usize) -> Vec<u8> {
    let bits = cp.symbol_bits();
    if bits.is_multiple_of(8) {
        return symbols[..secret_len].to_vec();
    }
    let mut out = vec![0u8; secret_len];
    for i in 0..secret_len * 8 {
        if bit(symbols, (i / bits) * cp.symbol_bytes() * 8 + i % bits) == 1 {
            out[i / 8] |= 1 << (i % 8);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::FieldTable;
    use crate::ring::RingParams;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn rs(m: u32) -> CodeParams {
        CodeParams::rs(Arc::new(FieldTable::with_default_poly(m).unwrap()), 3, 1).unwrap()
    }

    #[test]
    fn three_bit_symbols() {
        let cp = rs(3);
        // 0b1100_0100 -> 100, 000, 11
        assert_eq!(to_symbols(&cp, &[0xC4]), vec![4, 0, 3]);
        assert_eq!(from_symbols(&cp, &[4, 0, 3], 1), vec![0xC4]);
    }

    #[test]
    fn wide_symbols() {
        let cp = rs(12);
        assert_eq!(chunk_count(&cp, 3), 2);
        assert_eq!(to_symbols(&cp, &[0x34, 0x12, 0xAB]), vec![0x34, 0x02, 0xB1, 0x0A]);
        let cp = CodeParams::evenodd(RingParams::new(5, 2).unwrap(), 3, 1).unwrap();
        assert_eq!(to_symbols(&cp, &[1, 2, 3]), vec![1, 2, 3, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn empty() {
        assert!(to_symbols(&rs(5), &[]).is_empty());
        assert!(from_symbols(&rs(5), &[], 0).is_empty());
    }

    proptest! {
        #[test]
        fn round_trip(m in 2u32..=16, secret in proptest::collection::vec(any::<u8>(), 0..40)) {
            let cp = rs(m);
            let symbols = to_symbols(&cp, &secret);
            prop_assert_eq!(symbols.len(), chunk_count(&cp, secret.len()) * cp.symbol_bytes());
            let limit = 1u32 << m;
            for s in symbols.chunks(cp.symbol_bytes()) {
                let v = s.iter().rev().fold(0u32, |acc, &b| acc << 8 | b as u32);
                prop_assert!(v < limit);
            }
            prop_assert_eq!(from_symbols(&cp, &symbols, secret.len()), secret);
        }
    }
}
