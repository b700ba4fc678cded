//! Arithmetic in GF(2)[x] / M_p(x), M_p(x) = 1 + x + ... + x^(p-1).
//!
//! An element is stored as `p` lanes, lane `i` holding the coefficient of
//! `alpha^i`. Each lane is `lane_bytes` wide and every bit position of a lane
//! is an independent bit-plane, so one operation acts on `8 * lane_bytes`
//! ring elements at once. Since `alpha^p = 1`, multiplying by `alpha^j` is a
//! rotation of the lanes. The normalized representative has lane `p - 1`
//! all-zero (the zero row of the array picture).
//!
//! Nothing in here touches a lookup table: only XOR, AND, rotation and
//! copies.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime that is at least `n`.
pub fn next_prime(n: usize) -> usize {
    (n.max(2)..).find(|&c| is_prime(c)).expect("primes are unbounded")
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u8], src: &[u8]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingParams {
    p: usize,
    lane_bytes: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    data: Vec<u8>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(")?;
        for (i, b) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

impl RingElement {
    /// Raw lane storage, `p * lane_bytes` bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }
}

impl RingParams {
    pub fn new(p: usize, lane_bytes: usize) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if lane_bytes == 0 {
            return Err(Error::BadConfig("lane width must be at least one byte".into()));
        }
        Ok(RingParams { p, lane_bytes })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn lane_bytes(&self) -> usize {
        self.lane_bytes
    }

    /// Bytes of a column on the wire: `p - 1` lanes, the zero lane omitted.
    pub fn column_bytes(&self) -> usize {
        (self.p - 1) * self.lane_bytes
    }

    fn element_bytes(&self) -> usize {
        self.p * self.lane_bytes
    }

    #[inline]
    pub fn lane<'a>(&self, a: &'a RingElement, i: usize) -> &'a [u8] {
        &a.data[i * self.lane_bytes..(i + 1) * self.lane_bytes]
    }

    pub fn zero(&self) -> RingElement {
        RingElement { data: vec![0; self.element_bytes()] }
    }

    /// Sum of `alpha^e` over `exponents`, with every bit-plane set.
    pub fn scalar(&self, exponents: &[usize]) -> RingElement {
        let mut raw = vec![0u8; self.element_bytes()];
        for &e in exponents {
            let i = e % self.p;
            for b in &mut raw[i * self.lane_bytes..(i + 1) * self.lane_bytes] {
                *b ^= 0xFF;
            }
        }
        self.normalize_vec(raw)
    }

    pub fn one(&self) -> RingElement {
        self.scalar(&[0])
    }

    pub fn alpha_pow(&self, e: usize) -> RingElement {
        self.scalar(&[e])
    }

    /// Builds an element from its `p - 1` stored lanes (wire layout).
    pub fn from_column(&self, column: &[u8]) -> Result<RingElement> {
        if column.len() != self.column_bytes() {
            return Err(Error::WrongLength { expected: self.column_bytes(), actual: column.len() });
        }
        let mut data = Vec::with_capacity(self.element_bytes());
        data.extend_from_slice(column);
        data.resize(self.element_bytes(), 0);
        Ok(RingElement { data })
    }

    /// The `p - 1` stored lanes of a normalized element.
    pub fn to_column(&self, a: &RingElement) -> Vec<u8> {
        debug_assert!(self.lane(a, self.p - 1).iter().all(|&b| b == 0));
        a.data[..self.column_bytes()].to_vec()
    }

    /// Reduces a raw `p`-lane vector to the representative with lane `p - 1`
    /// zero, by XORing lane `p - 1` into every lane.
    pub fn normalize(&self, raw: &[u8]) -> Result<RingElement> {
        if raw.len() != self.element_bytes() {
            return Err(Error::WrongLength { expected: self.element_bytes(), actual: raw.len() });
        }
        Ok(self.normalize_vec(raw.to_vec()))
    }

    fn normalize_vec(&self, mut data: Vec<u8>) -> RingElement {
        let w = self.lane_bytes;
        let (body, top) = data.split_at_mut((self.p - 1) * w);
        if top.iter().any(|&b| b != 0) {
            for lane in body.chunks_exact_mut(w) {
                xor_into(lane, top);
            }
            top.fill(0);
        }
        RingElement { data }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut c = a.clone();
        self.add_assign(&mut c, b);
        c
    }

    pub fn add_assign(&self, acc: &mut RingElement, b: &RingElement) {
        xor_into(&mut acc.data, &b.data);
    }

    /// Rotates the lanes by `j` without normalizing: lane `(i + j) mod p` of
    /// the result is lane `i` of `a`.
    pub fn rotate_raw(&self, a: &RingElement, j: usize) -> Vec<u8> {
        let w = self.lane_bytes;
        let shift = (j % self.p) * w;
        let mut out = vec![0u8; self.element_bytes()];
        let n = out.len();
        out[shift..].copy_from_slice(&a.data[..n - shift]);
        out[..shift].copy_from_slice(&a.data[n - shift..]);
        out
    }

    /// `alpha^j * a`.
    pub fn mul_monomial(&self, a: &RingElement, j: usize) -> RingElement {
        self.normalize_vec(self.rotate_raw(a, j))
    }

    /// Lane-wise (bit-sliced) product: every bit-plane of the result is the
    /// product of the corresponding bit-planes of `a` and `b`.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let (p, w) = (self.p, self.lane_bytes);
        let mut out = vec![0u8; self.element_bytes()];
        for j in 0..p {
            let bj = self.lane(b, j);
            if bj.iter().all(|&x| x == 0) {
                continue;
            }
            for i in 0..p {
                let ai = self.lane(a, i);
                let t = (i + j) % p;
                for ((o, x), y) in out[t * w..(t + 1) * w].iter_mut().zip(ai).zip(bj) {
                    *o ^= x & y;
                }
            }
        }
        self.normalize_vec(out)
    }

    /// Solves `(1 + alpha^j) x = y` by the lane-parallel recursion
    /// `x[<-uj-1>] = x[<-(u-1)j-1>] ^ yhat[<-(u-1)j-1>]` for `u = 1..p-1`,
    /// seeded with `x[p-1] = 0`, where `yhat[i] = y[i] ^ (XOR of all lanes of y)`.
    pub fn div_one_plus_alpha_j(&self, y: &RingElement, j: usize) -> Result<RingElement> {
        let (p, w) = (self.p, self.lane_bytes);
        if j.is_multiple_of(p) {
            return Err(Error::BadShift(j));
        }
        let j = j % p;
        let y = self.normalize_vec(y.data.clone());
        let mut total = vec![0u8; w];
        for lane in y.data.chunks_exact(w) {
            xor_into(&mut total, lane);
        }
        let mut x = vec![0u8; self.element_bytes()];
        let mut prev = p - 1;
        for _ in 1..p {
            let next = (prev + p - j) % p;
            for b in 0..w {
                x[next * w + b] = x[prev * w + b] ^ y.data[prev * w + b] ^ total[b];
            }
            prev = next;
        }
        Ok(self.normalize_vec(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p5() -> RingParams {
        RingParams::new(5, 1).unwrap()
    }

    fn bits(rp: &RingParams, v: &[u8]) -> RingElement {
        rp.from_column(v).unwrap()
    }

    /// Reduction of a GF(2) polynomial (bit list, ascending) modulo M_p by
    /// schoolbook long division.
    fn long_div_mod_mp(p: usize, poly: &[u8]) -> Vec<u8> {
        let mut r = poly.to_vec();
        r.resize(r.len().max(p), 0);
        for deg in (p - 1..r.len()).rev() {
            if r[deg] == 1 {
                for k in 0..p {
                    r[deg - (p - 1) + k] ^= 1;
                }
            }
        }
        r.truncate(p - 1);
        r
    }

    #[test]
    fn rejects_non_primes() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert!(RingParams::new(p, 1).is_err());
        }
        assert!(RingParams::new(7, 0).is_err());
        assert_eq!(next_prime(8), 11);
        assert_eq!(next_prime(13), 13);
    }

    #[test]
    fn normalize_examples() {
        let rp = p5();
        assert!(rp.normalize(&[1, 1, 1, 1, 1]).unwrap().is_zero());
        assert!(rp.normalize(&[0; 5]).unwrap().is_zero());
        let r = rp.normalize(&[1, 0, 1, 0, 1]).unwrap();
        assert_eq!(rp.to_column(&r), long_div_mod_mp(5, &[1, 0, 1, 0, 1]));
        assert_eq!(rp.to_column(&r), vec![0, 1, 0, 1]);
        assert_eq!(rp.normalize(&[0; 4]), Err(Error::WrongLength { expected: 5, actual: 4 }));
    }

    #[test]
    fn monomial_examples() {
        let rp = p5();
        let a4 = bits(&rp, &[1, 1, 1, 1]); // alpha^4 = 1 + a + a^2 + a^3
        assert_eq!(rp.mul_monomial(&a4, 1), bits(&rp, &[1, 0, 0, 0]));
        let a3 = bits(&rp, &[0, 0, 0, 1]);
        assert_eq!(rp.mul_monomial(&a3, 8), bits(&rp, &[0, 1, 0, 0]));
        assert_eq!(rp.mul_monomial(&a3, 0), a3);
    }

    #[test]
    fn mul_examples() {
        let rp = p5();
        let lhs = rp.mul(&bits(&rp, &[1, 1, 0, 0]), &bits(&rp, &[0, 1, 1, 0]));
        assert_eq!(lhs, bits(&rp, &[0, 1, 0, 1]));
        let d0 = bits(&rp, &[1, 0, 1, 1]);
        assert!(rp.mul(&d0, &rp.zero()).is_zero());
        assert_eq!(rp.mul(&bits(&rp, &[1, 0, 0, 1]), &d0), bits(&rp, &[0, 1, 1, 0]));
    }

    #[test]
    fn mul_agrees_with_polynomial_oracle() {
        let rp = RingParams::new(7, 1).unwrap();
        for a in 0u32..64 {
            for b in 0u32..64 {
                let av: Vec<u8> = (0..6).map(|i| (a >> i & 1) as u8).collect();
                let bv: Vec<u8> = (0..6).map(|i| (b >> i & 1) as u8).collect();
                let mut prod = vec![0u8; 11];
                for i in 0..6 {
                    for j in 0..6 {
                        prod[i + j] ^= av[i] & bv[j];
                    }
                }
                let got = rp.mul(&bits(&rp, &av), &bits(&rp, &bv));
                assert_eq!(rp.to_column(&got), long_div_mod_mp(7, &prod));
            }
        }
    }

    #[test]
    fn division_examples() {
        let rp = p5();
        let x = rp.div_one_plus_alpha_j(&bits(&rp, &[0, 1, 0, 1]), 1).unwrap();
        assert_eq!(x, bits(&rp, &[0, 1, 1, 0]));
        let d0 = rp.div_one_plus_alpha_j(&x, 3).unwrap();
        assert_eq!(d0, bits(&rp, &[1, 0, 1, 1]));
        assert!(rp.div_one_plus_alpha_j(&rp.zero(), 2).unwrap().is_zero());
        assert_eq!(rp.div_one_plus_alpha_j(&d0, 5), Err(Error::BadShift(5)));
    }

    #[test]
    fn division_round_trip_exhaustive_p5() {
        let rp = p5();
        for v in 0u8..16 {
            let col: Vec<u8> = (0..4).map(|i| v >> i & 1).collect();
            let x = bits(&rp, &col);
            for j in 1..5 {
                let y = rp.mul(&rp.add(&rp.one(), &rp.alpha_pow(j)), &x);
                assert_eq!(rp.div_one_plus_alpha_j(&y, j).unwrap(), x);
            }
        }
    }

    fn element(p: usize, w: usize) -> impl Strategy<Value = (RingParams, RingElement)> {
        proptest::collection::vec(any::<u8>(), (p - 1) * w).prop_map(move |col| {
            let rp = RingParams::new(p, w).unwrap();
            let e = rp.from_column(&col).unwrap();
            (rp, e)
        })
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication((rp, x) in prop_oneof![element(7, 3), element(11, 2), element(13, 8)], j in 1usize..13) {
            let j = 1 + (j - 1) % (rp.p() - 1);
            let y = rp.mul(&rp.add(&rp.one(), &rp.alpha_pow(j)), &x);
            prop_assert_eq!(rp.div_one_plus_alpha_j(&y, j).unwrap(), x);
        }

        #[test]
        fn rotations_cancel((rp, x) in element(11, 4), j in 0usize..11) {
            let there = rp.mul_monomial(&x, j);
            prop_assert_eq!(rp.mul_monomial(&there, rp.p() - j), x.clone());
            prop_assert_eq!(there, rp.mul(&x, &rp.alpha_pow(j)));
        }

        #[test]
        fn normalize_is_idempotent_and_linear(a in proptest::collection::vec(any::<u8>(), 14), b in proptest::collection::vec(any::<u8>(), 14)) {
            let rp = RingParams::new(7, 2).unwrap();
            let na = rp.normalize(&a).unwrap();
            prop_assert_eq!(rp.normalize(na.as_bytes()).unwrap(), na.clone());
            let nb = rp.normalize(&b).unwrap();
            let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            prop_assert_eq!(rp.add(&na, &nb), rp.normalize(&sum).unwrap());
        }
    }
}
