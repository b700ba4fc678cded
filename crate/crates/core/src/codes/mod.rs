//! Parity encoding and secret recovery for the three code families.
//!
//! Reed-Solomon and generalized EVENODD share one driver: the public
//! parities are the syndromes `P_u = sum_j alpha^(u j) D_j` of the data, and
//! the secret (data position 0) is recovered from `k - r` surviving data
//! symbols through the erasure locator of the other `r - 1` erased positions.
//! Only the final division differs between the field and the ring. GRDP has
//! its own encoder and a linear-solve decoder in [`grdp`].

mod backend;
pub mod grdp;

use std::fmt;
use std::sync::Arc;

pub use backend::{backend_for, CodeBackend, EvenOddBackend, GrdpBackend, RecoveryPlan, RsBackend};

use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldTable};
use crate::ring::{RingElement, RingParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendKind {
    ReedSolomon,
    EvenOdd,
    Grdp,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::ReedSolomon, BackendKind::EvenOdd, BackendKind::Grdp];

    /// Identifier used in the package header.
    pub fn id(self) -> u8 {
        match self {
            BackendKind::ReedSolomon => 0,
            BackendKind::EvenOdd => 1,
            BackendKind::Grdp => 2,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.id() == id).ok_or(Error::BadBackend(id))
    }

    pub fn name(self) -> &'static str {
        match self {
            BackendKind::ReedSolomon => "rs",
            BackendKind::EvenOdd => "evenodd",
            BackendKind::Grdp => "grdp",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Field(Arc<FieldTable>),
    Ring(RingParams),
}

/// Geometry of one code: `k` data symbols (the secret at position 0 plus
/// `k - 1` participant symbols) and `r` erasures to be corrected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    kind: BackendKind,
    k: usize,
    r: usize,
    algebra: Algebra,
}

impl CodeParams {
    pub fn rs(field: Arc<FieldTable>, k: usize, r: usize) -> Result<Self> {
        check_kr(k, r)?;
        if k > field.order() {
            return Err(Error::ParamMismatch(format!(
                "k = {k} exceeds q - 1 = {} for GF(2^{})",
                field.order(),
                field.m()
            )));
        }
        Ok(CodeParams { kind: BackendKind::ReedSolomon, k, r, algebra: Algebra::Field(field) })
    }

    pub fn evenodd(ring: RingParams, k: usize, r: usize) -> Result<Self> {
        check_kr(k, r)?;
        if k > ring.p() {
            return Err(Error::ParamMismatch(format!("k = {k} exceeds p = {}", ring.p())));
        }
        Ok(CodeParams { kind: BackendKind::EvenOdd, k, r, algebra: Algebra::Ring(ring) })
    }

    /// GRDP always has `k = p`: columns `0..p-2` are data and column `p - 1`
    /// is the horizontal parity, which is distributed like a data symbol.
    pub fn grdp(ring: RingParams, r: usize) -> Result<Self> {
        let k = ring.p();
        check_kr(k, r)?;
        Ok(CodeParams { kind: BackendKind::Grdp, k, r, algebra: Algebra::Ring(ring) })
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Option<&FieldTable> {
        match &self.algebra {
            Algebra::Field(f) => Some(f),
            Algebra::Ring(_) => None,
        }
    }

    pub fn ring(&self) -> Option<RingParams> {
        match &self.algebra {
            Algebra::Ring(rp) => Some(*rp),
            Algebra::Field(_) => None,
        }
    }

    /// Number of share-holding participants, `k - 1`.
    pub fn participants(&self) -> usize {
        self.k - 1
    }

    /// Minimum number of participants that recover the secret, `k - r`.
    pub fn threshold(&self) -> usize {
        self.k - self.r
    }

    /// Public parity symbols: `r`, except GRDP whose horizontal parity is a
    /// share, leaving `r - 1` slope parities.
    pub fn public_parity_count(&self) -> usize {
        match self.kind {
            BackendKind::Grdp => self.r - 1,
            _ => self.r,
        }
    }

    /// Information bits carried by one symbol.
    pub fn symbol_bits(&self) -> usize {
        match &self.algebra {
            Algebra::Field(f) => f.m() as usize,
            Algebra::Ring(rp) => rp.column_bytes() * 8,
        }
    }

    /// Bytes of one symbol on the wire.
    pub fn symbol_bytes(&self) -> usize {
        self.symbol_bits().div_ceil(8)
    }

    /// Header encoding of the algebra: `m` for RS, `p` for the array codes.
    pub fn algebra_param(&self) -> usize {
        match &self.algebra {
            Algebra::Field(f) => f.m() as usize,
            Algebra::Ring(rp) => rp.p(),
        }
    }

    pub fn lane_bytes(&self) -> usize {
        self.ring().map_or(0, |rp| rp.lane_bytes())
    }

    /// Erased non-secret positions left over when `present` responds.
    pub fn erased_nonsecret(&self, present: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.k];
        for &pos in present {
            if pos == 0 || pos >= self.k {
                return Err(Error::OutOfRange { position: pos, limit: self.k });
            }
            if std::mem::replace(&mut seen[pos], true) {
                return Err(Error::DuplicatePosition(pos));
            }
        }
        if present.len() != self.threshold() {
            return Err(Error::ParamMismatch(format!(
                "recovery needs exactly {} present positions, got {}",
                self.threshold(),
                present.len()
            )));
        }
        Ok((1..self.k).filter(|&i| !seen[i]).collect())
    }
}

fn check_kr(k: usize, r: usize) -> Result<()> {
    if r == 0 || r >= k {
        return Err(Error::ParamMismatch(format!("need 1 <= r < k, got k = {k}, r = {r}")));
    }
    Ok(())
}

/// The symbol algebra a code works over: GF(2^m) or the ring mod `M_p`.
pub trait SymbolAlgebra: Sync {
    type Elem: Symbol<Algebra = Self>;

    fn from_params(cp: &CodeParams) -> Result<&Self>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn alpha_pow(&self, e: usize) -> Self::Elem;
    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul_alpha_pow(&self, a: &Self::Elem, e: usize) -> Self::Elem;
    /// Divides by `G(1) = prod (1 + alpha^i)` over the locator's positions.
    fn divide_by_locator(&self, numerator: Self::Elem, loc: &LocatorPoly<Self::Elem>) -> Result<Self::Elem>;
}

pub trait Symbol: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Algebra: SymbolAlgebra<Elem = Self>;
}

impl Symbol for FieldElement {
    type Algebra = FieldTable;
}

impl Symbol for RingElement {
    type Algebra = RingParams;
}

impl SymbolAlgebra for FieldTable {
    type Elem = FieldElement;

    fn from_params(cp: &CodeParams) -> Result<&Self> {
        match &cp.algebra {
            Algebra::Field(f) => Ok(f),
            Algebra::Ring(_) => Err(Error::ParamMismatch(format!("{} code has no field", cp.kind))),
        }
    }

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn alpha_pow(&self, e: usize) -> FieldElement {
        FieldTable::alpha_pow(self, e)
    }

    fn add_assign(&self, acc: &mut FieldElement, x: &FieldElement) {
        *acc += *x;
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldTable::mul(self, *a, *b)
    }

    fn mul_alpha_pow(&self, a: &FieldElement, e: usize) -> FieldElement {
        FieldTable::mul_alpha_pow(self, *a, e)
    }

    fn divide_by_locator(&self, numerator: FieldElement, loc: &LocatorPoly<FieldElement>) -> Result<FieldElement> {
        let denom = loc.at_one(self);
        if denom.is_zero() {
            return Err(Error::InternalDegenerate);
        }
        Ok(FieldTable::mul(self, numerator, self.inv(denom)?))
    }
}

impl SymbolAlgebra for RingParams {
    type Elem = RingElement;

    fn from_params(cp: &CodeParams) -> Result<&Self> {
        match &cp.algebra {
            Algebra::Ring(rp) => Ok(rp),
            Algebra::Field(_) => Err(Error::ParamMismatch(format!("{} code has no ring", cp.kind))),
        }
    }

    fn zero(&self) -> RingElement {
        RingParams::zero(self)
    }

    fn one(&self) -> RingElement {
        RingParams::one(self)
    }

    fn alpha_pow(&self, e: usize) -> RingElement {
        RingParams::alpha_pow(self, e)
    }

    fn add_assign(&self, acc: &mut RingElement, x: &RingElement) {
        RingParams::add_assign(self, acc, x);
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingParams::mul(self, a, b)
    }

    fn mul_alpha_pow(&self, a: &RingElement, e: usize) -> RingElement {
        self.mul_monomial(a, e)
    }

    /// `G(1)` is generally not invertible in the ring, so peel off one
    /// `(1 + alpha^i)` factor at a time.
    fn divide_by_locator(&self, numerator: RingElement, loc: &LocatorPoly<RingElement>) -> Result<RingElement> {
        loc.erased.iter().try_fold(numerator, |acc, &i| self.div_one_plus_alpha_j(&acc, i))
    }
}

/// `S_0 .. S_(r-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeVector<E> {
    pub s: Vec<E>,
}

/// `G(x) = prod_s (x + alpha^(i_s)) = g_(r-1) + g_(r-2) x + ... + g_0 x^(r-1)`.
///
/// `coeffs[u]` is `g_u`, so `coeffs[0] = 1` is the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocatorPoly<E> {
    pub coeffs: Vec<E>,
    pub erased: Vec<usize>,
}

impl<E: Symbol> LocatorPoly<E> {
    pub fn g(&self, u: usize) -> &E {
        &self.coeffs[u]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation starting from the leading coefficient.
    pub fn evaluate(&self, alg: &E::Algebra, x: &E) -> E {
        let mut acc = self.coeffs[0].clone();
        for g in &self.coeffs[1..] {
            acc = alg.mul(&acc, x);
            alg.add_assign(&mut acc, g);
        }
        acc
    }

    /// `G(1)`, the sum of the coefficients.
    pub fn at_one(&self, alg: &E::Algebra) -> E {
        let mut acc = alg.zero();
        for g in &self.coeffs {
            alg.add_assign(&mut acc, g);
        }
        acc
    }
}

/// `P_u = sum_j alpha^(u j) D_j` for `u = 0..r-1`. Each parity depends on the
/// data only.
pub fn parities_of<A: SymbolAlgebra>(alg: &A, r: usize, data: &[A::Elem]) -> Vec<A::Elem> {
    (0..r).map(|u| parity_of(alg, u, data)).collect()
}

pub fn parity_of<A: SymbolAlgebra>(alg: &A, u: usize, data: &[A::Elem]) -> A::Elem {
    let mut acc = alg.zero();
    for (j, d) in data.iter().enumerate() {
        alg.add_assign(&mut acc, &alg.mul_alpha_pow(d, u * j));
    }
    acc
}

/// `S_u = sum_v alpha^(u j_v) D_(j_v) + P_u` over the present positions.
pub fn syndromes_of<A: SymbolAlgebra>(
    alg: &A,
    present: &[(usize, A::Elem)],
    parities: &[A::Elem],
) -> SyndromeVector<A::Elem> {
    let s = parities
        .iter()
        .enumerate()
        .map(|(u, p)| {
            let mut acc = p.clone();
            for (j, d) in present {
                alg.add_assign(&mut acc, &alg.mul_alpha_pow(d, u * j));
            }
            acc
        })
        .collect();
    SyndromeVector { s }
}

pub fn locator_of<A: SymbolAlgebra>(alg: &A, erased: &[usize]) -> LocatorPoly<A::Elem> {
    // ascending powers while multiplying out, then reversed into g_u order
    let mut asc = vec![alg.one()];
    for &i in erased {
        let root = alg.alpha_pow(i);
        let mut next = vec![alg.zero(); asc.len() + 1];
        for (d, c) in asc.iter().enumerate() {
            alg.add_assign(&mut next[d + 1], c);
            alg.add_assign(&mut next[d], &alg.mul(c, &root));
        }
        asc = next;
    }
    asc.reverse();
    LocatorPoly { coeffs: asc, erased: erased.to_vec() }
}

/// `D_0 = (sum_u S_u g_(r-u-1)) / G(1)`.
pub fn secret_from<A: SymbolAlgebra>(
    alg: &A,
    syndromes: &SyndromeVector<A::Elem>,
    loc: &LocatorPoly<A::Elem>,
) -> Result<A::Elem> {
    alg.divide_by_locator(numerator_of(alg, syndromes, loc), loc)
}

pub fn numerator_of<A: SymbolAlgebra>(
    alg: &A,
    syndromes: &SyndromeVector<A::Elem>,
    loc: &LocatorPoly<A::Elem>,
) -> A::Elem {
    let r = syndromes.s.len();
    let mut acc = alg.zero();
    for (u, s) in syndromes.s.iter().enumerate() {
        alg.add_assign(&mut acc, &alg.mul(s, loc.g(r - u - 1)));
    }
    acc
}

fn check_syndrome_code(cp: &CodeParams) -> Result<()> {
    match (cp.kind, &cp.algebra) {
        (BackendKind::ReedSolomon, Algebra::Field(_)) | (BackendKind::EvenOdd, Algebra::Ring(_)) => Ok(()),
        _ => Err(Error::ParamMismatch(format!("{} does not use syndrome recovery", cp.kind))),
    }
}

/// Public parities of `k` data symbols (RS or EVENODD).
pub fn encode_parities<E: Symbol>(cp: &CodeParams, data: &[E]) -> Result<Vec<E>> {
    check_syndrome_code(cp)?;
    let alg = E::Algebra::from_params(cp)?;
    if data.len() != cp.k {
        return Err(Error::ParamMismatch(format!("expected {} data symbols, got {}", cp.k, data.len())));
    }
    Ok(parities_of(alg, cp.r, data))
}

/// Syndromes of a view of `k - r` participants plus the public parities.
pub fn compute_syndromes<E: Symbol>(
    cp: &CodeParams,
    present: &[(usize, E)],
    parities: &[E],
) -> Result<SyndromeVector<E>> {
    check_syndrome_code(cp)?;
    let alg = E::Algebra::from_params(cp)?;
    let positions: Vec<usize> = present.iter().map(|(i, _)| *i).collect();
    cp.erased_nonsecret(&positions)?;
    if parities.len() != cp.r {
        return Err(Error::ParamMismatch(format!("expected {} parities, got {}", cp.r, parities.len())));
    }
    Ok(syndromes_of(alg, present, parities))
}

/// Locator of the `r - 1` erased non-secret positions.
pub fn erasure_locator<E: Symbol>(cp: &CodeParams, erased: &[usize]) -> Result<LocatorPoly<E>> {
    let alg = E::Algebra::from_params(cp)?;
    let mut sorted = erased.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicatePosition(w[0]));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i == 0 || i >= cp.k) {
        return Err(Error::OutOfRange { position: bad, limit: cp.k });
    }
    if sorted.len() != cp.r - 1 {
        return Err(Error::ParamMismatch(format!("locator needs {} erased positions, got {}", cp.r - 1, sorted.len())));
    }
    Ok(locator_of(alg, &sorted))
}

/// Recovers the secret `D_0` from syndromes and the erasure locator.
pub fn recover_secret<E: Symbol>(cp: &CodeParams, s: &SyndromeVector<E>, loc: &LocatorPoly<E>) -> Result<E> {
    check_syndrome_code(cp)?;
    let alg = E::Algebra::from_params(cp)?;
    if s.s.len() != cp.r || loc.coeffs.len() != cp.r {
        return Err(Error::ParamMismatch("syndrome or locator length differs from r".into()));
    }
    secret_from(alg, s, loc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Arc<FieldTable> {
        Arc::new(FieldTable::new(3, 0b1011).unwrap())
    }

    fn a(f: &FieldTable, e: usize) -> FieldElement {
        f.alpha_pow(e)
    }

    fn gf8_vector() -> (CodeParams, Vec<FieldElement>) {
        let f = gf8();
        let z = FieldElement::ZERO;
        let data = vec![a(&f, 2), a(&f, 3), a(&f, 1), a(&f, 0), z, a(&f, 6), a(&f, 3)];
        (CodeParams::rs(f, 7, 4).unwrap(), data)
    }

    #[test]
    fn rs_example_parities() {
        let (cp, data) = gf8_vector();
        let f = cp.field().unwrap();
        let parities = encode_parities(&cp, &data).unwrap();
        assert_eq!(parities, vec![a(f, 1), FieldElement::ZERO, a(f, 5), a(f, 2)]);
    }

    #[test]
    fn zero_data_zero_parities() {
        let (cp, _) = gf8_vector();
        assert!(encode_parities(&cp, &[FieldElement::ZERO; 7]).unwrap().iter().all(|p| p.is_zero()));
        let rp = RingParams::new(5, 2).unwrap();
        let cp = CodeParams::evenodd(rp, 5, 3).unwrap();
        let zeros = vec![rp.zero(); 5];
        assert!(encode_parities(&cp, &zeros).unwrap().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn rs_parities_match_vandermonde_product() {
        let f = Arc::new(FieldTable::with_default_poly(4).unwrap());
        let cp = CodeParams::rs(f.clone(), 5, 3).unwrap();
        let data: Vec<FieldElement> = [9u16, 0, 15, 4, 7].map(FieldElement).to_vec();
        // H[u][j] = alpha^(u j) built by repeated multiplication
        let alpha = FieldElement(2);
        let mut expected = Vec::new();
        for u in 0..3 {
            let mut row_gen = FieldElement::ONE;
            for _ in 0..u {
                row_gen = f.mul(row_gen, alpha);
            }
            let mut h = FieldElement::ONE;
            let mut acc = FieldElement::ZERO;
            for d in &data {
                acc += f.mul(h, *d);
                h = f.mul(h, row_gen);
            }
            expected.push(acc);
        }
        assert_eq!(encode_parities(&cp, &data).unwrap(), expected);
    }

    #[test]
    fn rs_example_syndromes_and_recovery() {
        let (cp, data) = gf8_vector();
        let f = cp.field().unwrap().clone();
        let parities = encode_parities(&cp, &data).unwrap();
        let present: Vec<_> = [2, 3, 5].iter().map(|&i| (i, data[i])).collect();
        let s = compute_syndromes(&cp, &present, &parities).unwrap();
        assert_eq!(s.s, vec![a(&f, 2), a(&f, 4), FieldElement::ONE, FieldElement::ZERO]);

        let loc = erasure_locator::<FieldElement>(&cp, &[1, 4, 6]).unwrap();
        // (g0, g1, g2, g3) = (1, 1, alpha^6, alpha^4)
        assert_eq!(loc.coeffs, vec![FieldElement::ONE, FieldElement::ONE, a(&f, 6), a(&f, 4)]);
        assert_eq!(numerator_of(&f, &s, &loc), a(&f, 5));
        assert_eq!(loc.at_one(&f), a(&f, 3));
        for &i in &[1, 4, 6] {
            assert!(loc.evaluate(&f, &a(&f, i)).is_zero());
        }
        assert_eq!(recover_secret(&cp, &s, &loc).unwrap(), a(&f, 2));
    }

    #[test]
    fn syndrome_identity_over_erased_set() {
        let (cp, data) = gf8_vector();
        let f = cp.field().unwrap();
        let parities = encode_parities(&cp, &data).unwrap();
        let present: Vec<_> = [2, 3, 5].iter().map(|&i| (i, data[i])).collect();
        let s = compute_syndromes(&cp, &present, &parities).unwrap();
        for u in 0..4 {
            let mut over_erased = FieldElement::ZERO;
            for i in [0, 1, 4, 6] {
                over_erased += f.mul_alpha_pow(data[i], u * i);
            }
            assert_eq!(s.s[u], over_erased);
        }
    }

    #[test]
    fn r_equals_one_is_plain_xor() {
        let f = gf8();
        let cp = CodeParams::rs(f.clone(), 4, 1).unwrap();
        let data = [5u16, 3, 6, 1].map(FieldElement).to_vec();
        let par = encode_parities(&cp, &data).unwrap();
        let present: Vec<_> = (1..4).map(|i| (i, data[i])).collect();
        let s = compute_syndromes(&cp, &present, &par).unwrap();
        assert_eq!(s.s[0], data[1] + data[2] + data[3] + par[0]);
        let loc = erasure_locator::<FieldElement>(&cp, &[]).unwrap();
        assert_eq!(loc.coeffs, vec![FieldElement::ONE]);
        assert_eq!(recover_secret(&cp, &s, &loc).unwrap(), s.s[0]);
        assert_eq!(s.s[0], data[0]);
    }

    /// Cramer's rule on the r x r system restricted to the erased columns.
    fn cramer_secret(f: &FieldTable, erased: &[usize], s: &[FieldElement]) -> FieldElement {
        fn det(f: &FieldTable, m: &[Vec<FieldElement>]) -> FieldElement {
            if m.len() == 1 {
                return m[0][0];
            }
            let mut acc = FieldElement::ZERO;
            for c in 0..m.len() {
                let minor: Vec<Vec<FieldElement>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                acc += f.mul(m[0][c], det(f, &minor));
            }
            acc
        }
        let r = erased.len();
        let h: Vec<Vec<FieldElement>> = (0..r).map(|u| erased.iter().map(|&i| f.alpha_pow(u * i)).collect()).collect();
        let mut num = h.clone();
        for u in 0..r {
            num[u][0] = s[u];
        }
        f.div(det(f, &num), det(f, &h)).unwrap()
    }

    #[test]
    fn rs_recovery_matches_cramer_gf16() {
        let f = Arc::new(FieldTable::with_default_poly(4).unwrap());
        let cp = CodeParams::rs(f.clone(), 6, 3).unwrap();
        let data = [11u16, 2, 14, 7, 0, 9].map(FieldElement).to_vec();
        let par = encode_parities(&cp, &data).unwrap();
        for present in [[1, 2, 3], [2, 4, 5], [1, 3, 5], [3, 4, 5]] {
            let view: Vec<_> = present.iter().map(|&i| (i, data[i])).collect();
            let s = compute_syndromes(&cp, &view, &par).unwrap();
            let erased = cp.erased_nonsecret(&present).unwrap();
            let loc = erasure_locator::<FieldElement>(&cp, &erased).unwrap();
            let got = recover_secret(&cp, &s, &loc).unwrap();
            let mut all_erased = vec![0];
            all_erased.extend(&erased);
            assert_eq!(got, cramer_secret(&f, &all_erased, &s.s));
            assert_eq!(got, data[0]);
        }
    }

    fn col(rp: &RingParams, bits: &[u8]) -> RingElement {
        rp.from_column(bits).unwrap()
    }

    fn evenodd_p5_vector() -> (CodeParams, RingParams, Vec<RingElement>) {
        let rp = RingParams::new(5, 1).unwrap();
        let data = vec![
            col(&rp, &[1, 0, 1, 1]),
            col(&rp, &[0, 0, 0, 1]),
            col(&rp, &[0, 1, 0, 0]),
            col(&rp, &[0, 1, 1, 1]),
            col(&rp, &[0, 0, 0, 1]),
        ];
        (CodeParams::evenodd(rp, 5, 3).unwrap(), rp, data)
    }

    #[test]
    fn evenodd_example_pipeline() {
        let (cp, rp, data) = evenodd_p5_vector();
        let par = encode_parities(&cp, &data).unwrap();
        assert_eq!(par, vec![col(&rp, &[1, 0, 0, 0]), col(&rp, &[0, 1, 0, 0]), col(&rp, &[0, 0, 1, 1])]);

        let view = vec![(2, data[2].clone()), (4, data[4].clone())];
        let s = compute_syndromes(&cp, &view, &par).unwrap();
        assert_eq!(s.s, vec![col(&rp, &[1, 1, 0, 1]), col(&rp, &[0, 1, 1, 1]), col(&rp, &[1, 1, 1, 1])]);

        let loc = erasure_locator::<RingElement>(&cp, &[1, 3]).unwrap();
        assert_eq!(loc.coeffs, vec![rp.one(), rp.scalar(&[1, 3]), rp.alpha_pow(4)]);

        let n = numerator_of(&rp, &s, &loc);
        assert_eq!(n, col(&rp, &[0, 1, 0, 1]));
        let x = rp.div_one_plus_alpha_j(&n, 1).unwrap();
        assert_eq!(x, col(&rp, &[0, 1, 1, 0]));
        assert_eq!(recover_secret(&cp, &s, &loc).unwrap(), col(&rp, &[1, 0, 1, 1]));
    }

    #[test]
    fn locator_errors() {
        let (cp, _) = gf8_vector();
        assert_eq!(erasure_locator::<FieldElement>(&cp, &[1, 1, 4]), Err(Error::DuplicatePosition(1)));
        assert_eq!(erasure_locator::<FieldElement>(&cp, &[1, 4, 7]), Err(Error::OutOfRange { position: 7, limit: 7 }));
        assert!(erasure_locator::<FieldElement>(&cp, &[1, 4]).is_err());
        assert!(erasure_locator::<RingElement>(&cp, &[1, 4, 6]).is_err());
    }

    #[test]
    fn syndrome_view_errors() {
        let (cp, data) = gf8_vector();
        let par = encode_parities(&cp, &data).unwrap();
        let dup = vec![(2, data[2]), (2, data[2]), (5, data[5])];
        assert_eq!(compute_syndromes(&cp, &dup, &par), Err(Error::DuplicatePosition(2)));
        let secret_present = vec![(0, data[0]), (2, data[2]), (5, data[5])];
        assert!(compute_syndromes(&cp, &secret_present, &par).is_err());
        let short = vec![(2, data[2]), (5, data[5])];
        assert!(compute_syndromes(&cp, &short, &par).is_err());
        assert!(compute_syndromes(&cp, &[(2, data[2]), (3, data[3]), (5, data[5])], &par[..3]).is_err());
    }

    #[test]
    fn params_validation() {
        let f = gf8();
        assert!(CodeParams::rs(f.clone(), 8, 2).is_err());
        assert!(CodeParams::rs(f.clone(), 4, 4).is_err());
        assert!(CodeParams::rs(f, 4, 0).is_err());
        let rp = RingParams::new(5, 1).unwrap();
        assert!(CodeParams::evenodd(rp, 6, 2).is_err());
        let g = CodeParams::grdp(rp, 3).unwrap();
        assert_eq!((g.k(), g.threshold(), g.public_parity_count()), (5, 2, 2));
    }
}
