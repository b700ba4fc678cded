use std::fmt;
use std::sync::Arc;

use crate::codes::grdp::{encode_grdp, GrdpDecoder};
use crate::codes::{locator_of, parities_of, secret_from, syndromes_of, Algebra, BackendKind, CodeParams, LocatorPoly};
use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldTable};
use crate::ring::{RingElement, RingParams};

/// A code family seen through wire-format symbols.
///
/// Symbols are `symbol_bytes()` long. Per chunk, `encode` takes the secret
/// symbol and `random_symbols()` fresh random symbols and writes the
/// `participants()` share symbols followed by the public parity symbols.
pub trait CodeBackend: Send + Sync + fmt::Debug {
    fn params(&self) -> &CodeParams;

    fn kind(&self) -> BackendKind {
        self.params().kind()
    }

    fn symbol_bytes(&self) -> usize {
        self.params().symbol_bytes()
    }

    fn symbol_bits(&self) -> usize {
        self.params().symbol_bits()
    }

    fn participants(&self) -> usize {
        self.params().participants()
    }

    fn public_parity_count(&self) -> usize {
        self.params().public_parity_count()
    }

    fn random_symbols(&self) -> usize;

    /// Clears bits of a raw random symbol that do not belong to the symbol.
    fn mask_random(&self, _symbol: &mut [u8]) {}

    /// `out` holds `participants() + public_parity_count()` symbols.
    fn encode(&self, secret: &[u8], random: &[u8], out: &mut [u8]) -> Result<()>;

    /// Prepares recovery from exactly `threshold()` participants.
    fn plan_recovery(&self, present: &[usize]) -> Result<Box<dyn RecoveryPlan>>;
}

pub trait RecoveryPlan: Send + Sync {
    fn present(&self) -> &[usize];

    /// `shares` follow [`Self::present`]; writes the secret symbol to `out`.
    fn recover(&self, shares: &[&[u8]], parities: &[&[u8]], out: &mut [u8]) -> Result<()>;
}

/// Builds the backend matching `cp`.
pub fn backend_for(cp: &CodeParams) -> Box<dyn CodeBackend> {
    match (cp.kind(), cp.algebra()) {
        (BackendKind::ReedSolomon, Algebra::Field(f)) => Box::new(RsBackend::from_parts(cp.clone(), f.clone())),
        (BackendKind::EvenOdd, Algebra::Ring(rp)) => Box::new(EvenOddBackend { cp: cp.clone(), rp: *rp }),
        (BackendKind::Grdp, Algebra::Ring(rp)) => Box::new(GrdpBackend { cp: cp.clone(), rp: *rp }),
        _ => unreachable!("CodeParams constructors pair kinds with algebras"),
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::WrongLength { expected, actual })
    }
}

#[derive(Debug)]
pub struct RsBackend {
    cp: CodeParams,
    field: Arc<FieldTable>,
}

impl RsBackend {
    pub fn new(cp: CodeParams) -> Result<Self> {
        match cp.algebra() {
            Algebra::Field(f) if cp.kind() == BackendKind::ReedSolomon => {
                let f = f.clone();
                Ok(Self::from_parts(cp, f))
            }
            _ => Err(Error::ParamMismatch("not a Reed-Solomon code".into())),
        }
    }

    fn from_parts(cp: CodeParams, field: Arc<FieldTable>) -> Self {
        RsBackend { cp, field }
    }

    fn read(&self, bytes: &[u8]) -> Result<FieldElement> {
        let v = match bytes {
            [b] => *b as u16,
            [lo, hi] => u16::from_le_bytes([*lo, *hi]),
            _ => return Err(Error::WrongLength { expected: self.symbol_bytes(), actual: bytes.len() }),
        };
        self.field.element(v)
    }

    fn write(&self, e: FieldElement, out: &mut [u8]) {
        let le = e.0.to_le_bytes();
        out.copy_from_slice(&le[..out.len()]);
    }
}

impl CodeBackend for RsBackend {
    fn params(&self) -> &CodeParams {
        &self.cp
    }

    fn random_symbols(&self) -> usize {
        self.cp.k() - 1
    }

    fn mask_random(&self, symbol: &mut [u8]) {
        let v = match symbol {
            [b] => *b as u16,
            [lo, hi] => u16::from_le_bytes([*lo, *hi]),
            _ => return,
        };
        let masked = v & (self.field.q() - 1) as u16;
        self.write(FieldElement(masked), symbol);
    }

    fn encode(&self, secret: &[u8], random: &[u8], out: &mut [u8]) -> Result<()> {
        let sb = self.symbol_bytes();
        let k = self.cp.k();
        check_len(sb, secret.len())?;
        check_len((k - 1) * sb, random.len())?;
        check_len((k - 1 + self.cp.r()) * sb, out.len())?;
        let mut data = Vec::with_capacity(k);
        data.push(self.read(secret)?);
        for sym in random.chunks_exact(sb) {
            data.push(self.read(sym)?);
        }
        out[..random.len()].copy_from_slice(random);
        for (u, p) in parities_of(&*self.field, self.cp.r(), &data).into_iter().enumerate() {
            let at = (k - 1 + u) * sb;
            self.write(p, &mut out[at..at + sb]);
        }
        Ok(())
    }

    fn plan_recovery(&self, present: &[usize]) -> Result<Box<dyn RecoveryPlan>> {
        let erased = self.cp.erased_nonsecret(present)?;
        let locator = locator_of(&*self.field, &erased);
        Ok(Box::new(RsPlan {
            backend: RsBackend { cp: self.cp.clone(), field: self.field.clone() },
            present: present.to_vec(),
            locator,
        }))
    }
}

struct RsPlan {
    backend: RsBackend,
    present: Vec<usize>,
    locator: LocatorPoly<FieldElement>,
}

impl RecoveryPlan for RsPlan {
    fn present(&self) -> &[usize] {
        &self.present
    }

    fn recover(&self, shares: &[&[u8]], parities: &[&[u8]], out: &mut [u8]) -> Result<()> {
        let b = &self.backend;
        check_len(self.present.len(), shares.len())?;
        check_len(b.cp.r(), parities.len())?;
        let view = self.present.iter().zip(shares).map(|(&i, s)| Ok((i, b.read(s)?))).collect::<Result<Vec<_>>>()?;
        let parities = parities.iter().map(|p| b.read(p)).collect::<Result<Vec<_>>>()?;
        let s = syndromes_of(&*b.field, &view, &parities);
        let secret = secret_from(&*b.field, &s, &self.locator)?;
        b.write(secret, out);
        Ok(())
    }
}

#[derive(Debug)]
pub struct EvenOddBackend {
    cp: CodeParams,
    rp: RingParams,
}

impl EvenOddBackend {
    pub fn new(cp: CodeParams) -> Result<Self> {
        match (cp.kind(), cp.ring()) {
            (BackendKind::EvenOdd, Some(rp)) => Ok(EvenOddBackend { cp, rp }),
            _ => Err(Error::ParamMismatch("not an EVENODD code".into())),
        }
    }
}

impl CodeBackend for EvenOddBackend {
    fn params(&self) -> &CodeParams {
        &self.cp
    }

    fn random_symbols(&self) -> usize {
        self.cp.k() - 1
    }

    fn encode(&self, secret: &[u8], random: &[u8], out: &mut [u8]) -> Result<()> {
        let sb = self.symbol_bytes();
        let k = self.cp.k();
        check_len((k - 1) * sb, random.len())?;
        check_len((k - 1 + self.cp.r()) * sb, out.len())?;
        let mut data = Vec::with_capacity(k);
        data.push(self.rp.from_column(secret)?);
        for sym in random.chunks_exact(sb) {
            data.push(self.rp.from_column(sym)?);
        }
        out[..random.len()].copy_from_slice(random);
        for (u, p) in parities_of(&self.rp, self.cp.r(), &data).iter().enumerate() {
            let at = (k - 1 + u) * sb;
            out[at..at + sb].copy_from_slice(&self.rp.to_column(p));
        }
        Ok(())
    }

    fn plan_recovery(&self, present: &[usize]) -> Result<Box<dyn RecoveryPlan>> {
        let erased = self.cp.erased_nonsecret(present)?;
        Ok(Box::new(EvenOddPlan {
            cp: self.cp.clone(),
            rp: self.rp,
            present: present.to_vec(),
            locator: locator_of(&self.rp, &erased),
        }))
    }
}

struct EvenOddPlan {
    cp: CodeParams,
    rp: RingParams,
    present: Vec<usize>,
    locator: LocatorPoly<RingElement>,
}

impl RecoveryPlan for EvenOddPlan {
    fn present(&self) -> &[usize] {
        &self.present
    }

    fn recover(&self, shares: &[&[u8]], parities: &[&[u8]], out: &mut [u8]) -> Result<()> {
        check_len(self.present.len(), shares.len())?;
        check_len(self.cp.r(), parities.len())?;
        let view = self
            .present
            .iter()
            .zip(shares)
            .map(|(&i, s)| Ok((i, self.rp.from_column(s)?)))
            .collect::<Result<Vec<_>>>()?;
        let parities = parities.iter().map(|p| self.rp.from_column(p)).collect::<Result<Vec<_>>>()?;
        let s = syndromes_of(&self.rp, &view, &parities);
        let secret = secret_from(&self.rp, &s, &self.locator)?;
        out.copy_from_slice(&self.rp.to_column(&secret));
        Ok(())
    }
}

#[derive(Debug)]
pub struct GrdpBackend {
    cp: CodeParams,
    rp: RingParams,
}

impl GrdpBackend {
    pub fn new(cp: CodeParams) -> Result<Self> {
        match (cp.kind(), cp.ring()) {
            (BackendKind::Grdp, Some(rp)) => Ok(GrdpBackend { cp, rp }),
            _ => Err(Error::ParamMismatch("not a GRDP code".into())),
        }
    }
}

impl CodeBackend for GrdpBackend {
    fn params(&self) -> &CodeParams {
        &self.cp
    }

    /// The last share is the horizontal parity, so one fewer random symbol.
    fn random_symbols(&self) -> usize {
        self.rp.p() - 2
    }

    fn encode(&self, secret: &[u8], random: &[u8], out: &mut [u8]) -> Result<()> {
        let sb = self.symbol_bytes();
        let p = self.rp.p();
        check_len((p - 2) * sb, random.len())?;
        check_len((p - 1 + self.cp.r() - 1) * sb, out.len())?;
        let mut data = Vec::with_capacity(p - 1);
        data.push(self.rp.from_column(secret)?);
        for sym in random.chunks_exact(sb) {
            data.push(self.rp.from_column(sym)?);
        }
        let enc = encode_grdp(&self.cp, &data)?;
        out[..random.len()].copy_from_slice(random);
        let mut at = random.len();
        for col in std::iter::once(&enc.horizontal).chain(&enc.slopes) {
            out[at..at + sb].copy_from_slice(&self.rp.to_column(col));
            at += sb;
        }
        Ok(())
    }

    fn plan_recovery(&self, present: &[usize]) -> Result<Box<dyn RecoveryPlan>> {
        Ok(Box::new(GrdpPlan { present: present.to_vec(), rp: self.rp, decoder: GrdpDecoder::new(&self.cp, present)? }))
    }
}

struct GrdpPlan {
    present: Vec<usize>,
    rp: RingParams,
    decoder: GrdpDecoder,
}

impl RecoveryPlan for GrdpPlan {
    fn present(&self) -> &[usize] {
        &self.present
    }

    fn recover(&self, shares: &[&[u8]], parities: &[&[u8]], out: &mut [u8]) -> Result<()> {
        check_len(self.present.len(), shares.len())?;
        // the decoder wants columns in ascending position order
        let mut view: Vec<(usize, &[u8])> = self.present.iter().copied().zip(shares.iter().copied()).collect();
        view.sort_by_key(|(i, _)| *i);
        let columns = view.iter().map(|(_, s)| self.rp.from_column(s)).collect::<Result<Vec<_>>>()?;
        let slopes = parities.iter().map(|p| self.rp.from_column(p)).collect::<Result<Vec<_>>>()?;
        let recovered = self.decoder.recover(&columns, &slopes)?;
        out.copy_from_slice(&self.rp.to_column(&recovered[0]));
        Ok(())
    }
}
