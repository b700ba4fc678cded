//! Dealing a byte string into share artifacts and reconstructing it.

pub mod chunk;
pub mod format;
pub mod randomness;

use rayon::prelude::*;

use crate::codes::CodeBackend;
use crate::error::{Error, Result};
use crate::registry::{CodeSpec, Registry};

pub use format::{Header, PublicParities, Share};
pub use randomness::{FixedRandomness, Randomness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeConfig {
    /// `n = k - 1` share holders.
    pub participants: usize,
    /// `t = k - r` shares recover the secret.
    pub threshold: usize,
    pub backend: String,
    /// `m` for RS, `p` for the array codes; backend default when absent.
    pub algebra_param: Option<usize>,
    pub lane_bytes: Option<usize>,
}

impl SchemeConfig {
    pub fn new(backend: &str, participants: usize, threshold: usize) -> Self {
        SchemeConfig { participants, threshold, backend: backend.to_string(), algebra_param: None, lane_bytes: None }
    }

    pub fn with_param(mut self, param: usize) -> Self {
        self.algebra_param = Some(param);
        self
    }

    pub fn with_lane_bytes(mut self, lane_bytes: usize) -> Self {
        self.lane_bytes = Some(lane_bytes);
        self
    }

    pub fn code_spec(&self) -> Result<CodeSpec> {
        if self.threshold == 0 || self.threshold > self.participants {
            return Err(Error::BadConfig(format!(
                "threshold must be in 1..={}, got {}",
                self.participants, self.threshold
            )));
        }
        let k = self.participants + 1;
        Ok(CodeSpec { k, r: k - self.threshold, algebra_param: self.algebra_param, lane_bytes: self.lane_bytes })
    }

    pub fn backend(&self, registry: &Registry) -> Result<Box<dyn CodeBackend>> {
        let backend = registry.build(&self.backend, &self.code_spec()?)?;
        if backend.participants() != self.participants {
            return Err(Error::BadConfig(format!(
                "backend {} serves {} participants, not {}",
                self.backend,
                backend.participants(),
                self.participants
            )));
        }
        Ok(backend)
    }
}

/// Everything a deal produces: one share per participant and the public
/// parity file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Package {
    pub shares: Vec<Share>,
    pub public: PublicParities,
}

/// Deals `secret` with the built-in backends.
pub fn deal(cfg: &SchemeConfig, secret: &[u8], rng: &mut dyn Randomness) -> Result<Package> {
    deal_with(&Registry::builtin(), cfg, secret, rng)
}

/// Splits `secret` into symbols, draws fresh random symbols for every chunk
/// (in chunk order, one `fill` per symbol) and encodes the chunks in
/// parallel.
pub fn deal_with(registry: &Registry, cfg: &SchemeConfig, secret: &[u8], rng: &mut dyn Randomness) -> Result<Package> {
    let backend = cfg.backend(registry)?;
    let cp = backend.params();
    let sb = backend.symbol_bytes();
    let symbols = chunk::to_symbols(cp, secret);
    let chunks = symbols.len() / sb;
    let header = Header::for_backend(&*backend, chunks, secret.len())?;

    let per_chunk_random = backend.random_symbols() * sb;
    let mut random = vec![0u8; chunks * per_chunk_random];
    for sym in random.chunks_exact_mut(sb) {
        rng.fill(sym)?;
        backend.mask_random(sym);
    }

    let participants = backend.participants();
    let parities = backend.public_parity_count();
    let width = (participants + parities) * sb;
    let mut encoded = vec![0u8; chunks * width];
    if chunks > 0 {
        encoded
            .par_chunks_exact_mut(width)
            .zip(symbols.par_chunks_exact(sb))
            .zip(random.par_chunks_exact(per_chunk_random.max(1)))
            .try_for_each(|((out, secret), random)| backend.encode(secret, &random[..per_chunk_random], out))?;
    }

    let column = |j: usize| -> Vec<u8> {
        let mut stream = Vec::with_capacity(chunks * sb);
        for chunk in encoded.chunks_exact(width) {
            stream.extend_from_slice(&chunk[j * sb..(j + 1) * sb]);
        }
        stream
    };
    let shares = (0..participants).map(|j| Share::new(header, (j + 1) as u16, column(j))).collect();
    let public = PublicParities::new(header, (participants..participants + parities).map(column).collect());
    Ok(Package { shares, public })
}

/// Reconstructs with the built-in backends.
pub fn reconstruct(shares: &[Share], public: &PublicParities) -> Result<Vec<u8>> {
    reconstruct_with(&Registry::builtin(), shares, public).map(|(secret, _)| secret)
}

/// Returns the secret and the participant indices actually used: the
/// `threshold` lowest of those supplied.
pub fn reconstruct_with(registry: &Registry, shares: &[Share], public: &PublicParities) -> Result<(Vec<u8>, Vec<u16>)> {
    let header = public.header;
    let backend = header.backend(registry)?;
    let threshold = backend.params().threshold();
    check_crc(header.payload_crc32, public.crc())?;
    let sb = backend.symbol_bytes();
    let chunks = header.chunk_count as usize;
    if public.streams.len() != backend.public_parity_count() || public.streams.iter().any(|s| s.len() != chunks * sb) {
        return Err(Error::Truncated);
    }

    let mut chosen: Vec<&Share> = Vec::with_capacity(shares.len());
    for share in shares {
        if !share.header.same_package(&header) {
            return Err(Error::HeaderMismatch);
        }
        if share.index == 0 || share.index as usize > backend.participants() {
            return Err(Error::OutOfRange { position: share.index as usize, limit: backend.participants() + 1 });
        }
        if chosen.iter().any(|s| s.index == share.index) {
            return Err(Error::DuplicateShare(share.index));
        }
        if share.payload.len() != chunks * sb {
            return Err(Error::Truncated);
        }
        check_crc(share.header.payload_crc32, crc32fast::hash(&share.payload))?;
        chosen.push(share);
    }
    if chosen.len() < threshold {
        return Err(Error::NotEnoughShares { threshold, got: chosen.len() });
    }
    chosen.sort_by_key(|s| s.index);
    chosen.truncate(threshold);
    let used: Vec<u16> = chosen.iter().map(|s| s.index).collect();
    let present: Vec<usize> = used.iter().map(|&i| i as usize).collect();
    let plan = backend.plan_recovery(&present)?;

    let mut symbols = vec![0u8; chunks * sb];
    symbols.par_chunks_exact_mut(sb.max(1)).enumerate().try_for_each(|(c, out)| {
        let at = c * sb..(c + 1) * sb;
        let view: Vec<&[u8]> = chosen.iter().map(|s| &s.payload[at.clone()]).collect();
        let parities: Vec<&[u8]> = public.streams.iter().map(|s| &s[at.clone()]).collect();
        plan.recover(&view, &parities, out)
    })?;
    let len = usize::try_from(header.secret_len).map_err(|_| Error::Truncated)?;
    Ok((chunk::from_symbols(backend.params(), &symbols, len), used))
}

fn check_crc(stored: u32, computed: u32) -> Result<()> {
    if stored == computed {
        Ok(())
    } else {
        Err(Error::CrcMismatch { stored, computed })
    }
}
