//! On-disk artifacts: a 30-byte header, then a share or the public parities.
//!
//! ```text
//! "MSS1" | version u8 | backend u8 | param u16 | k u16 | r u16 | lane_bytes u16
//!        | chunk_count u32 | secret_len u64 | payload_crc32 u32
//! ```
//!
//! A share file continues with its participant index (u16) and payload; the
//! parity file uses index 0xFFFF followed by the parity streams back to back.
//! All integers are little-endian. The CRC covers the payload only and guards
//! against accidental corruption, not tampering.

use crate::codes::{BackendKind, CodeBackend};
use crate::error::{Error, Result};
use crate::registry::{CodeSpec, Registry};
use crate::scheme::chunk;

pub const MAGIC: &[u8; 4] = b"MSS1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 30;
pub const PUBLIC_INDEX: u16 = 0xFFFF;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub kind: BackendKind,
    pub algebra_param: u16,
    pub k: u16,
    pub r: u16,
    pub lane_bytes: u16,
    pub chunk_count: u32,
    pub secret_len: u64,
    pub payload_crc32: u32,
}

impl Header {
    pub(crate) fn for_backend(backend: &dyn CodeBackend, chunk_count: usize, secret_len: usize) -> Result<Self> {
        let cp = backend.params();
        let narrow = |v: usize, what: &str| {
            u16::try_from(v).map_err(|_| Error::BadConfig(format!("{what} = {v} does not fit the header")))
        };
        Ok(Header {
            kind: cp.kind(),
            algebra_param: narrow(cp.algebra_param(), "algebra parameter")?,
            k: narrow(cp.k(), "k")?,
            r: narrow(cp.r(), "r")?,
            lane_bytes: narrow(cp.lane_bytes(), "lane width")?,
            chunk_count: u32::try_from(chunk_count)
                .map_err(|_| Error::BadConfig(format!("{chunk_count} chunks do not fit the header")))?,
            secret_len: secret_len as u64,
            payload_crc32: 0,
        })
    }

    /// Rebuilds the backend described by the header and checks that the
    /// chunk count matches the secret length.
    pub fn backend(&self, registry: &Registry) -> Result<Box<dyn CodeBackend>> {
        let spec = CodeSpec {
            k: self.k as usize,
            r: self.r as usize,
            algebra_param: Some(self.algebra_param as usize),
            lane_bytes: match self.kind {
                BackendKind::ReedSolomon if self.lane_bytes == 0 => None,
                _ => Some(self.lane_bytes as usize),
            },
        };
        let backend = (registry.by_kind(self.kind)?.build)(&spec)?;
        let len = usize::try_from(self.secret_len).map_err(|_| Error::Truncated)?;
        if chunk::chunk_count(backend.params(), len) != self.chunk_count as usize {
            return Err(Error::ParamMismatch(format!(
                "{} chunks cannot hold a {}-byte secret",
                self.chunk_count, self.secret_len
            )));
        }
        Ok(backend)
    }

    /// Equal in every field except the CRC.
    pub fn same_package(&self, other: &Header) -> bool {
        Header { payload_crc32: 0, ..*self } == Header { payload_crc32: 0, ..*other }
    }

    pub fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.kind.id());
        for v in [self.algebra_param, self.k, self.r, self.lane_bytes] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.extend_from_slice(&self.chunk_count.to_le_bytes());
        out.extend_from_slice(&self.secret_len.to_le_bytes());
        out.extend_from_slice(&self.payload_crc32.to_le_bytes());
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(if bytes.len() < 4 && MAGIC.starts_with(bytes) { Error::Truncated } else { Error::BadMagic });
        }
        if bytes.len() < 5 {
            return Err(Error::Truncated);
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::Truncated);
        }
        let u16_at = |i: usize| u16::from_le_bytes([bytes[i], bytes[i + 1]]);
        Ok(Header {
            kind: BackendKind::from_id(bytes[5])?,
            algebra_param: u16_at(6),
            k: u16_at(8),
            r: u16_at(10),
            lane_bytes: u16_at(12),
            chunk_count: u32::from_le_bytes(bytes[14..18].try_into().expect("4 bytes")),
            secret_len: u64::from_le_bytes(bytes[18..26].try_into().expect("8 bytes")),
            payload_crc32: u32::from_le_bytes(bytes[26..30].try_into().expect("4 bytes")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Share {
    pub header: Header,
    pub index: u16,
    pub payload: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicParities {
    pub header: Header,
    /// One stream per public parity, each `chunk_count` symbols long.
    pub streams: Vec<Vec<u8>>,
}

impl Share {
    /// Stamps the payload CRC into `header`.
    pub fn new(header: Header, index: u16, payload: Vec<u8>) -> Self {
        let header = Header { payload_crc32: crc32fast::hash(&payload), ..header };
        Share { header, index, payload }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 2 + self.payload.len());
        self.header.write(&mut out);
        out.extend_from_slice(&self.index.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn parse(bytes: &[u8], registry: &Registry) -> Result<Self> {
        let (header, index, payload) = split_artifact(bytes)?;
        if index == PUBLIC_INDEX {
            return Err(Error::ParamMismatch("this is the public parity file, not a share".into()));
        }
        let backend = header.backend(registry)?;
        check_payload(&header, payload, header.chunk_count as usize * backend.symbol_bytes())?;
        Ok(Share { header, index, payload: payload.to_vec() })
    }
}

impl PublicParities {
    pub fn new(header: Header, streams: Vec<Vec<u8>>) -> Self {
        let mut hasher = crc32fast::Hasher::new();
        streams.iter().for_each(|s| hasher.update(s));
        let header = Header { payload_crc32: hasher.finalize(), ..header };
        PublicParities { header, streams }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 2 + self.streams.iter().map(Vec::len).sum::<usize>());
        self.header.write(&mut out);
        out.extend_from_slice(&PUBLIC_INDEX.to_le_bytes());
        self.streams.iter().for_each(|s| out.extend_from_slice(s));
        out
    }

    pub fn parse(bytes: &[u8], registry: &Registry) -> Result<Self> {
        let (header, index, payload) = split_artifact(bytes)?;
        if index != PUBLIC_INDEX {
            return Err(Error::ParamMismatch(format!("this is the share of participant {index}, not the public file")));
        }
        let backend = header.backend(registry)?;
        let stream_len = header.chunk_count as usize * backend.symbol_bytes();
        let count = backend.public_parity_count();
        check_payload(&header, payload, stream_len * count)?;
        let streams = if stream_len == 0 {
            vec![Vec::new(); count]
        } else {
            payload.chunks(stream_len).map(<[u8]>::to_vec).collect()
        };
        Ok(PublicParities { header, streams })
    }

    pub(crate) fn crc(&self) -> u32 {
        let mut hasher = crc32fast::Hasher::new();
        self.streams.iter().for_each(|s| hasher.update(s));
        hasher.finalize()
    }
}

fn split_artifact(bytes: &[u8]) -> Result<(Header, u16, &[u8])> {
    let header = Header::parse(bytes)?;
    if bytes.len() < HEADER_LEN + 2 {
        return Err(Error::Truncated);
    }
    let index = u16::from_le_bytes([bytes[HEADER_LEN], bytes[HEADER_LEN + 1]]);
    Ok((header, index, &bytes[HEADER_LEN + 2..]))
}

fn check_payload(header: &Header, payload: &[u8], expected: usize) -> Result<()> {
    if payload.len() < expected {
        return Err(Error::Truncated);
    }
    if payload.len() > expected {
        return Err(Error::WrongLength { expected, actual: payload.len() });
    }
    let computed = crc32fast::hash(payload);
    if computed != header.payload_crc32 {
        return Err(Error::CrcMismatch { stored: header.payload_crc32, computed });
    }
    Ok(())
}
