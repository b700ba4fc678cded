//! Backends registered by name and built at runtime.

use std::sync::Arc;

use crate::codes::{BackendKind, CodeBackend, CodeParams, EvenOddBackend, GrdpBackend, RsBackend};
use crate::error::{Error, Result};
use crate::gf2m::FieldTable;
use crate::ring::{next_prime, RingParams};

/// Default coefficient lane width for the array codes.
pub const DEFAULT_LANE_BYTES: usize = 8;

/// What a factory needs to build a backend: the code geometry and the
/// optional algebra overrides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub k: usize,
    pub r: usize,
    /// `m` for RS, `p` for the array codes.
    pub algebra_param: Option<usize>,
    pub lane_bytes: Option<usize>,
}

pub type Factory = fn(&CodeSpec) -> Result<Box<dyn CodeBackend>>;

#[derive(Clone, Copy, Debug)]
pub struct BackendEntry {
    pub name: &'static str,
    pub kind: BackendKind,
    pub build: Factory,
}

#[derive(Clone, Debug)]
pub struct Registry {
    entries: Vec<BackendEntry>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Registry { entries: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        for entry in [
            BackendEntry { name: "rs", kind: BackendKind::ReedSolomon, build: build_rs },
            BackendEntry { name: "evenodd", kind: BackendKind::EvenOdd, build: build_evenodd },
            BackendEntry { name: "grdp", kind: BackendKind::Grdp, build: build_grdp },
        ] {
            reg.register(entry).expect("builtin names are distinct");
        }
        reg
    }

    pub fn register(&mut self, entry: BackendEntry) -> Result<()> {
        if self.entries.iter().any(|e| e.name == entry.name) {
            return Err(Error::BadConfig(format!("backend {:?} already registered", entry.name)));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name)
    }

    pub fn by_name(&self, name: &str) -> Result<&BackendEntry> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownBackend(name.to_string()))
    }

    /// First entry of the given family; used when reading artifacts.
    pub fn by_kind(&self, kind: BackendKind) -> Result<&BackendEntry> {
        self.entries.iter().find(|e| e.kind == kind).ok_or_else(|| Error::UnknownBackend(kind.name().to_string()))
    }

    pub fn build(&self, name: &str, spec: &CodeSpec) -> Result<Box<dyn CodeBackend>> {
        (self.by_name(name)?.build)(spec)
    }
}

/// Smallest `m >= 8` whose field holds `k` distinct nonzero points.
pub fn default_field_bits(k: usize) -> usize {
    (8..=16).find(|&m| k < 1 << m).unwrap_or(16)
}

pub fn default_evenodd_prime(k: usize) -> usize {
    if k <= 13 {
        13
    } else {
        next_prime(k)
    }
}

fn reject_lane_bytes(spec: &CodeSpec) -> Result<()> {
    match spec.lane_bytes {
        Some(_) => Err(Error::BadConfig("lane width applies to array codes only".into())),
        None => Ok(()),
    }
}

fn build_rs(spec: &CodeSpec) -> Result<Box<dyn CodeBackend>> {
    reject_lane_bytes(spec)?;
    let m = spec.algebra_param.unwrap_or_else(|| default_field_bits(spec.k));
    if !(2..=16).contains(&m) {
        return Err(Error::BadDegree(m as u32));
    }
    let field = Arc::new(FieldTable::with_default_poly(m as u32)?);
    Ok(Box::new(RsBackend::new(CodeParams::rs(field, spec.k, spec.r)?)?))
}

fn build_evenodd(spec: &CodeSpec) -> Result<Box<dyn CodeBackend>> {
    let p = spec.algebra_param.unwrap_or_else(|| default_evenodd_prime(spec.k));
    let rp = RingParams::new(p, spec.lane_bytes.unwrap_or(DEFAULT_LANE_BYTES))?;
    Ok(Box::new(EvenOddBackend::new(CodeParams::evenodd(rp, spec.k, spec.r)?)?))
}

fn build_grdp(spec: &CodeSpec) -> Result<Box<dyn CodeBackend>> {
    let p = spec.algebra_param.unwrap_or(spec.k);
    if p != spec.k {
        return Err(Error::BadConfig(format!("GRDP needs p = participants + 1 = {}, got p = {p}", spec.k)));
    }
    let rp = RingParams::new(p, spec.lane_bytes.unwrap_or(DEFAULT_LANE_BYTES))?;
    Ok(Box::new(GrdpBackend::new(CodeParams::grdp(rp, spec.r)?)?))
}
