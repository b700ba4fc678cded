use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mss_core::codes::BackendKind;
use mss_core::oracle::{secrecy_audit, Verdict};
use mss_core::registry::Registry;
use mss_core::scheme::format::{Header, HEADER_LEN, PUBLIC_INDEX};
use mss_core::scheme::randomness::{insecure_seeded, system};
use mss_core::scheme::{deal_with, reconstruct_with, PublicParities, Randomness, SchemeConfig, Share};
use mss_core::Error;
use tempfile::NamedTempFile;

use crate::{AuditArgs, CodeArgs, RecoverArgs, SplitArgs};

pub const INVALID_FLAGS: u8 = 2;
pub const IO: u8 = 3;
pub const CONFIG: u8 = 4;
pub const NOT_ENOUGH: u8 = 5;
pub const MIXED: u8 = 6;
pub const LEAKY: u8 = 7;
pub const TOO_LARGE: u8 = 8;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    fail(IO, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| io_fail(path, e))
}

/// Flag-level checks that need no I/O, then the scheme configuration.
fn config(code: &CodeArgs, registry: &Registry) -> Result<SchemeConfig, Failure> {
    if code.threshold == 0 || code.threshold > code.participants {
        return Err(fail(
            INVALID_FLAGS,
            format!("--threshold must be between 1 and --participants ({}), got {}", code.participants, code.threshold),
        ));
    }
    let kind = registry.by_name(&code.backend).map_err(|e| fail(INVALID_FLAGS, e.to_string()))?.kind;
    let param = match (kind, code.field_bits, code.prime) {
        (BackendKind::ReedSolomon, _, Some(_)) => return Err(fail(INVALID_FLAGS, "--prime applies to array backends")),
        (_, Some(_), _) if kind != BackendKind::ReedSolomon => {
            return Err(fail(INVALID_FLAGS, "--field-bits applies to the rs backend"))
        }
        (BackendKind::ReedSolomon, m, _) => m,
        (_, _, p) => p,
    };
    if kind == BackendKind::ReedSolomon && code.lane_bytes.is_some() {
        return Err(fail(INVALID_FLAGS, "--lane-bytes applies to array backends"));
    }
    Ok(SchemeConfig {
        participants: code.participants,
        threshold: code.threshold,
        backend: code.backend.clone(),
        algebra_param: param,
        lane_bytes: code.lane_bytes,
    })
}

fn parse_seed(hex_seed: &str) -> Result<[u8; 32], Failure> {
    let bytes = hex::decode(hex_seed).map_err(|e| fail(INVALID_FLAGS, format!("--seed: {e}")))?;
    if bytes.is_empty() || bytes.len() > 32 {
        return Err(fail(INVALID_FLAGS, "--seed must be 1 to 32 bytes of hex"));
    }
    let mut seed = [0u8; 32];
    seed[..bytes.len()].copy_from_slice(&bytes);
    Ok(seed)
}

/// Writes every file to a temporary sibling first and renames them only
/// once all writes succeeded.
fn write_all_atomically(files: &[(PathBuf, Vec<u8>)]) -> Result<(), Failure> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| io_fail(dir, e))?;
        tmp.write_all(bytes).and_then(|_| tmp.as_file().sync_all()).map_err(|e| io_fail(path, e))?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| io_fail(path, e.error))?;
    }
    Ok(())
}

pub fn split(args: SplitArgs) -> Result<(), Failure> {
    let registry = Registry::builtin();
    let cfg = config(&args.code, &registry)?;
    let seed = args.seed.as_deref().map(parse_seed).transpose()?;
    let backend = cfg.backend(&registry).map_err(|e| fail(CONFIG, e.to_string()))?;

    let secret = read(&args.input)?;
    let mut rng: Box<dyn Randomness> = match seed {
        Some(seed) => Box::new(insecure_seeded(seed)),
        None => Box::new(system()),
    };
    let pkg = deal_with(&registry, &cfg, &secret, &mut *rng).map_err(|e| match e {
        Error::RandomnessExhausted => fail(IO, e.to_string()),
        e => fail(CONFIG, e.to_string()),
    })?;

    fs::create_dir_all(&args.out_dir).map_err(|e| io_fail(&args.out_dir, e))?;
    let mut files: Vec<(PathBuf, Vec<u8>)> =
        pkg.shares.iter().map(|s| (args.out_dir.join(format!("share_{}.mss", s.index)), s.to_bytes())).collect();
    files.push((args.out_dir.join("public.mss"), pkg.public.to_bytes()));
    write_all_atomically(&files)?;

    let cp = backend.params();
    let h = pkg.public.header;
    println!(
        "backend {} ({} = {}), k = {}, r = {}, chunks = {}",
        cfg.backend,
        if cp.kind() == BackendKind::ReedSolomon { "m" } else { "p" },
        h.algebra_param,
        h.k,
        h.r,
        h.chunk_count
    );
    println!(
        "wrote {} shares and public.mss to {}; any {} shares recover the secret",
        pkg.shares.len(),
        args.out_dir.display(),
        cfg.threshold
    );
    if seed.is_some() {
        println!("warning: deterministic randomness, do not use these shares for real secrets");
    }
    Ok(())
}

fn parse_failure(path: &Path, e: Error) -> Failure {
    fail(IO, format!("{}: {e}", path.display()))
}

pub fn recover(args: RecoverArgs) -> Result<(), Failure> {
    let registry = Registry::builtin();
    let public_bytes = read(&args.public)?;
    let public = PublicParities::parse(&public_bytes, &registry).map_err(|e| parse_failure(&args.public, e))?;
    let mut shares = Vec::with_capacity(args.shares.len());
    for path in &args.shares {
        let bytes = read(path)?;
        shares.push(Share::parse(&bytes, &registry).map_err(|e| parse_failure(path, e))?);
    }
    let (secret, used) = reconstruct_with(&registry, &shares, &public).map_err(|e| match e {
        Error::NotEnoughShares { threshold, got } => {
            fail(NOT_ENOUGH, format!("threshold is {threshold} shares, only {got} supplied"))
        }
        Error::HeaderMismatch => fail(MIXED, "shares and public file come from different packages"),
        Error::DuplicateShare(i) => fail(INVALID_FLAGS, format!("share of participant {i} given twice")),
        e => fail(IO, e.to_string()),
    })?;
    write_all_atomically(&[(args.out.clone(), secret)])?;
    let used: Vec<String> = used.iter().map(u16::to_string).collect();
    println!("recovered {} from participants {}", args.out.display(), used.join(", "));
    Ok(())
}

pub fn inspect(path: &Path) -> Result<(), Failure> {
    let registry = Registry::builtin();
    let bytes = read(path)?;
    let header = Header::parse(&bytes).map_err(|e| parse_failure(path, e))?;
    let index = bytes.get(HEADER_LEN..HEADER_LEN + 2).map(|b| u16::from_le_bytes([b[0], b[1]]));
    let role = match index {
        Some(PUBLIC_INDEX) => "public parities".to_string(),
        Some(i) => format!("share of participant {i}"),
        None => "truncated".to_string(),
    };
    println!("file:        {}", path.display());
    println!("role:        {role}");
    println!("backend:     {}", header.kind.name());
    let param = if header.kind == BackendKind::ReedSolomon { "m" } else { "p" };
    println!("{param}:           {}", header.algebra_param);
    println!("k:           {}", header.k);
    println!("r:           {}", header.r);
    if header.kind != BackendKind::ReedSolomon {
        println!("lane bytes:  {}", header.lane_bytes);
    }
    println!("chunk_count: {}", header.chunk_count);
    println!("secret_len:  {}", header.secret_len);
    println!("crc32:       {:#010x}", header.payload_crc32);
    let checked = match index {
        Some(PUBLIC_INDEX) => PublicParities::parse(&bytes, &registry).map(|_| ()),
        _ => Share::parse(&bytes, &registry).map(|_| ()),
    };
    match checked {
        Ok(()) => {
            println!("CRC OK");
            Ok(())
        }
        Err(e @ Error::CrcMismatch { .. }) => {
            println!("CRC MISMATCH");
            Err(parse_failure(path, e))
        }
        Err(e) => Err(parse_failure(path, e)),
    }
}

pub fn audit(args: AuditArgs) -> Result<(), Failure> {
    let registry = Registry::builtin();
    let cfg = config(&args.code, &registry)?;
    if args.adversary.len() >= cfg.threshold {
        return Err(fail(
            INVALID_FLAGS,
            format!(
                "adversary of {} reaches the threshold {}; it must be smaller",
                args.adversary.len(),
                cfg.threshold
            ),
        ));
    }
    let backend = cfg.backend(&registry).map_err(|e| fail(CONFIG, e.to_string()))?;
    let report = secrecy_audit(backend.params(), &args.adversary).map_err(|e| match e {
        Error::TooLargeToEnumerate { .. } => fail(TOO_LARGE, e.to_string()),
        Error::OutOfRange { .. } | Error::DuplicatePosition(_) | Error::AdversaryTooLarge { .. } => {
            fail(INVALID_FLAGS, e.to_string())
        }
        e => fail(CONFIG, e.to_string()),
    })?;
    let cp = backend.params();
    println!("backend {}, k = {}, r = {}, adversary {:?}", cfg.backend, cp.k(), cp.r(), args.adversary);
    println!("secrets enumerated:  {}", report.per_secret_counts.len());
    println!("distinct views:      {}", report.adversary_view_count);
    match report.verdict {
        Verdict::PerfectlyUniform => {
            println!("verdict: PerfectlyUniform");
            Ok(())
        }
        Verdict::Leaky(deviation) => {
            println!("verdict: Leaky (max deviation {deviation})");
            Err(fail(LEAKY, "the coalition's view depends on the secret"))
        }
    }
}
