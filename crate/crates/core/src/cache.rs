//! On-disk cache of enumerated orbits.
//!
//! Entries are keyed by sha256 of (algebra, labels, crate version) and
//! written atomically through a temp file in the cache directory.

use std::env;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::rootsys::{AlgebraData, AlgebraKind, Weight};
use crate::weyl::{orbit_with_cap, Orbit};

pub const CACHE_ENV: &str = "WEYLSUM_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".weylsum-cache";
const MAGIC: &[u8; 4] = b"WSOC";

#[derive(Debug, Clone)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        OrbitCache { dir: dir.into() }
    }

    /// `$WEYLSUM_CACHE`, else `.weylsum-cache/`.
    pub fn from_env() -> Self {
        let dir = env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        OrbitCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: AlgebraKind, labels: &[i64]) -> String {
        let mut h = Sha256::new();
        h.update(kind.to_string());
        h.update(b"|");
        h.update(crate::rootsys::join(labels));
        h.update(b"|");
        h.update(env!("CARGO_PKG_VERSION"));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path_for(&self, dominant: &Weight) -> PathBuf {
        self.dir
            .join(format!("{}.orbit", Self::key(dominant.algebra, &dominant.labels)))
    }

    pub fn load(&self, dominant: &Weight) -> Result<Option<Orbit>> {
        let path = self.path_for(dominant);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        decode(dominant.algebra, &bytes).map(Some)
    }

    pub fn store(&self, dominant: &Weight, orbit: &Orbit) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(dominant);
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&encode(orbit))?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(path)
    }

    /// Cached orbit, enumerating and storing it on a miss.
    pub fn orbit(&self, alg: &AlgebraData, dominant: &Weight, cap: u64) -> Result<Orbit> {
        if let Some(o) = self.load(dominant)? {
            return Ok(o);
        }
        let o = orbit_with_cap(alg, dominant, cap)?;
        self.store(dominant, &o)?;
        Ok(o)
    }
}

fn encode(orbit: &Orbit) -> Vec<u8> {
    let members = orbit.sorted();
    let rank = members.first().map_or(0, |w| w.labels.len());
    let mut out = Vec::with_capacity(13 + members.len() * rank * 4);
    out.extend_from_slice(MAGIC);
    out.push(rank as u8);
    out.extend_from_slice(&(members.len() as u64).to_le_bytes());
    for w in &members {
        for &l in &w.labels {
            out.extend_from_slice(&(l as i32).to_le_bytes());
        }
    }
    out
}

fn decode(kind: AlgebraKind, bytes: &[u8]) -> Result<Orbit> {
    let bad = |why: &str| Error::Io(format!("corrupt cache entry: {why}"));
    if bytes.len() < 13 || &bytes[..4] != MAGIC {
        return Err(bad("header"));
    }
    let rank = usize::from(bytes[4]);
    if rank != kind.rank() {
        return Err(bad("rank"));
    }
    let count = u64::from_le_bytes(bytes[5..13].try_into().unwrap()) as usize;
    let body = &bytes[13..];
    if body.len() != count * rank * 4 {
        return Err(bad("length"));
    }
    let weights = body.chunks_exact(rank * 4).map(|chunk| {
        chunk
            .chunks_exact(4)
            .map(|b| i64::from(i32::from_le_bytes(b.try_into().unwrap())))
            .collect()
    });
    Orbit::from_weights(kind, weights)
}
