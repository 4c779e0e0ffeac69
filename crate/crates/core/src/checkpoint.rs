//! Resumable direct orbit sums for orbits too large to finish in one sitting.
//!
//! The canonical orbit tree is cut into subtrees, grouped in fixed-size
//! blocks. Each finished block appends a (block index, partial sum) record to
//! the checkpoint file; a rerun with the same header skips those blocks.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic "WSCK" | version u32 | pair u8 | rank u8 | reserved u16
//! labels i64 × rank | prime u64 | seed u64 | subtrees u64 | block_size u64
//! total_blocks u64
//! then records: block u64 | partial u64
//! ```

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::branching::Pair;
use crate::charkit::{direct_context, DirectSum, ExponentMap};
use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::rootsys::{build_algebra, Weight};
use crate::schur::EvalContext;
use crate::weyl::partition_orbit;

const MAGIC: &[u8; 4] = b"WSCK";
const VERSION: u32 = 1;
const RECORD: usize = 16;
/// Default minimum number of subtrees the orbit is cut into.
pub const DEFAULT_SUBTREES: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub pair: Pair,
    pub labels: Vec<i64>,
    pub prime: u64,
    pub seed: u64,
    pub subtrees: u64,
    pub block_size: u64,
    pub total_blocks: u64,
}

fn pair_code(pair: Pair) -> u8 {
    match pair {
        Pair::E7A7 => 1,
        Pair::E8A8 => 2,
        Pair::An(n) => 16 + n,
    }
}

fn pair_from_code(code: u8) -> Result<Pair> {
    match code {
        1 => Ok(Pair::E7A7),
        2 => Ok(Pair::E8A8),
        c if c > 16 => Pair::an(usize::from(c - 16)),
        c => Err(Error::Checkpoint(format!("unknown pair code {c}"))),
    }
}

impl CheckpointHeader {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.push(pair_code(self.pair));
        out.push(self.labels.len() as u8);
        out.extend_from_slice(&0u16.to_le_bytes());
        for l in &self.labels {
            out.extend_from_slice(&l.to_le_bytes());
        }
        for v in [self.prime, self.seed, self.subtrees, self.block_size, self.total_blocks] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Parses a header from the start of `bytes`; returns it with its length.
    pub fn decode(bytes: &[u8]) -> Result<(Self, usize)> {
        let short = || Error::Checkpoint("truncated header".into());
        if bytes.len() < 12 || &bytes[..4] != MAGIC {
            return Err(Error::Checkpoint("not a checkpoint file".into()));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let pair = pair_from_code(bytes[8])?;
        let rank = usize::from(bytes[9]);
        let len = 12 + 8 * rank + 40;
        if bytes.len() < len {
            return Err(short());
        }
        let word = |k: usize| u64::from_le_bytes(bytes[k..k + 8].try_into().unwrap());
        let labels = (0..rank).map(|j| word(12 + 8 * j) as i64).collect();
        let base = 12 + 8 * rank;
        Ok((
            CheckpointHeader {
                pair,
                labels,
                prime: word(base),
                seed: word(base + 8),
                subtrees: word(base + 16),
                block_size: word(base + 24),
                total_blocks: word(base + 32),
            },
            len,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Progress {
    Complete(Fp),
    Partial { done: u64, total: u64 },
}

/// Run parameters; the orbit is cut into at least `subtrees` subtrees,
/// `block_size` of which make one checkpointed block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub subtrees: u64,
    pub block_size: u64,
    /// Stop after this many newly computed blocks.
    pub max_blocks: Option<u64>,
}

impl RunConfig {
    pub fn new(prime: u64, seed: u64) -> Self {
        RunConfig {
            prime,
            seed,
            subtrees: DEFAULT_SUBTREES,
            block_size: 64,
            max_blocks: None,
        }
    }
}

/// Direct alternating sum for `pair` at the seeded random context, resuming
/// from `path` if it holds a matching checkpoint.
pub fn direct_sum_checkpointed(
    pair: Pair,
    dominant: &Weight,
    config: RunConfig,
    path: &Path,
) -> Result<Progress> {
    let RunConfig {
        prime,
        seed,
        subtrees,
        block_size,
        max_blocks,
    } = config;
    if block_size == 0 {
        return Err(Error::Checkpoint("block size must be positive".into()));
    }
    if !dominant.is_strictly_dominant() {
        return Err(Error::NotStrictlyDominant(dominant.labels.clone()));
    }
    let alg = build_algebra(pair.source());
    alg.check_weight(dominant)?;
    let map = ExponentMap::for_pair(pair)?;
    let ctx = direct_context(pair, &EvalContext::random(pair.alphabet_size() - 1, seed, prime)?);
    let sum = DirectSum::new(&alg, &map, &ctx)?;
    let part = partition_orbit(&alg, dominant, subtrees as usize)?;
    let total_blocks = (part.roots.len() as u64).div_ceil(block_size);
    let header = CheckpointHeader {
        pair,
        labels: dominant.labels.clone(),
        prime,
        seed,
        subtrees,
        block_size,
        total_blocks,
    };

    let (mut file, mut done) = open(path, &header)?;
    let zero = ctx.values()[0].zero();
    let mut fresh = 0u64;
    for b in 0..total_blocks {
        if done.contains_key(&b) {
            continue;
        }
        if max_blocks.is_some_and(|m| fresh >= m) {
            return Ok(Progress::Partial {
                done: done.len() as u64,
                total: total_blocks,
            });
        }
        let lo = (b * block_size) as usize;
        let hi = (((b + 1) * block_size) as usize).min(part.roots.len());
        let partial = part.roots[lo..hi]
            .par_iter()
            .map(|(labels, depth)| sum.subtree(labels, *depth))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(zero, |acc, x| acc.add(&x));
        let mut rec = [0u8; RECORD];
        rec[..8].copy_from_slice(&b.to_le_bytes());
        rec[8..].copy_from_slice(&partial.value().to_le_bytes());
        file.write_all(&rec)?;
        file.sync_data()?;
        done.insert(b, partial.value());
        fresh += 1;
    }

    let mut total = zero;
    for (labels, depth) in &part.interior {
        total = total.add(&sum.node(labels, *depth));
    }
    for v in done.values() {
        total = total.add(&Fp::reduce(*v, prime));
    }
    Ok(Progress::Complete(total))
}

/// Opens or creates the checkpoint; returns the file positioned for appending
/// and the completed blocks.
fn open(path: &Path, header: &CheckpointHeader) -> Result<(File, BTreeMap<u64, u64>)> {
    if !path.exists() {
        let mut f = File::create(path)?;
        f.write_all(&header.encode())?;
        f.sync_data()?;
        return Ok((f, BTreeMap::new()));
    }
    let mut f = OpenOptions::new().read(true).write(true).open(path)?;
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes)?;
    let (found, start) = CheckpointHeader::decode(&bytes)?;
    if &found != header {
        return Err(Error::Checkpoint(format!(
            "{} was written for a different run",
            path.display()
        )));
    }
    let mut done = BTreeMap::new();
    let whole = (bytes.len() - start) / RECORD;
    for r in 0..whole {
        let at = start + r * RECORD;
        let block = u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        let value = u64::from_le_bytes(bytes[at + 8..at + 16].try_into().unwrap());
        if block >= header.total_blocks || value >= header.prime {
            return Err(Error::Checkpoint(format!("corrupt record {r}")));
        }
        done.insert(block, value);
    }
    // drop a record torn by an interrupted write
    let end = (start + whole * RECORD) as u64;
    f.set_len(end)?;
    f.seek(SeekFrom::Start(end))?;
    Ok((f, done))
}
