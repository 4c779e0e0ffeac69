//! Permutation weights: the signed A-side dominant weights φ(Λ) such that the
//! alternating E-orbit sum of a strictly dominant Λ equals
//! Σ_φ sign(φ) · (alternating A-orbit sum of φ).
//!
//! Half of each set is produced by a frozen table of Weyl words; the other
//! half is its image under the A-type diagram automorphism.

use std::collections::HashSet;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::branching::{embedding, mirror, project, EmbeddingMap, Pair};
use crate::error::{Error, Result};
use crate::rootsys::{build_algebra, e_series_with_branch, AlgebraData, AlgebraKind, Weight};
use crate::rootsys::{E7_BRANCH_NODE, E8_BRANCH_NODE};
use crate::schur::{cascade, exponent_vector};
use crate::weyl::{apply_word, is_reduced, signature, weyl_group_order, Sign, WeylWord};

const E7_TABLE: &str = include_str!("../data/e7_a7_words.dat");
const E8_TABLE: &str = include_str!("../data/e8_a8_words.dat");

/// Words per length in the E7 table, lengths 0..=10.
pub const E7_LENGTH_COUNTS: [usize; 11] = [1, 1, 2, 3, 5, 6, 8, 5, 3, 1, 1];

/// Words per length in the E8 table, lengths 0..=25.
pub const E8_LENGTH_COUNTS: [usize; 26] = [
    1, 4, 11, 23, 30, 39, 52, 66, 78, 89, 92, 88, 81, 70, 60, 51, 42, 31, 22, 13, 7, 4, 3, 1, 1, 1,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Bundled table compiled into the library.
    Bundled,
    /// Loaded from a file at runtime.
    File,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub word: WeylWord,
    pub sign: Sign,
    /// Image under the diagram automorphism of the A side.
    pub mirrored: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTable {
    pub pair: Pair,
    pub entries: Vec<TableEntry>,
    pub provenance: Provenance,
}

impl WordTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of words of each length 0..=max.
    pub fn length_histogram(&self) -> Vec<usize> {
        let mut h = Vec::new();
        for e in self.entries.iter().filter(|e| !e.mirrored) {
            let l = e.word.len();
            if h.len() <= l {
                h.resize(l + 1, 0);
            }
            h[l] += 1;
        }
        h
    }
}

/// A signed dominant weight of the A side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWeight {
    pub weight: Weight,
    pub sign: Sign,
}

pub fn expected_length_counts(pair: Pair) -> Result<&'static [usize]> {
    match pair {
        Pair::E7A7 => Ok(&E7_LENGTH_COUNTS),
        Pair::E8A8 => Ok(&E8_LENGTH_COUNTS),
        Pair::An(_) => Err(no_table(pair)),
    }
}

fn no_table(pair: Pair) -> Error {
    Error::UnsupportedPair(format!("{pair} has no word table"))
}

fn bundled_text(pair: Pair) -> Result<&'static str> {
    match pair {
        Pair::E7A7 => Ok(E7_TABLE),
        Pair::E8A8 => Ok(E8_TABLE),
        Pair::An(_) => Err(no_table(pair)),
    }
}

/// Line-level scan: (1-based line number, word) per data line, plus every
/// formatting error found.
fn scan(text: &str, rank: usize) -> (Vec<(usize, WeylWord)>, Vec<Error>) {
    let mut words = Vec::new();
    let mut errors = Vec::new();
    let mut prev: Option<(usize, Vec<usize>)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedTable { line, reason };
        let Some((len, body)) = s.split_once(':') else {
            errors.push(bad("missing ':'".into()));
            continue;
        };
        let Ok(len) = len.trim().parse::<usize>() else {
            errors.push(bad(format!("bad length field {len:?}")));
            continue;
        };
        let letters: std::result::Result<Vec<usize>, _> = if body.trim().is_empty() {
            Ok(Vec::new())
        } else {
            body.split(',').map(|x| x.trim().parse::<usize>()).collect()
        };
        let Ok(letters) = letters else {
            errors.push(bad(format!("bad letters {body:?}")));
            continue;
        };
        if let Some(&x) = letters.iter().find(|&&x| x == 0 || x > rank) {
            errors.push(bad(format!("letter {x} outside 1..={rank}")));
            continue;
        }
        if letters.len() != len {
            errors.push(bad(format!(
                "length field {len} but {} letters",
                letters.len()
            )));
            continue;
        }
        if let Some(p) = &prev {
            if (p.0, &p.1) >= (len, &letters) {
                errors.push(bad("lines out of order".into()));
            }
        }
        prev = Some((len, letters.clone()));
        words.push((line, WeylWord(letters)));
    }
    (words, errors)
}

fn count_errors(words: &[(usize, WeylWord)], expected: &[usize]) -> Vec<Error> {
    let max = words.iter().map(|(_, w)| w.len()).max().unwrap_or(0);
    (0..expected.len().max(max + 1))
        .filter_map(|length| {
            let found = words.iter().filter(|(_, w)| w.len() == length).count();
            let want = expected.get(length).copied().unwrap_or(0);
            (found != want).then_some(Error::TableCount {
                length,
                expected: want,
                found,
            })
        })
        .collect()
}

/// Strict parse: the first problem of any kind is fatal.
pub fn parse_table(pair: Pair, text: &str, provenance: Provenance) -> Result<WordTable> {
    let alg = build_algebra(pair.source());
    let expected = expected_length_counts(pair)?;
    let (words, errors) = scan(text, alg.rank());
    if let Some(e) = errors.into_iter().next() {
        return Err(e);
    }
    if let Some(e) = count_errors(&words, expected).into_iter().next() {
        return Err(e);
    }
    for (_, w) in &words {
        if !is_reduced(&alg, w)? {
            return Err(Error::NotReduced {
                word: w.to_string(),
                length: w.len(),
            });
        }
    }
    let entries = words
        .into_iter()
        .map(|(_, word)| TableEntry {
            sign: signature(&word),
            word,
            mirrored: false,
        })
        .collect();
    Ok(WordTable {
        pair,
        entries,
        provenance,
    })
}

/// The bundled half-table.
pub fn load_table(pair: Pair) -> Result<WordTable> {
    parse_table(pair, bundled_text(pair)?, Provenance::Bundled)
}

pub fn load_table_from_path(pair: Pair, path: &Path) -> Result<WordTable> {
    let text = std::fs::read_to_string(path)?;
    parse_table(pair, &text, Provenance::File)
}

/// Whether the mirror images carry the opposite sign. This is the parity of
/// ℓ(w0 of E) + ℓ(w0 of A): 63 + 28 is odd, 120 + 36 is even.
pub fn mirror_flips_sign(pair: Pair) -> Result<bool> {
    match pair {
        Pair::E7A7 => Ok(true),
        Pair::E8A8 => Ok(false),
        Pair::An(_) => Err(no_table(pair)),
    }
}

/// Base table followed by its mirror entries. Built once per process.
pub fn full_table(pair: Pair) -> Result<WordTable> {
    static E7: OnceLock<Result<WordTable>> = OnceLock::new();
    static E8: OnceLock<Result<WordTable>> = OnceLock::new();
    let cell = match pair {
        Pair::E7A7 => &E7,
        Pair::E8A8 => &E8,
        Pair::An(_) => return Err(no_table(pair)),
    };
    cell.get_or_init(|| complete(load_table(pair)?)).clone()
}

fn complete(base: WordTable) -> Result<WordTable> {
    let flip = mirror_flips_sign(base.pair)?;
    let mirrored: Vec<TableEntry> = base
        .entries
        .iter()
        .map(|e| TableEntry {
            word: e.word.clone(),
            sign: if flip { e.sign.flip() } else { e.sign },
            mirrored: true,
        })
        .collect();
    let mut entries = base.entries;
    entries.extend(mirrored);
    let table = WordTable { entries, ..base };
    let map = embedding(table.pair)?;
    let alg = build_algebra(table.pair.source());
    images(&alg, &map, &table, &Weight::rho(table.pair.source()))?;
    Ok(table)
}

/// A-side images of w(Λ) for each entry, checked dominant and distinct.
fn images(
    alg: &AlgebraData,
    map: &EmbeddingMap,
    table: &WordTable,
    dominant: &Weight,
) -> Result<Vec<SignedWeight>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(table.len());
    for e in &table.entries {
        let mut w = project(map, &apply_word(alg, &e.word, dominant)?)?;
        if e.mirrored {
            w = mirror(&w);
        }
        if !w.is_dominant() {
            return Err(Error::NonDominantImage {
                word: e.word.to_string(),
                image: w.labels,
            });
        }
        if !seen.insert(w.labels.clone()) {
            return Err(Error::DuplicateImage { image: w.labels });
        }
        out.push(SignedWeight {
            weight: w,
            sign: e.sign,
        });
    }
    Ok(out)
}

/// φ(Λ) for a strictly dominant Λ of the source algebra.
///
/// For (A_N, A_{N−1}) the N+1 cascade terms are returned instead of a table.
pub fn phi(pair: Pair, dominant: &Weight) -> Result<Vec<SignedWeight>> {
    if dominant.algebra != pair.source() {
        return Err(Error::RankMismatch {
            algebra: pair.source().to_string(),
            rank: pair.source().rank(),
            got: dominant.labels.len(),
        });
    }
    if !dominant.is_strictly_dominant() {
        return Err(Error::NotStrictlyDominant(dominant.labels.clone()));
    }
    match pair {
        Pair::An(_) => cascade(&exponent_vector(dominant)?)?
            .into_iter()
            .map(|t| {
                Ok(SignedWeight {
                    weight: t.weight()?,
                    sign: t.sign,
                })
            })
            .collect(),
        _ => {
            let table = full_table(pair)?;
            phi_with_table(&table, dominant)
        }
    }
}

/// φ(Λ) from an already loaded full table.
pub fn phi_with_table(table: &WordTable, dominant: &Weight) -> Result<Vec<SignedWeight>> {
    let alg = build_algebra(table.pair.source());
    let map = embedding(table.pair)?;
    images(&alg, &map, table, dominant)
}

/// Outcome of validating a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub pair: Pair,
    pub base_count: usize,
    pub full_count: usize,
    pub length_histogram: Vec<usize>,
    /// |W(E)| / |W(A)|.
    pub group_ratio: String,
    /// One message per problem, each naming its line where applicable.
    pub errors: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Validates the bundled table.
pub fn verify_tables(pair: Pair) -> Result<TableReport> {
    Ok(verify_table_text(pair, bundled_text(pair)?))
}

/// Validates table text, collecting every problem rather than stopping.
pub fn verify_table_text(pair: Pair, text: &str) -> TableReport {
    let mut report = TableReport {
        pair,
        base_count: 0,
        full_count: 0,
        length_histogram: Vec::new(),
        group_ratio: String::new(),
        errors: Vec::new(),
    };
    let expected = match expected_length_counts(pair) {
        Ok(e) => e,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    let alg = build_algebra(pair.source());
    let target = build_algebra(pair.target());
    let ratio = weyl_group_order(&alg) / weyl_group_order(&target);
    report.group_ratio = ratio.to_string();

    let (words, errors) = scan(text, alg.rank());
    report.errors.extend(errors.iter().map(ToString::to_string));
    report
        .errors
        .extend(count_errors(&words, expected).iter().map(ToString::to_string));
    for (line, w) in &words {
        if !is_reduced(&alg, w).unwrap_or(false) {
            report.errors.push(format!("line {line}: {w} is not reduced"));
        }
    }
    report.base_count = words.len();
    let mut hist = Vec::new();
    for (_, w) in &words {
        if hist.len() <= w.len() {
            hist.resize(w.len() + 1, 0);
        }
        hist[w.len()] += 1;
    }
    report.length_histogram = hist;
    if BigUint::from(2 * words.len()) != ratio {
        report.errors.push(format!(
            "{} words give {} weights, group ratio is {ratio}",
            words.len(),
            2 * words.len()
        ));
    }

    let base = WordTable {
        pair,
        entries: words
            .iter()
            .map(|(_, word)| TableEntry {
                word: word.clone(),
                sign: signature(word),
                mirrored: false,
            })
            .collect(),
        provenance: Provenance::File,
    };
    match complete(base) {
        Ok(t) => report.full_count = t.len(),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

/// Finds the attachment node of the last simple root for which every table
/// word is reduced and φ(ρ) is a set of distinct dominant weights. Exactly
/// one candidate must survive.
pub fn resolve_branch_node(pair: Pair) -> Result<usize> {
    let table = full_table(pair)?;
    let kind = pair.source();
    let map = embedding(pair)?;
    let survivors: Vec<usize> = (2..kind.rank() - 1)
        .filter(|&b| {
            let Ok(alg) = e_series_with_branch(kind, b) else {
                return false;
            };
            table
                .entries
                .iter()
                .all(|e| is_reduced(&alg, &e.word).unwrap_or(false))
                && images(&alg, &map, &table, &Weight::rho(kind)).is_ok()
        })
        .collect();
    match survivors.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::UnsupportedAlgebra(format!(
            "{kind}: branch node candidates {survivors:?}"
        ))),
    }
}

/// The node frozen in [`crate::rootsys`].
pub fn frozen_branch_node(kind: AlgebraKind) -> Option<usize> {
    match kind {
        AlgebraKind::E7 => Some(E7_BRANCH_NODE),
        AlgebraKind::E8 => Some(E8_BRANCH_NODE),
        AlgebraKind::A(_) => None,
    }
}
