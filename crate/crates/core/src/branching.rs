//! Weight correspondences E7→A7, E8→A8 and A_N→A_{N−1}, and the resulting
//! orbit decompositions.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::det;
use crate::rootsys::{build_algebra, AlgebraKind, Weight};
use crate::weyl::{orbit, orbit_size};

/// A supported (algebra, A-type subalgebra) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    E7A7,
    E8A8,
    /// (A_n, A_{n−1}) for 2 ≤ n ≤ 8.
    An(u8),
}

impl Pair {
    pub fn an(n: usize) -> Result<Pair> {
        if (2..=8).contains(&n) {
            Ok(Pair::An(n as u8))
        } else {
            Err(Error::UnsupportedPair(format!("A{n}:A{}", n.saturating_sub(1))))
        }
    }

    pub fn source(self) -> AlgebraKind {
        match self {
            Pair::E7A7 => AlgebraKind::E7,
            Pair::E8A8 => AlgebraKind::E8,
            Pair::An(n) => AlgebraKind::A(n),
        }
    }

    pub fn target(self) -> AlgebraKind {
        match self {
            Pair::E7A7 => AlgebraKind::A(7),
            Pair::E8A8 => AlgebraKind::A(8),
            Pair::An(n) => AlgebraKind::A(n - 1),
        }
    }

    /// Number of u-variables of the subalgebra side (its rank + 1).
    pub fn alphabet_size(self) -> usize {
        self.target().rank() + 1
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.source(), self.target())
    }
}

impl FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pair> {
        let bad = || Error::UnsupportedPair(s.to_string());
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let a: AlgebraKind = a.parse().map_err(|_| bad())?;
        let b: AlgebraKind = b.parse().map_err(|_| bad())?;
        match (a, b) {
            (AlgebraKind::E7, AlgebraKind::A(7)) => Ok(Pair::E7A7),
            (AlgebraKind::E8, AlgebraKind::A(8)) => Ok(Pair::E8A8),
            (AlgebraKind::A(n), AlgebraKind::A(m)) if m + 1 == n => Pair::an(n as usize),
            _ => Err(bad()),
        }
    }
}

/// Row i holds the λ-coefficients of the image of the i-th fundamental weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMap {
    pub pair: Pair,
    pub matrix: Vec<Vec<i64>>,
}

// Each row lists λ indices with repetition, e.g. Λ_4 = λ_3 + λ_5 + λ_5 + λ_8.
const E7_ROWS: [&[usize]; 7] = [
    &[2],
    &[1, 3],
    &[3, 3],
    &[3, 3, 6],
    &[3, 5],
    &[4],
    &[3, 7],
];

const E8_ROWS: [&[usize]; 8] = [
    &[3],
    &[3, 6],
    &[3, 5, 7],
    &[3, 5, 5, 8],
    &[2, 4, 5, 5, 8],
    &[1, 4, 5, 8],
    &[4, 8],
    &[4, 5],
];

fn rows_to_matrix(rows: &[&[usize]]) -> Vec<Vec<i64>> {
    let rank = rows.len();
    rows.iter()
        .map(|row| {
            let mut out = vec![0; rank];
            for &j in *row {
                out[j - 1] += 1;
            }
            out
        })
        .collect()
}

pub fn embedding(pair: Pair) -> Result<EmbeddingMap> {
    let matrix = match pair {
        Pair::E7A7 => rows_to_matrix(&E7_ROWS),
        Pair::E8A8 => rows_to_matrix(&E8_ROWS),
        Pair::An(_) => {
            return Err(Error::UnsupportedPair(format!(
                "{pair} has no embedding matrix; use an_restrict"
            )))
        }
    };
    Ok(EmbeddingMap { pair, matrix })
}

impl EmbeddingMap {
    pub fn determinant(&self) -> BigRational {
        let one = BigRational::from_integer(BigInt::from(1));
        let m = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| one.from_i64(x)).collect())
            .collect();
        det(m, &one)
    }

    pub fn is_invertible(&self) -> bool {
        !Field::is_zero(&self.determinant())
    }

    /// Labels of the image: Σ_i a_i · row_i.
    pub fn project_labels(&self, labels: &[i64]) -> Vec<i64> {
        let rank = self.matrix.len();
        let mut out = vec![0; rank];
        for (a, row) in labels.iter().zip(&self.matrix) {
            if *a != 0 {
                for (o, m) in out.iter_mut().zip(row) {
                    *o += a * m;
                }
            }
        }
        out
    }
}

/// Linear extension of the fundamental-weight correspondence.
pub fn project(map: &EmbeddingMap, w: &Weight) -> Result<Weight> {
    if w.algebra != map.pair.source() {
        return Err(Error::RankMismatch {
            algebra: map.pair.source().to_string(),
            rank: map.pair.source().rank(),
            got: w.labels.len(),
        });
    }
    Weight::new(map.pair.target(), map.project_labels(&w.labels))
}

/// Drops the last Dynkin label: A(N) → A(N−1).
pub fn an_restrict(w: &Weight) -> Result<Weight> {
    match w.algebra {
        AlgebraKind::A(n) if n >= 2 => Weight::new(
            AlgebraKind::A(n - 1),
            w.labels[..w.labels.len() - 1].to_vec(),
        ),
        _ => Err(Error::UnsupportedAlgebra(format!(
            "cannot restrict {} to a smaller A-type algebra",
            w.algebra
        ))),
    }
}

/// The A-type diagram automorphism λ_i → λ_{rank+1−i}.
pub fn mirror(w: &Weight) -> Weight {
    let mut labels = w.labels.clone();
    labels.reverse();
    Weight {
        algebra: w.algebra,
        labels,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub pair: Pair,
    pub source: Weight,
    /// A-side dominant weights, sorted by labels.
    pub parts: Vec<Weight>,
}

impl OrbitDecomposition {
    pub fn part_sizes(&self) -> Result<Vec<BigUint>> {
        let alg = build_algebra(self.pair.target());
        self.parts.iter().map(|p| orbit_size(&alg, p)).collect()
    }
}

/// Splits W(Λ_i) into A-side Weyl orbits by collecting the members whose
/// projection is dominant.
pub fn decompose_fundamental(pair: Pair, i: usize) -> Result<OrbitDecomposition> {
    let map = embedding(pair)?;
    let alg = build_algebra(pair.source());
    let source = Weight::fundamental(pair.source(), i)?;
    let members = orbit(&alg, &source)?;
    let mut parts: Vec<Weight> = members
        .iter()
        .map(|w| project(&map, &w))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(Weight::is_dominant)
        .collect();
    parts.sort();
    Ok(OrbitDecomposition {
        pair,
        source,
        parts,
    })
}
