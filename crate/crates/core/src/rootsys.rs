//! Simply-laced root systems of types A, E7 and E8 in the node numbering used
//! throughout the crate, plus the μ-basis view of A-type weights.
//!
//! Numbering: A(n) is the chain 1–2–…–n. E7 is the chain 1–…–6 with node 7
//! attached to node [`E7_BRANCH_NODE`]; E8 is the chain 1–…–7 with node 8
//! attached to node [`E8_BRANCH_NODE`]. The attachment points are the unique
//! choices compatible with the shipped word tables (see
//! `permweights::resolve_branch_node`), frozen here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chain node carrying E7's off-chain node 7.
pub const E7_BRANCH_NODE: usize = 4;
/// Chain node carrying E8's off-chain node 8.
pub const E8_BRANCH_NODE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    A(u8),
    E7,
    E8,
}

impl AlgebraKind {
    pub fn rank(self) -> usize {
        match self {
            AlgebraKind::A(n) => n as usize,
            AlgebraKind::E7 => 7,
            AlgebraKind::E8 => 8,
        }
    }

    /// A(n) for `1 <= n <= 8`.
    pub fn a(n: usize) -> Result<Self> {
        if (1..=8).contains(&n) {
            Ok(AlgebraKind::A(n as u8))
        } else {
            Err(Error::UnsupportedAlgebra(format!("A{n}")))
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, AlgebraKind::A(_))
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::A(n) => write!(f, "A{n}"),
            AlgebraKind::E7 => f.write_str("E7"),
            AlgebraKind::E8 => f.write_str("E8"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "E7" => Ok(AlgebraKind::E7),
            "E8" => Ok(AlgebraKind::E8),
            _ => {
                let n = t
                    .strip_prefix('A')
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnsupportedAlgebra(s.to_string()))?;
                AlgebraKind::a(n)
            }
        }
    }
}

/// An integral weight stored as Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub algebra: AlgebraKind,
    pub labels: Vec<i64>,
}

impl Weight {
    pub fn new(algebra: AlgebraKind, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != algebra.rank() {
            return Err(Error::RankMismatch {
                algebra: algebra.to_string(),
                rank: algebra.rank(),
                got: labels.len(),
            });
        }
        Ok(Weight { algebra, labels })
    }

    pub fn zero(algebra: AlgebraKind) -> Self {
        Weight {
            algebra,
            labels: vec![0; algebra.rank()],
        }
    }

    /// Fundamental weight for node `i` (1-based).
    pub fn fundamental(algebra: AlgebraKind, i: usize) -> Result<Self> {
        let rank = algebra.rank();
        if i == 0 || i > rank {
            return Err(Error::NodeOutOfRange { node: i, rank });
        }
        let mut labels = vec![0; rank];
        labels[i - 1] = 1;
        Ok(Weight { algebra, labels })
    }

    pub fn rho(algebra: AlgebraKind) -> Self {
        Weight {
            algebra,
            labels: vec![1; algebra.rank()],
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 1)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.algebra, other.algebra);
        Weight {
            algebra: self.algebra,
            labels: self
                .labels
                .iter()
                .zip(&other.labels)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Parses comma-separated labels such as `1,0,2`.
    pub fn parse(algebra: AlgebraKind, s: &str) -> Result<Self> {
        let labels = parse_labels(s)?;
        Weight::new(algebra, labels)
    }

    /// Labels drawn uniformly from 1..=max_label.
    pub fn random_strictly_dominant<R: Rng>(algebra: AlgebraKind, max_label: i64, rng: &mut R) -> Self {
        Weight {
            algebra,
            labels: (0..algebra.rank()).map(|_| rng.gen_range(1..=max_label)).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.labels))
    }
}

pub(crate) fn join(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_labels(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

/// Exponents of the μ-basis for A(n): a weight equals Σ c_A μ_A, modulo the
/// common shift allowed by Σ μ_A = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MuVector {
    pub coords: Vec<i64>,
}

impl MuVector {
    pub fn new(coords: Vec<i64>) -> Self {
        MuVector { coords }
    }

    /// Rank n of the A(n) algebra this vector belongs to.
    pub fn n(&self) -> usize {
        self.coords.len().saturating_sub(1)
    }

    /// Shifted so the smallest coordinate is 0.
    pub fn canonical(&self) -> MuVector {
        let min = self.coords.iter().copied().min().unwrap_or(0);
        MuVector {
            coords: self.coords.iter().map(|c| c - min).collect(),
        }
    }

    /// The simple root α_j = μ_j − μ_{j+1} of A(n), 1-based.
    pub fn simple_root(n: usize, j: usize) -> Result<MuVector> {
        if j == 0 || j > n {
            return Err(Error::NodeOutOfRange { node: j, rank: n });
        }
        let mut coords = vec![0; n + 1];
        coords[j - 1] = 1;
        coords[j] = -1;
        Ok(MuVector { coords })
    }
}

/// Dynkin labels to canonical μ-coordinates: c_A − c_{A+1} = label_A, min c = 0.
pub fn to_mu(w: &Weight) -> Result<MuVector> {
    if !w.algebra.is_a() {
        return Err(Error::UnsupportedAlgebra(format!(
            "{} has no μ-basis",
            w.algebra
        )));
    }
    Ok(mu_coords(&w.labels).canonical())
}

pub(crate) fn mu_coords(labels: &[i64]) -> MuVector {
    let n = labels.len();
    let mut coords = vec![0; n + 1];
    for i in (0..n).rev() {
        coords[i] = coords[i + 1] + labels[i];
    }
    MuVector { coords }
}

pub fn from_mu(v: &MuVector) -> Result<Weight> {
    let n = v.n();
    let labels = v.coords.windows(2).map(|p| p[0] - p[1]).collect();
    Weight::new(AlgebraKind::a(n)?, labels)
}

/// Bilinear form with (μ_I, μ_J) = δ_IJ − 1/(N+1).
pub fn inner(v1: &MuVector, v2: &MuVector) -> Result<BigRational> {
    if v1.coords.len() != v2.coords.len() {
        return Err(Error::ContextMismatch {
            expected: v1.coords.len(),
            got: v2.coords.len(),
        });
    }
    let size = v1.coords.len() as i64;
    let dot: i64 = v1.coords.iter().zip(&v2.coords).map(|(a, b)| a * b).sum();
    let s1: i64 = v1.coords.iter().sum();
    let s2: i64 = v2.coords.iter().sum();
    Ok(BigRational::from_integer(BigInt::from(dot))
        - BigRational::new(BigInt::from(s1 * s2), BigInt::from(size)))
}

/// Cartan matrix, positive roots and diagram data of a simply-laced algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraData {
    pub kind: AlgebraKind,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub branch_node: Option<usize>,
}

pub fn build_algebra(kind: AlgebraKind) -> AlgebraData {
    match kind {
        AlgebraKind::A(_) => {
            let rank = kind.rank();
            let edges: Vec<_> = (1..rank).map(|i| (i, i + 1)).collect();
            let cartan = cartan_from_edges(rank, &edges);
            let positive_roots = positive_roots(&cartan);
            AlgebraData {
                kind,
                cartan,
                positive_roots,
                branch_node: None,
            }
        }
        AlgebraKind::E7 => e_series_with_branch(kind, E7_BRANCH_NODE)
            .expect("frozen E7 branch node is valid"),
        AlgebraKind::E8 => e_series_with_branch(kind, E8_BRANCH_NODE)
            .expect("frozen E8 branch node is valid"),
    }
}

/// The E7/E8 chain with the last node attached at `branch_node`.
///
/// Fails unless the resulting diagram is of the requested type, i.e. the arm
/// lengths from the trivalent node are {1,2,3} (E7) or {1,2,4} (E8).
pub fn e_series_with_branch(kind: AlgebraKind, branch_node: usize) -> Result<AlgebraData> {
    let rank = kind.rank();
    let arms = match kind {
        AlgebraKind::E7 => [1, 2, 3],
        AlgebraKind::E8 => [1, 2, 4],
        AlgebraKind::A(_) => return Err(Error::UnsupportedAlgebra(kind.to_string())),
    };
    if branch_node < 2 || branch_node > rank - 2 {
        return Err(Error::NodeOutOfRange {
            node: branch_node,
            rank,
        });
    }
    let mut edges: Vec<_> = (1..rank - 1).map(|i| (i, i + 1)).collect();
    edges.push((branch_node, rank));
    let cartan = cartan_from_edges(rank, &edges);
    let data = AlgebraData {
        kind,
        positive_roots: positive_roots(&cartan),
        cartan,
        branch_node: Some(branch_node),
    };
    if data.arm_lengths().as_deref() != Some(&arms[..]) {
        return Err(Error::UnsupportedAlgebra(format!(
            "{kind} with node {rank} on node {branch_node}"
        )));
    }
    Ok(data)
}

fn cartan_from_edges(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

/// Closure of the simple roots under adding simple roots.
///
/// Simply-laced: for a positive root r ≠ α_i, r + α_i is a root exactly when
/// ⟨r, α_i⟩ = −1.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| r[j] * cartan[j][i]).sum();
                if pairing == -1 {
                    let mut s = r.clone();
                    s[i] += 1;
                    if seen.insert(s.clone()) {
                        next.push(s);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

impl AlgebraData {
    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.kind)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.algebra != self.kind || w.labels.len() != self.rank() {
            return Err(Error::RankMismatch {
                algebra: self.kind.to_string(),
                rank: self.rank(),
                got: w.labels.len(),
            });
        }
        Ok(())
    }

    /// ⟨w, α^∨⟩ for a root α given in simple-root coordinates.
    pub fn pairing(&self, w: &Weight, root: &[i64]) -> i64 {
        w.labels.iter().zip(root).map(|(a, c)| a * c).sum()
    }

    /// Sorted arm lengths from the trivalent node, `None` for an unbranched diagram.
    pub fn arm_lengths(&self) -> Option<Vec<usize>> {
        let rank = self.rank();
        let neighbours = |i: usize| -> Vec<usize> {
            (0..rank)
                .filter(|&j| j != i && self.cartan[i][j] != 0)
                .collect()
        };
        let hub = (0..rank).find(|&i| neighbours(i).len() == 3)?;
        let mut arms: Vec<usize> = neighbours(hub)
            .into_iter()
            .map(|start| {
                let (mut prev, mut cur, mut len) = (hub, start, 1);
                loop {
                    let next: Vec<_> = neighbours(cur).into_iter().filter(|&j| j != prev).collect();
                    match next.as_slice() {
                        [j] => {
                            prev = cur;
                            cur = *j;
                            len += 1;
                        }
                        _ => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        Some(arms)
    }
}

/// Exponents of the Weyl group of a (possibly reducible) simply-laced system,
/// read off the height distribution of its positive roots: exponent m occurs
/// (#roots of height m) − (#roots of height m+1) times.
pub fn exponents(positive_roots: &[Vec<i64>]) -> Vec<u64> {
    let heights: Vec<usize> = positive_roots
        .iter()
        .map(|r| r.iter().sum::<i64>() as usize)
        .collect();
    let max = heights.iter().copied().max().unwrap_or(0);
    let mut count = vec![0usize; max + 2];
    for h in heights {
        count[h] += 1;
    }
    let mut out = Vec::new();
    for m in 1..=max {
        for _ in 0..count[m] - count[m + 1] {
            out.push(m as u64);
        }
    }
    out
}

/// Restriction of a Cartan matrix to the listed (0-based) nodes.
pub(crate) fn sub_cartan(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<i64>> {
    nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_one() {
        let a1 = build_algebra(AlgebraKind::A(1));
        assert_eq!(a1.cartan, vec![vec![2]]);
        assert_eq!(a1.positive_roots.len(), 1);
        assert_eq!(a1.rho().labels, vec![1]);
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(build_algebra(AlgebraKind::E7).positive_roots.len(), 63);
        assert_eq!(build_algebra(AlgebraKind::E8).positive_roots.len(), 120);
        for n in 1..=8 {
            let a = build_algebra(AlgebraKind::A(n));
            assert_eq!(a.positive_roots.len(), (n as usize) * (n as usize + 1) / 2);
        }
    }

    #[test]
    fn cartan_is_simply_laced() {
        for kind in [AlgebraKind::A(5), AlgebraKind::E7, AlgebraKind::E8] {
            let c = build_algebra(kind).cartan;
            for i in 0..c.len() {
                assert_eq!(c[i][i], 2);
                for j in 0..c.len() {
                    assert_eq!(c[i][j], c[j][i]);
                    if i != j {
                        assert!(c[i][j] == 0 || c[i][j] == -1);
                    }
                }
            }
        }
    }

    #[test]
    fn arm_lengths_of_e_series() {
        assert_eq!(build_algebra(AlgebraKind::E7).arm_lengths(), Some(vec![1, 2, 3]));
        assert_eq!(build_algebra(AlgebraKind::E8).arm_lengths(), Some(vec![1, 2, 4]));
        assert_eq!(build_algebra(AlgebraKind::A(4)).arm_lengths(), None);
        // node 8 on node 2 gives D-type arms, rejected
        assert!(e_series_with_branch(AlgebraKind::E8, 2).is_err());
        assert!(e_series_with_branch(AlgebraKind::E8, 3).is_ok());
    }

    #[test]
    fn exponents_give_group_orders() {
        let order = |kind| -> u64 {
            exponents(&build_algebra(kind).positive_roots)
                .iter()
                .map(|m| m + 1)
                .product()
        };
        assert_eq!(order(AlgebraKind::A(3)), 24);
        assert_eq!(order(AlgebraKind::E7), 2_903_040);
        assert_eq!(order(AlgebraKind::E8), 696_729_600);
    }

    #[test]
    fn to_mu_examples() {
        let a7 = AlgebraKind::A(7);
        let w = Weight::fundamental(a7, 1).unwrap();
        assert_eq!(to_mu(&w).unwrap().coords, vec![1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            to_mu(&Weight::rho(a7)).unwrap().coords,
            vec![7, 6, 5, 4, 3, 2, 1, 0]
        );
        assert_eq!(
            to_mu(&Weight::zero(AlgebraKind::A(2))).unwrap().coords,
            vec![0, 0, 0]
        );
        assert!(to_mu(&Weight::rho(AlgebraKind::E7)).is_err());
    }

    #[test]
    fn from_mu_examples() {
        assert_eq!(from_mu(&MuVector::new(vec![1, 0, 0])).unwrap().labels, vec![1, 0]);
        assert_eq!(
            from_mu(&MuVector::new((0..9).rev().collect())).unwrap().labels,
            vec![1; 8]
        );
        assert_eq!(from_mu(&MuVector::new(vec![5, 5, 5])).unwrap().labels, vec![0, 0]);
    }

    #[test]
    fn inner_examples() {
        let e = |i: usize| {
            let mut c = vec![0; 9];
            c[i] = 1;
            MuVector::new(c)
        };
        assert_eq!(inner(&e(0), &e(0)).unwrap(), q(8, 9));
        assert_eq!(inner(&e(0), &e(1)).unwrap(), q(-1, 9));
        let v = MuVector::new(vec![3, -1, 4, 1, 5, 9, 2, 6, 5]);
        assert_eq!(inner(&v, &MuVector::new(vec![0; 9])).unwrap(), q(0, 1));
    }

    #[test]
    fn fundamental_weights_are_dual_to_simple_roots() {
        for n in 1..=8usize {
            let kind = AlgebraKind::a(n).unwrap();
            for i in 1..=n {
                let lam = to_mu(&Weight::fundamental(kind, i).unwrap()).unwrap();
                for j in 1..=n {
                    let alpha = MuVector::simple_root(n, j).unwrap();
                    assert_eq!(inner(&lam, &alpha).unwrap(), q(i64::from(i == j), 1));
                }
            }
        }
    }

    #[test]
    fn sum_of_mu_basis_is_zero_weight() {
        for n in 1..=8usize {
            let w = from_mu(&MuVector::new(vec![1; n + 1])).unwrap();
            assert!(w.labels.iter().all(|&a| a == 0));
        }
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("e7".parse::<AlgebraKind>().unwrap(), AlgebraKind::E7);
        assert_eq!("A8".parse::<AlgebraKind>().unwrap(), AlgebraKind::A(8));
        assert!("A0".parse::<AlgebraKind>().is_err());
        assert!("G2".parse::<AlgebraKind>().is_err());
    }
}
