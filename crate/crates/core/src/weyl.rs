//! Simple reflections, Weyl words, lengths and orbit machinery.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{exponents, positive_roots, sub_cartan, AlgebraData, Weight};

/// Orbits larger than this are refused by [`orbit`]; use [`walk_orbit`] instead.
pub const DEFAULT_ORBIT_CAP: u64 = 4_000_000;

/// ±1, the determinant of a Weyl group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A product of simple reflections w_{i_1} w_{i_2} … w_{i_k}, acting right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<_> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "w_{{{}}}", letters.join(","))
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeylWord::identity());
        }
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i > 0 => Ok(i),
                _ => Err(Error::Parse(format!("bad letter {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(WeylWord)
    }
}

#[inline]
fn reflect_in_place(cartan: &[Vec<i64>], i: usize, labels: &mut [i64]) {
    let a = labels[i];
    if a != 0 {
        for (l, c) in labels.iter_mut().zip(&cartan[i]) {
            *l -= a * c;
        }
    }
}

/// Simple reflection w_i (1-based node) acting on Dynkin labels.
pub fn reflect(alg: &AlgebraData, i: usize, w: &Weight) -> Result<Weight> {
    alg.check_weight(w)?;
    if i == 0 || i > alg.rank() {
        return Err(Error::NodeOutOfRange {
            node: i,
            rank: alg.rank(),
        });
    }
    let mut out = w.clone();
    reflect_in_place(&alg.cartan, i - 1, &mut out.labels);
    Ok(out)
}

pub fn apply_word(alg: &AlgebraData, word: &WeylWord, w: &Weight) -> Result<Weight> {
    let mut out = w.clone();
    for &i in word.letters().iter().rev() {
        out = reflect(alg, i, &out)?;
    }
    Ok(out)
}

/// (−1)^(number of letters).
pub fn signature(word: &WeylWord) -> Sign {
    Sign::from_parity(word.len())
}

/// Coxeter length: the number of positive roots the word sends to negative roots.
pub fn canonical_length(alg: &AlgebraData, word: &WeylWord) -> Result<usize> {
    let rank = alg.rank();
    if let Some(&bad) = word.letters().iter().find(|&&i| i == 0 || i > rank) {
        return Err(Error::NodeOutOfRange { node: bad, rank });
    }
    let mut count = 0;
    for root in &alg.positive_roots {
        let mut r = root.clone();
        for &i in word.letters().iter().rev() {
            let i = i - 1;
            let pairing: i64 = (0..rank).map(|j| r[j] * alg.cartan[j][i]).sum();
            r[i] -= pairing;
        }
        if r.iter().any(|&c| c < 0) {
            count += 1;
        }
    }
    Ok(count)
}

pub fn is_reduced(alg: &AlgebraData, word: &WeylWord) -> Result<bool> {
    Ok(canonical_length(alg, word)? == word.len())
}

/// |W_J| for the parabolic subgroup on the given 0-based nodes.
pub fn parabolic_order(alg: &AlgebraData, nodes: &[usize]) -> BigUint {
    let roots = positive_roots(&sub_cartan(&alg.cartan, nodes));
    exponents(&roots)
        .into_iter()
        .map(|m| BigUint::from(m + 1))
        .product()
}

pub fn weyl_group_order(alg: &AlgebraData) -> BigUint {
    exponents(&alg.positive_roots)
        .into_iter()
        .map(|m| BigUint::from(m + 1))
        .product()
}

/// |W| / |W_J| where J is the set of zero labels. No enumeration.
pub fn orbit_size(alg: &AlgebraData, dominant: &Weight) -> Result<BigUint> {
    alg.check_weight(dominant)?;
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.labels.clone()));
    }
    let stabilizer: Vec<usize> = (0..alg.rank())
        .filter(|&i| dominant.labels[i] == 0)
        .collect();
    Ok(weyl_group_order(alg) / parabolic_order(alg, &stabilizer))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantRep {
    pub weight: Weight,
    pub sign: Sign,
    pub length: usize,
}

/// Reflects at the first negative label until the weight is dominant.
pub fn dominant_rep(alg: &AlgebraData, w: &Weight) -> Result<DominantRep> {
    alg.check_weight(w)?;
    let mut labels = w.labels.clone();
    let mut steps = 0;
    while let Some(i) = labels.iter().position(|&a| a < 0) {
        reflect_in_place(&alg.cartan, i, &mut labels);
        steps += 1;
    }
    Ok(DominantRep {
        weight: Weight {
            algebra: w.algebra,
            labels,
        },
        sign: Sign::from_parity(steps),
        length: steps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub dominant: Weight,
    pub size: BigUint,
    pub stabilizer_nodes: Vec<usize>,
}

pub fn orbit_summary(alg: &AlgebraData, dominant: &Weight) -> Result<OrbitSummary> {
    Ok(OrbitSummary {
        size: orbit_size(alg, dominant)?,
        stabilizer_nodes: (1..=alg.rank())
            .filter(|&i| dominant.labels[i - 1] == 0)
            .collect(),
        dominant: dominant.clone(),
    })
}

type Packed = [i32; 8];

fn pack(labels: &[i64]) -> Result<Packed> {
    let mut out = [0i32; 8];
    for (o, &l) in out.iter_mut().zip(labels) {
        *o = i32::try_from(l).map_err(|_| Error::Parse(format!("label {l} overflows i32")))?;
    }
    Ok(out)
}

/// A fully enumerated Weyl orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    algebra: crate::rootsys::AlgebraKind,
    members: HashSet<Packed>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.algebra == self.algebra && pack(&w.labels).is_ok_and(|p| self.members.contains(&p))
    }

    pub fn iter(&self) -> impl Iterator<Item = Weight> + '_ {
        let rank = self.algebra.rank();
        self.members.iter().map(move |p| Weight {
            algebra: self.algebra,
            labels: p[..rank].iter().map(|&x| i64::from(x)).collect(),
        })
    }

    /// Members in lexicographic order of labels.
    pub fn sorted(&self) -> Vec<Weight> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort();
        v
    }

    pub(crate) fn from_weights(
        algebra: crate::rootsys::AlgebraKind,
        weights: impl IntoIterator<Item = Vec<i64>>,
    ) -> Result<Self> {
        let members = weights
            .into_iter()
            .map(|l| pack(&l))
            .collect::<Result<HashSet<_>>>()?;
        Ok(Orbit { algebra, members })
    }
}

pub fn orbit(alg: &AlgebraData, dominant: &Weight) -> Result<Orbit> {
    orbit_with_cap(alg, dominant, DEFAULT_ORBIT_CAP)
}

/// Breadth-first closure under all simple reflections, visiting nodes in
/// ascending order. Refuses orbits whose stabilizer-formula size exceeds `cap`.
pub fn orbit_with_cap(alg: &AlgebraData, dominant: &Weight, cap: u64) -> Result<Orbit> {
    let size = orbit_size(alg, dominant)?;
    if size > BigUint::from(cap) {
        return Err(Error::OrbitCapExceeded {
            size: size.to_string(),
            cap,
        });
    }
    let rank = alg.rank();
    let start = pack(&dominant.labels)?;
    let mut members = HashSet::with_capacity(size.to_usize().unwrap_or(0));
    members.insert(start);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for i in 0..rank {
                let a = p[i];
                if a == 0 {
                    continue;
                }
                let mut q = *p;
                for j in 0..rank {
                    q[j] -= a * alg.cartan[i][j] as i32;
                }
                if members.insert(q) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Ok(Orbit {
        algebra: alg.kind,
        members,
    })
}

/// Calls `f(i, child)` for each child of `labels` in the canonical orbit tree.
///
/// Every non-dominant orbit member ν has the unique parent w_j ν with j the
/// first negative label of ν, so the tree rooted at the dominant weight covers
/// the orbit exactly once. A child sits one level deeper than its parent and
/// its depth equals the length of the minimal element reaching it.
#[inline]
pub fn for_each_child(cartan: &[Vec<i64>], labels: &[i64], mut f: impl FnMut(usize, &[i64])) {
    let rank = labels.len();
    let mut child = [0i64; 8];
    for i in 0..rank {
        let a = labels[i];
        if a <= 0 {
            continue;
        }
        let row = &cartan[i];
        let mut ok = true;
        for j in 0..i {
            let v = labels[j] - a * row[j];
            if v < 0 {
                ok = false;
                break;
            }
            child[j] = v;
        }
        if !ok {
            continue;
        }
        for j in i..rank {
            child[j] = labels[j] - a * row[j];
        }
        f(i, &child[..rank]);
    }
}

/// Depth-first walk of the subtree below `root`, threading a carried value
/// from parent to child. `step(parent_carry, i, a)` gives the carry of the
/// child obtained by reflecting at node i (0-based) where the parent label is
/// `a`; `visit(labels, depth, carry)` sees every node including the root.
pub fn walk_subtree<C, S, V>(
    alg: &AlgebraData,
    root: &[i64],
    depth: usize,
    carry: C,
    step: &S,
    visit: &mut V,
) where
    S: Fn(&C, usize, i64) -> C,
    V: FnMut(&[i64], usize, &C),
{
    visit(root, depth, &carry);
    let cartan = &alg.cartan;
    for_each_child(cartan, root, |i, child| {
        let c = step(&carry, i, root[i]);
        walk_subtree(alg, child, depth + 1, c, step, visit);
    });
}

/// Streams every orbit member with its depth (sign = (−1)^depth) without
/// retaining the orbit.
pub fn walk_orbit(
    alg: &AlgebraData,
    dominant: &Weight,
    mut visit: impl FnMut(&[i64], usize),
) -> Result<()> {
    alg.check_weight(dominant)?;
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.labels.clone()));
    }
    walk_subtree(
        alg,
        &dominant.labels,
        0,
        (),
        &|_, _, _| (),
        &mut |l, d, _| visit(l, d),
    );
    Ok(())
}

/// Splits the canonical orbit tree into independently walkable blocks.
///
/// `interior` nodes are visited alone; each `roots` entry stands for its whole
/// subtree. Both lists are in a fixed deterministic order.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub interior: Vec<(Vec<i64>, usize)>,
    pub roots: Vec<(Vec<i64>, usize)>,
}

pub fn partition_orbit(
    alg: &AlgebraData,
    dominant: &Weight,
    min_roots: usize,
) -> Result<OrbitPartition> {
    alg.check_weight(dominant)?;
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.labels.clone()));
    }
    let mut interior = Vec::new();
    let mut level = vec![(dominant.labels.clone(), 0usize)];
    while level.len() < min_roots {
        let mut next = Vec::new();
        for (labels, depth) in &level {
            for_each_child(&alg.cartan, labels, |_, c| next.push((c.to_vec(), depth + 1)));
        }
        if next.is_empty() {
            break;
        }
        interior.append(&mut level);
        level = next;
    }
    Ok(OrbitPartition {
        interior,
        roots: level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_algebra, AlgebraKind};

    fn w(kind: AlgebraKind, labels: &[i64]) -> Weight {
        Weight::new(kind, labels.to_vec()).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let a1 = build_algebra(AlgebraKind::A(1));
        assert_eq!(reflect(&a1, 1, &w(a1.kind, &[1])).unwrap().labels, vec![-1]);
        let a2 = build_algebra(AlgebraKind::A(2));
        assert_eq!(
            reflect(&a2, 1, &w(a2.kind, &[1, 1])).unwrap().labels,
            vec![-1, 2]
        );
        let e7 = build_algebra(AlgebraKind::E7);
        let x = w(e7.kind, &[0, 3, 1, 0, 2, 1, 5]);
        assert_eq!(reflect(&e7, 1, &x).unwrap(), x);
        assert!(matches!(
            reflect(&e7, 8, &x),
            Err(Error::NodeOutOfRange { node: 8, rank: 7 })
        ));
    }

    #[test]
    fn apply_word_composes_right_to_left() {
        let a2 = build_algebra(AlgebraKind::A(2));
        let rho = a2.rho();
        // w_2(ρ) = (2,-1); w_1 of that = (-2, 1)
        let word: WeylWord = "1,2".parse().unwrap();
        assert_eq!(apply_word(&a2, &word, &rho).unwrap().labels, vec![-2, 1]);
        assert_eq!(apply_word(&a2, &WeylWord::identity(), &rho).unwrap(), rho);
        let ii: WeylWord = "2,2".parse().unwrap();
        assert_eq!(apply_word(&a2, &ii, &rho).unwrap(), rho);
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&WeylWord::identity()), Sign::Plus);
        assert_eq!(signature(&"3".parse().unwrap()), Sign::Minus);
        assert_eq!(signature(&"3,2".parse().unwrap()), Sign::Plus);
    }

    #[test]
    fn lengths() {
        let e7 = build_algebra(AlgebraKind::E7);
        assert_eq!(canonical_length(&e7, &WeylWord::identity()).unwrap(), 0);
        assert!(!is_reduced(&e7, &"3,3".parse().unwrap()).unwrap());
        assert!(is_reduced(&e7, &"3,2,4,3,5,4,6".parse().unwrap()).unwrap());
        let a1 = build_algebra(AlgebraKind::A(1));
        assert_eq!(canonical_length(&a1, &"1".parse().unwrap()).unwrap(), 1);
    }

    /// Builds a reduced expression of the longest element by repeatedly
    /// reflecting -ρ's image back to dominance.
    fn longest_word(alg: &AlgebraData) -> WeylWord {
        let mut labels: Vec<i64> = vec![-1; alg.rank()];
        let mut letters = Vec::new();
        while let Some(i) = labels.iter().position(|&a| a < 0) {
            reflect_in_place(&alg.cartan, i, &mut labels);
            letters.push(i + 1);
        }
        WeylWord(letters)
    }

    #[test]
    fn longest_element_length_is_positive_root_count() {
        for kind in [AlgebraKind::A(1), AlgebraKind::A(4), AlgebraKind::E7] {
            let alg = build_algebra(kind);
            let w0 = longest_word(&alg);
            assert_eq!(
                canonical_length(&alg, &w0).unwrap(),
                alg.positive_roots.len()
            );
        }
    }

    #[test]
    fn orbit_sizes_from_stabilizers() {
        let e7 = build_algebra(AlgebraKind::E7);
        let e8 = build_algebra(AlgebraKind::E8);
        let a8 = build_algebra(AlgebraKind::A(8));
        assert_eq!(orbit_size(&e7, &e7.rho()).unwrap(), BigUint::from(2_903_040u64));
        assert_eq!(orbit_size(&e8, &e8.rho()).unwrap(), BigUint::from(696_729_600u64));
        assert_eq!(orbit_size(&a8, &a8.rho()).unwrap(), BigUint::from(362_880u64));
        let l1 = Weight::fundamental(AlgebraKind::E7, 1).unwrap();
        assert_eq!(orbit_size(&e7, &l1).unwrap(), BigUint::from(56u64));
    }

    #[test]
    fn small_orbits() {
        let a7 = build_algebra(AlgebraKind::A(7));
        let l1 = Weight::fundamental(a7.kind, 1).unwrap();
        assert_eq!(orbit(&a7, &l1).unwrap().len(), 8);
        let z = Weight::zero(a7.kind);
        let o = orbit(&a7, &z).unwrap();
        assert_eq!(o.sorted(), vec![z]);
        assert!(matches!(
            orbit(&a7, &w(a7.kind, &[-1, 0, 0, 0, 0, 0, 1])),
            Err(Error::NotDominant(_))
        ));
        let e8 = build_algebra(AlgebraKind::E8);
        assert!(matches!(
            orbit(&e8, &e8.rho()),
            Err(Error::OrbitCapExceeded { .. })
        ));
    }

    #[test]
    fn dominant_rep_examples() {
        let a1 = build_algebra(AlgebraKind::A(1));
        let r = dominant_rep(&a1, &w(a1.kind, &[-1])).unwrap();
        assert_eq!((r.weight.labels, r.sign, r.length), (vec![1], Sign::Minus, 1));
        let e7 = build_algebra(AlgebraKind::E7);
        let r = dominant_rep(&e7, &e7.rho()).unwrap();
        assert_eq!((r.sign, r.length), (Sign::Plus, 0));
        let word: WeylWord = "3,4,5,6,7,4,3,5,4,7".parse().unwrap();
        let image = apply_word(&e7, &word, &e7.rho()).unwrap();
        let r = dominant_rep(&e7, &image).unwrap();
        assert_eq!((r.weight, r.sign, r.length), (e7.rho(), Sign::Plus, 10));
    }

    #[test]
    fn streaming_walk_matches_bfs() {
        for (kind, labels) in [
            (AlgebraKind::A(3), vec![1, 1, 1]),
            (AlgebraKind::A(4), vec![0, 2, 0, 1]),
            (AlgebraKind::E7, vec![0, 0, 1, 0, 0, 0, 0]),
            (AlgebraKind::E8, vec![1, 0, 0, 0, 0, 0, 0, 0]),
        ] {
            let alg = build_algebra(kind);
            let dom = w(kind, &labels);
            let bfs = orbit(&alg, &dom).unwrap();
            let mut seen = Vec::new();
            walk_orbit(&alg, &dom, |l, depth| {
                let rep = dominant_rep(&alg, &w(kind, l)).unwrap();
                assert_eq!(rep.length, depth);
                seen.push(l.to_vec());
            })
            .unwrap();
            assert_eq!(seen.len(), bfs.len());
            let streamed = Orbit::from_weights(kind, seen).unwrap();
            assert_eq!(streamed, bfs);
        }
    }

    #[test]
    fn partition_covers_orbit_once() {
        let alg = build_algebra(AlgebraKind::A(4));
        let dom = alg.rho();
        let part = partition_orbit(&alg, &dom, 10).unwrap();
        let mut count = part.interior.len();
        for (root, depth) in &part.roots {
            walk_subtree(&alg, root, *depth, (), &|_, _, _| (), &mut |_, _, _| count += 1);
        }
        assert_eq!(count, 120);
    }
}
