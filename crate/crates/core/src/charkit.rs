//! Alternating Weyl sums and characters of E7/E8 (and A_N) evaluated through
//! permutation weights, next to the brute-force and closed-form oracles they
//! are checked against.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::branching::{embedding, Pair};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, DEFAULT_PRIME};
use crate::permweights::phi;
use crate::qpoly::QPolynomial;
use crate::rootsys::{build_algebra, mu_coords, to_mu, AlgebraData, AlgebraKind, Weight};
use crate::schur::{alternant, EvalContext, ExponentVector};
use crate::weyl::{orbit_size, partition_orbit, walk_subtree, Sign, DEFAULT_ORBIT_CAP};

/// Linear map from source Dynkin labels to μ-exponents of an alphabet.
///
/// Row i is the exponent vector of the i-th fundamental weight's image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMap {
    pub source: AlgebraKind,
    rows: Vec<Vec<i64>>,
}

impl ExponentMap {
    /// A(n) labels to their own μ-coordinates (n+1 letters).
    pub fn identity(kind: AlgebraKind) -> Result<Self> {
        if !kind.is_a() {
            return Err(Error::UnsupportedAlgebra(format!("{kind} has no μ-basis")));
        }
        let rank = kind.rank();
        let rows = (0..rank)
            .map(|i| {
                let mut e = vec![0; rank];
                e[i] = 1;
                mu_coords(&e).coords
            })
            .collect();
        Ok(ExponentMap { source: kind, rows })
    }

    /// Projection to the A side for E pairs; the identity on A(n) for
    /// (A_n, A_{n−1}), whose direct sum runs with u_{n+1} = 1.
    pub fn for_pair(pair: Pair) -> Result<Self> {
        match pair {
            Pair::An(n) => Self::identity(AlgebraKind::A(n)),
            _ => {
                let map = embedding(pair)?;
                let rows = map.matrix.iter().map(|r| mu_coords(r).coords).collect();
                Ok(ExponentMap {
                    source: pair.source(),
                    rows,
                })
            }
        }
    }

    pub fn alphabet(&self) -> usize {
        self.rows.first().map_or(1, Vec::len)
    }

    pub fn apply(&self, labels: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.alphabet()];
        for (a, row) in labels.iter().zip(&self.rows) {
            if *a != 0 {
                for (o, r) in out.iter_mut().zip(row) {
                    *o += a * r;
                }
            }
        }
        out
    }
}

/// The context a direct sum for `pair` runs in, given the pair's context.
pub fn direct_context<F: Field>(pair: Pair, ctx: &EvalContext<F>) -> EvalContext<F> {
    match pair {
        Pair::An(_) => ctx.extend_with_one(),
        _ => ctx.clone(),
    }
}

const POW_TABLE: usize = 48;

/// Prepared state for streaming Σ ε(μ) u^{map(μ)} over an orbit tree.
pub(crate) struct DirectSum<'a, F> {
    alg: &'a AlgebraData,
    map: &'a ExponentMap,
    ctx: &'a EvalContext<F>,
    /// pows[i][a] = (u^{map(α_i)})^{−a}
    pows: Vec<Vec<F>>,
    step_base: Vec<F>,
}

impl<'a, F: Field> DirectSum<'a, F> {
    pub(crate) fn new(
        alg: &'a AlgebraData,
        map: &'a ExponentMap,
        ctx: &'a EvalContext<F>,
    ) -> Result<Self> {
        if map.alphabet() != ctx.values().len() {
            return Err(Error::ContextMismatch {
                expected: map.alphabet(),
                got: ctx.values().len(),
            });
        }
        if map.source != alg.kind {
            return Err(Error::UnsupportedAlgebra(format!(
                "exponent map for {} used on {}",
                map.source, alg.kind
            )));
        }
        let step_base: Vec<F> = alg
            .cartan
            .iter()
            .map(|row| {
                ctx.monomial(&map.apply(row))
                    .inv()
                    .expect("monomials of nonzero values")
            })
            .collect();
        let pows = step_base
            .iter()
            .map(|b| {
                let mut t = Vec::with_capacity(POW_TABLE);
                let mut acc = b.one();
                for _ in 0..POW_TABLE {
                    t.push(acc.clone());
                    acc = acc.mul(b);
                }
                t
            })
            .collect();
        Ok(DirectSum {
            alg,
            map,
            ctx,
            pows,
            step_base,
        })
    }

    fn step(&self, carry: &F, i: usize, a: i64) -> F {
        let a = a as usize;
        match self.pows[i].get(a) {
            Some(p) => carry.mul(p),
            None => carry.mul(&self.step_base[i].pow(a as u64)),
        }
    }

    pub(crate) fn monomial(&self, labels: &[i64]) -> F {
        self.ctx.monomial(&self.map.apply(labels))
    }

    /// Signed sum over the subtree rooted at `root`.
    pub(crate) fn subtree(&self, root: &[i64], depth: usize) -> F {
        let zero = self.step_base[0].zero();
        let mut plus = zero.clone();
        let mut minus = zero;
        walk_subtree(
            self.alg,
            root,
            depth,
            self.monomial(root),
            &|c: &F, i, a| self.step(c, i, a),
            &mut |_, d, c: &F| {
                if d % 2 == 0 {
                    plus = plus.add(c);
                } else {
                    minus = minus.add(c);
                }
            },
        );
        plus.sub(&minus)
    }

    pub(crate) fn node(&self, labels: &[i64], depth: usize) -> F {
        let m = self.monomial(labels);
        if depth.is_multiple_of(2) {
            m
        } else {
            m.neg()
        }
    }
}

/// Σ_{μ ∈ W(Λ++)} ε(μ) u^{map(μ)} by streaming the orbit, refusing orbits
/// above [`DEFAULT_ORBIT_CAP`].
pub fn weyl_sum_direct<F: Field>(
    alg: &AlgebraData,
    dominant: &Weight,
    map: &ExponentMap,
    ctx: &EvalContext<F>,
) -> Result<F> {
    weyl_sum_direct_with_cap(alg, dominant, map, ctx, DEFAULT_ORBIT_CAP)
}

pub fn weyl_sum_direct_with_cap<F: Field>(
    alg: &AlgebraData,
    dominant: &Weight,
    map: &ExponentMap,
    ctx: &EvalContext<F>,
    cap: u64,
) -> Result<F> {
    alg.check_weight(dominant)?;
    if !dominant.is_strictly_dominant() {
        return Err(Error::NotStrictlyDominant(dominant.labels.clone()));
    }
    let size = orbit_size(alg, dominant)?;
    if size > BigUint::from(cap) {
        return Err(Error::OrbitCapExceeded {
            size: size.to_string(),
            cap,
        });
    }
    let sum = DirectSum::new(alg, map, ctx)?;
    let blocks = 16 * rayon::current_num_threads().max(1);
    let part = partition_orbit(alg, dominant, blocks)?;
    let partials: Vec<F> = part
        .roots
        .par_iter()
        .map(|(labels, depth)| sum.subtree(labels, *depth))
        .collect();
    let mut total = ctx.values()[0].zero();
    for (labels, depth) in &part.interior {
        total = total.add(&sum.node(labels, *depth));
    }
    for p in &partials {
        total = total.add(p);
    }
    Ok(total)
}

/// One signed alternant of the subalgebra side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternantTerm {
    pub sign: Sign,
    pub exps: ExponentVector,
}

/// φ(Λ++) as exponent vectors ready for evaluation.
pub fn permweight_terms(pair: Pair, dominant: &Weight) -> Result<Vec<AlternantTerm>> {
    phi(pair, dominant)?
        .into_iter()
        .map(|s| {
            Ok(AlternantTerm {
                sign: s.sign,
                exps: ExponentVector::new(to_mu(&s.weight)?.coords),
            })
        })
        .collect()
}

pub fn sum_terms<F: Field>(terms: &[AlternantTerm], ctx: &EvalContext<F>) -> Result<F> {
    let mut total = ctx.values()[0].zero();
    for t in terms {
        let a = alternant(&t.exps, ctx)?;
        total = match t.sign {
            Sign::Plus => total.add(&a),
            Sign::Minus => total.sub(&a),
        };
    }
    Ok(total)
}

/// Σ_{φ(Λ++)} sign · alternant(φ): 72 terms for E7, 1920 for E8, n+1 for A_n.
pub fn weyl_sum_permweights<F: Field>(
    pair: Pair,
    dominant: &Weight,
    ctx: &EvalContext<F>,
) -> Result<F> {
    sum_terms(&permweight_terms(pair, dominant)?, ctx)
}

/// Weyl character χ_Λ = A(Λ+ρ) / A(ρ) at `ctx`.
pub fn character<F: Field>(pair: Pair, highest: &Weight, ctx: &EvalContext<F>) -> Result<F> {
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.labels.clone()));
    }
    let rho = Weight::rho(pair.source());
    let den = weyl_sum_permweights(pair, &rho, ctx)?;
    let inv = den.inv().ok_or_else(|| {
        Error::ZeroDenominator("A(ρ) vanishes at these u values; reseed".into())
    })?;
    let num = weyl_sum_permweights(pair, &highest.plus(&rho), ctx)?;
    Ok(num.mul(&inv))
}

/// Π_{α>0} (Λ+ρ, α)/(ρ, α).
pub fn dimension_oracle(alg: &AlgebraData, highest: &Weight) -> Result<BigUint> {
    alg.check_weight(highest)?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.labels.clone()));
    }
    let rho = alg.rho();
    let shifted = highest.plus(&rho);
    let mut acc = <BigRational as One>::one();
    for root in &alg.positive_roots {
        acc *= BigRational::new(
            BigInt::from(alg.pairing(&shifted, root)),
            BigInt::from(alg.pairing(&rho, root)),
        );
    }
    assert!(acc.is_integer(), "Weyl dimension is an integer");
    Ok(acc
        .to_integer()
        .to_biguint()
        .expect("Weyl dimension is positive"))
}

/// Principal specialization Σ_μ mult(μ) q^{ht(Λ−μ)}, computed from the
/// permutation-weight character mod [`DEFAULT_PRIME`].
pub fn q_dimension(pair: Pair, highest: &Weight) -> Result<QPolynomial> {
    q_dimension_mod(pair, highest, DEFAULT_PRIME)
}

/// u_A = s^{−e_A} with e = m·d − Σd, d the exponents of ρ, turns the character
/// into s^{−K} P(s^m); P is recovered by interpolation at q = s^m.
pub fn q_dimension_mod(pair: Pair, highest: &Weight, prime: u64) -> Result<QPolynomial> {
    let kind = pair.source();
    build_algebra(kind).check_weight(highest)?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.labels.clone()));
    }
    let map = ExponentMap::for_pair(pair)?;
    let m = map.alphabet();
    let rho = Weight::rho(kind);
    let d = map.apply(&rho.labels);
    let total: i64 = d.iter().sum();
    let e: Vec<i64> = d.iter().map(|&x| m as i64 * x - total).collect();
    let c = map.apply(&highest.labels);
    let k: i64 = c.iter().zip(&e).map(|(a, b)| a * b).sum();
    if k < 0 || (2 * k) % m as i64 != 0 {
        return Err(Error::UnsupportedPair(format!(
            "{pair}: grading exponent {k} does not fit alphabet {m}"
        )));
    }
    let degree = (2 * k / m as i64) as usize;

    let shifted = highest.plus(&rho);
    let (num_terms, den_terms) = match pair {
        Pair::An(_) => {
            let term = |w: &Weight| -> Result<Vec<AlternantTerm>> {
                Ok(vec![AlternantTerm {
                    sign: Sign::Plus,
                    exps: ExponentVector::new(to_mu(w)?.coords),
                }])
            };
            (term(&shifted)?, term(&rho)?)
        }
        _ => (
            permweight_terms(pair, &shifted)?,
            permweight_terms(pair, &rho)?,
        ),
    };

    let unit = Fp::new(1, prime)?;
    let point = |s: u64| -> Result<Option<(Fp, Fp)>> {
        let base = unit.from_i64(s as i64);
        let free: Vec<Fp> = e[..m - 1]
            .iter()
            .map(|&ea| base.powi(-ea).expect("s is nonzero mod p"))
            .collect();
        let ctx = EvalContext::from_free(free)?;
        let Some(den_inv) = sum_terms(&den_terms, &ctx)?.inv() else {
            return Ok(None);
        };
        let num = sum_terms(&num_terms, &ctx)?;
        Ok(Some((
            base.pow(m as u64),
            num.mul(&den_inv).mul(&base.pow(k as u64)),
        )))
    };
    let mut xs = Vec::with_capacity(degree + 1);
    let mut ys = Vec::with_capacity(degree + 1);
    let mut next = 2u64;
    while xs.len() <= degree {
        let want = (degree + 1 - xs.len()) as u64;
        let batch: Vec<Option<(Fp, Fp)>> = (next..next + want)
            .into_par_iter()
            .map(point)
            .collect::<Result<_>>()?;
        next += want;
        for (x, y) in batch.into_iter().flatten() {
            xs.push(x);
            ys.push(y);
        }
    }
    let coeffs = interpolate(&xs, &ys);
    let residues: Vec<u64> = coeffs.iter().map(Fp::value).collect();
    Ok(QPolynomial::from_residues(&residues, prime))
}

/// Coefficients (low to high) of the polynomial through (xs, ys).
fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> Vec<F> {
    let n = xs.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let step = xs[i].sub(&xs[i - j]).inv().expect("distinct nodes");
            dd[i] = dd[i].sub(&dd[i - 1]).mul(&step);
        }
    }
    let zero = xs[0].zero();
    let mut poly = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly = poly·(x − xs[i]) + dd[i]
        let mut next = vec![zero.clone(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&xs[i]));
        }
        next[0] = next[0].add(&dd[i]);
        poly = next;
    }
    poly
}

/// Dimension as a machine integer, when it fits.
pub fn dimension_u64(alg: &AlgebraData, highest: &Weight) -> Result<Option<u64>> {
    Ok(dimension_oracle(alg, highest)?.to_u64())
}
