//! Alternants and Schur functions for A-type algebras, and the cascade that
//! splits an A_N alternant into N+1 signed A_{N−1} alternants.
//!
//! A strictly dominant A_N weight is written through its μ-basis exponents
//! (i_1 > i_2 > … > i_N > 0, 0). Under e^{μ_A} ↦ u_A with Π u_A = 1 its
//! alternating orbit sum is the generalized Vandermonde det[u_A^{i_J}].

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::linalg::det;
use crate::rootsys::{from_mu, to_mu, Weight};
use crate::weyl::Sign;

/// μ-basis exponents (i_1, …, i_{n+1}) of an A(n) weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    pub exps: Vec<i64>,
}

impl ExponentVector {
    pub fn new(exps: Vec<i64>) -> Self {
        ExponentVector { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len().saturating_sub(1)
    }

    /// i_1 > i_2 > … > i_{n+1} = 0.
    pub fn is_strict_partition_shape(&self) -> bool {
        self.exps.last() == Some(&0) && self.exps.windows(2).all(|p| p[0] > p[1])
    }

    /// (n, n−1, …, 0).
    pub fn staircase(n: usize) -> Self {
        ExponentVector {
            exps: (0..=n as i64).rev().collect(),
        }
    }

    /// partition + staircase, padding the partition with zeros to n+1 parts.
    pub fn from_partition(partition: &[i64], n: usize) -> Result<Self> {
        if partition.len() > n + 1 {
            return Err(Error::Parse(format!(
                "partition {partition:?} has more than {} parts",
                n + 1
            )));
        }
        if partition.windows(2).any(|p| p[0] < p[1]) || partition.iter().any(|&p| p < 0) {
            return Err(Error::Parse(format!("{partition:?} is not a partition")));
        }
        let exps = (0..=n)
            .map(|k| partition.get(k).copied().unwrap_or(0) + (n - k) as i64)
            .collect();
        Ok(ExponentVector { exps })
    }

    /// Inverse of [`from_partition`](Self::from_partition) with trailing zeros dropped.
    pub fn partition(&self) -> Vec<i64> {
        let n = self.n();
        let mut p: Vec<i64> = self
            .exps
            .iter()
            .enumerate()
            .map(|(k, e)| e - (n - k) as i64)
            .collect();
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }
}

/// Exponent vector of a strictly dominant A(n) weight.
pub fn exponent_vector(w: &Weight) -> Result<ExponentVector> {
    if !w.is_strictly_dominant() {
        return Err(Error::NotStrictlyDominant(w.labels.clone()));
    }
    Ok(ExponentVector::new(to_mu(w)?.coords))
}

/// One of the n+1 signed A(n−1) pieces of an A(n) alternant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeTerm {
    /// n exponents of an A(n−1) weight.
    pub exps: ExponentVector,
    pub sign: Sign,
    /// 1-based term index I; sign = (−1)^{I+1}.
    pub index: usize,
}

impl CascadeTerm {
    /// The A(n−1) dominant weight carried by this term.
    pub fn weight(&self) -> Result<Weight> {
        from_mu(&crate::rootsys::MuVector::new(self.exps.exps.clone()))
    }
}

/// Term 1 drops the trailing 0; term I ≥ 2 deletes i_{n+2−I} and appends 0.
pub fn cascade(v: &ExponentVector) -> Result<Vec<CascadeTerm>> {
    if !v.is_strict_partition_shape() || v.n() == 0 {
        return Err(Error::NotStrictlyDominant(v.exps.clone()));
    }
    let n = v.n();
    let head = &v.exps[..n];
    let terms = (1..=n + 1)
        .map(|index| {
            let exps = if index == 1 {
                head.to_vec()
            } else {
                let drop = n + 1 - index;
                let mut e: Vec<i64> = head
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &x)| x)
                    .collect();
                e.push(0);
                e
            };
            CascadeTerm {
                exps: ExponentVector::new(exps),
                sign: Sign::from_parity(index + 1),
                index,
            }
        })
        .collect();
    Ok(terms)
}

/// Values u_1, …, u_{n+1} of the μ-basis exponentials, with Π u_A = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalContext<F> {
    u: Vec<F>,
}

impl<F: Field> EvalContext<F> {
    /// Takes u_1..u_n and derives u_{n+1} = (u_1 ⋯ u_n)^{-1}.
    pub fn from_free(free: Vec<F>) -> Result<Self> {
        let first = free.first().ok_or(Error::ContextMismatch {
            expected: 1,
            got: 0,
        })?;
        let mut prod = first.one();
        for x in &free {
            if x.is_zero() {
                return Err(Error::ZeroCoordinate);
            }
            prod = prod.mul(x);
        }
        let mut u = free;
        u.push(prod.inv().expect("product of nonzero values"));
        Ok(EvalContext { u })
    }

    /// Rank n of the A(n) algebra (n+1 variables).
    pub fn n(&self) -> usize {
        self.u.len() - 1
    }

    pub fn values(&self) -> &[F] {
        &self.u
    }

    /// A(n+1) context with the extra variable fixed to 1.
    pub fn extend_with_one(&self) -> EvalContext<F> {
        let mut u = self.u.clone();
        u.push(u[0].one());
        EvalContext { u }
    }

    /// Swaps two variables; the product constraint is preserved.
    pub fn swapped(&self, a: usize, b: usize) -> EvalContext<F> {
        let mut u = self.u.clone();
        u.swap(a, b);
        EvalContext { u }
    }

    pub fn is_pairwise_distinct(&self) -> bool {
        (0..self.u.len()).all(|i| (i + 1..self.u.len()).all(|j| self.u[i] != self.u[j]))
    }

    /// Monomial Π u_A^{c_A}; negative exponents allowed.
    pub fn monomial(&self, exps: &[i64]) -> F {
        let mut acc = self.u[0].one();
        for (x, &e) in self.u.iter().zip(exps) {
            if e != 0 {
                acc = acc.mul(&x.powi(e).expect("context values are nonzero"));
            }
        }
        acc
    }
}

impl EvalContext<Fp> {
    /// Seeded context with n free values uniform in [1, p).
    pub fn random(n: usize, seed: u64, prime: u64) -> Result<Self> {
        Fp::new(1, prime)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let free = (0..n)
            .map(|_| Fp::reduce(rng.gen_range(1..prime), prime))
            .collect::<Vec<_>>();
        EvalContext::from_free(free)
    }
}

impl EvalContext<BigRational> {
    /// Seeded context of small rationals a/b (1 ≤ a, b ≤ 20), resampled until
    /// all n+1 values are pairwise distinct.
    pub fn random_rational(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let free = (0..n)
                .map(|_| {
                    let a: i64 = rng.gen_range(1..=20);
                    let b: i64 = rng.gen_range(1..=20);
                    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                    BigRational::new(BigInt::from(s * a), BigInt::from(b))
                })
                .collect();
            let ctx = EvalContext::from_free(free)?;
            if ctx.is_pairwise_distinct() {
                return Ok(ctx);
            }
        }
    }
}

fn check_size<F>(exps: &ExponentVector, ctx: &EvalContext<F>) -> Result<()>
where
    F: Field,
{
    if exps.exps.len() != ctx.u.len() {
        return Err(Error::ContextMismatch {
            expected: exps.exps.len(),
            got: ctx.u.len(),
        });
    }
    Ok(())
}

/// det[u_A^{exps_J}], the signed orbit sum of the weight with these exponents.
pub fn alternant<F: Field>(v: &ExponentVector, ctx: &EvalContext<F>) -> Result<F> {
    check_size(v, ctx)?;
    let m = ctx
        .u
        .iter()
        .map(|x| {
            let x_inv = x.inv().expect("context values are nonzero");
            v.exps
                .iter()
                .map(|&e| {
                    if e >= 0 {
                        x.pow(e as u64)
                    } else {
                        x_inv.pow(e.unsigned_abs())
                    }
                })
                .collect()
        })
        .collect();
    Ok(det(m, &ctx.u[0]))
}

/// Checks A_n(v) at (u_1..u_n, 1) against Σ_I sign_I · A_{n−1}(term_I) at
/// (u_1..u_n). `ctx` is the A(n−1) context.
pub fn cascade_identity_check<F: Field>(v: &ExponentVector, ctx: &EvalContext<F>) -> Result<bool> {
    let terms = cascade(v)?;
    let full = ctx.extend_with_one();
    let lhs = alternant(v, &full)?;
    let mut rhs = ctx.u[0].zero();
    for t in &terms {
        let a = alternant(&t.exps, ctx)?;
        rhs = match t.sign {
            Sign::Plus => rhs.add(&a),
            Sign::Minus => rhs.sub(&a),
        };
    }
    Ok(lhs == rhs)
}

/// alternant(v) / alternant(staircase).
pub fn schur<F: Field>(v: &ExponentVector, ctx: &EvalContext<F>) -> Result<F> {
    let denom = alternant(&ExponentVector::staircase(ctx.n()), ctx)?;
    let inv = denom
        .inv()
        .ok_or_else(|| Error::ZeroDenominator("u values are not pairwise distinct".into()))?;
    Ok(alternant(v, ctx)?.mul(&inv))
}

pub fn schur_of_partition<F: Field>(partition: &[i64], ctx: &EvalContext<F>) -> Result<F> {
    schur(&ExponentVector::from_partition(partition, ctx.n())?, ctx)
}

/// Σ over semistandard tableaux of the given shape with entries 1..=n+1 of
/// Π u_entry. Exponential in |partition|; desk-scale only.
pub fn schur_tableau_oracle<F: Field>(partition: &[i64], ctx: &EvalContext<F>) -> Result<F> {
    let letters = ctx.u.len();
    let shape: Vec<usize> = partition
        .iter()
        .copied()
        .filter(|&p| p > 0)
        .map(|p| p as usize)
        .collect();
    if shape.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::Parse(format!("{partition:?} is not a partition")));
    }
    let one = ctx.u[0].one();
    if shape.len() > letters {
        return Ok(one.zero());
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut total = one.zero();
    fill(&cells, 0, &mut grid, letters, ctx, one, &mut total);
    Ok(total)
}

fn fill<F: Field>(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut Vec<Vec<usize>>,
    letters: usize,
    ctx: &EvalContext<F>,
    acc: F,
    total: &mut F,
) {
    let Some(&(r, c)) = cells.get(k) else {
        *total = total.add(&acc);
        return;
    };
    let min_row = if c > 0 { grid[r][c - 1] } else { 0 };
    let min_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
    for x in min_row.max(min_col)..letters {
        grid[r][c] = x;
        let next = acc.mul(&ctx.u[x]);
        fill(cells, k + 1, grid, letters, ctx, next, total);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, DEFAULT_PRIME};
    use crate::rootsys::AlgebraKind;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    /// Σ_σ sgn(σ) Π_A u_A^{e_σ(A)}, by Heap's algorithm over all permutations.
    fn permutation_sum<F: Field>(e: &[i64], ctx: &EvalContext<F>) -> F {
        let n = e.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0; n];
        let mut sign = 1i64;
        let term = |perm: &[usize]| {
            let exps: Vec<i64> = perm.iter().map(|&j| e[j]).collect();
            ctx.monomial(&exps)
        };
        let mut total = term(&perm);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                let t = term(&perm);
                total = if sign > 0 { total.add(&t) } else { total.sub(&t) };
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(
            exponent_vector(&Weight::rho(AlgebraKind::A(8))).unwrap().exps,
            vec![8, 7, 6, 5, 4, 3, 2, 1, 0]
        );
        assert_eq!(
            exponent_vector(&Weight::new(AlgebraKind::A(1), vec![2]).unwrap()).unwrap().exps,
            vec![2, 0]
        );
        assert_eq!(
            exponent_vector(&Weight::new(AlgebraKind::A(2), vec![1, 2]).unwrap()).unwrap().exps,
            vec![3, 2, 0]
        );
        assert!(exponent_vector(&Weight::new(AlgebraKind::A(2), vec![1, 0]).unwrap()).is_err());
    }

    #[test]
    fn cascade_of_a8_rho() {
        let terms = cascade(&ExponentVector::staircase(8)).unwrap();
        assert_eq!(terms.len(), 9);
        assert_eq!(terms[1].exps.exps, vec![8, 7, 6, 5, 4, 3, 2, 0]);
        assert_eq!(terms[1].sign, Sign::Minus);
        assert_eq!(terms[8].exps.exps, vec![7, 6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(terms[8].sign, Sign::Plus);
        assert!(cascade(&ev(&[3, 3, 0])).is_err());
    }

    #[test]
    fn cascade_of_a2_matches_grouping_by_last_slot() {
        // S3 sum grouped by which exponent sits in the third slot:
        // 0 → +(i1,i2), i2 → −(i1,0), i1 → +(i2,0)
        let terms = cascade(&ev(&[5, 2, 0])).unwrap();
        let got: Vec<_> = terms.iter().map(|t| (t.sign, t.exps.exps.clone())).collect();
        assert_eq!(
            got,
            vec![
                (Sign::Plus, vec![5, 2]),
                (Sign::Minus, vec![5, 0]),
                (Sign::Plus, vec![2, 0]),
            ]
        );
    }

    #[test]
    fn a1_alternant() {
        let u = q("3/2");
        let ctx = EvalContext::from_free(vec![u.clone()]).unwrap();
        let want = u.powi(2).unwrap().sub(&u.powi(-2).unwrap());
        assert_eq!(alternant(&ev(&[2, 0]), &ctx).unwrap(), want);
        assert_eq!(alternant(&ev(&[4, 4]), &ctx).unwrap(), q("0"));
    }

    #[test]
    fn a2_alternant_matches_permutation_sum() {
        let ctx = EvalContext::from_free(vec![q("2"), q("-5/3")]).unwrap();
        for e in [[2, 1, 0], [5, 3, 0], [4, 1, 0]] {
            assert_eq!(alternant(&ev(&e), &ctx).unwrap(), permutation_sum(&e, &ctx));
        }
    }

    #[test]
    fn cascade_identity_small_cases() {
        let ctx = EvalContext::from_free(vec![q("3")]).unwrap();
        assert!(cascade_identity_check(&ev(&[2, 1, 0]), &ctx).unwrap());
        let ctx = EvalContext::from_free(vec![q("2"), q("-1/7")]).unwrap();
        assert!(cascade_identity_check(&ev(&[6, 4, 1, 0]), &ctx).unwrap());
    }

    #[test]
    fn cascade_identity_a8_mod_p_against_permutations() {
        let ctx = EvalContext::random(7, 11, DEFAULT_PRIME).unwrap();
        let v = ExponentVector::staircase(8);
        let full = ctx.extend_with_one();
        let brute = permutation_sum(&v.exps, &full);
        let mut rhs = ctx.values()[0].zero();
        for t in cascade(&v).unwrap() {
            let a = alternant(&t.exps, &ctx).unwrap();
            rhs = if t.sign == Sign::Plus { rhs.add(&a) } else { rhs.sub(&a) };
        }
        assert_eq!(brute, rhs);
        assert!(cascade_identity_check(&v, &ctx).unwrap());
    }

    #[test]
    fn schur_elementary_cases() {
        let ctx = EvalContext::from_free(vec![q("2"), q("3")]).unwrap();
        let sum = q("2") + q("3") + q("1/6");
        assert_eq!(schur_of_partition(&[1], &ctx).unwrap(), sum);
        assert_eq!(schur_of_partition(&[], &ctx).unwrap(), q("1"));
        let e2 = q("2") * q("3") + q("2") * q("1/6") + q("3") * q("1/6");
        assert_eq!(schur_of_partition(&[1, 1], &ctx).unwrap(), e2);
    }

    #[test]
    fn tableau_oracle_counts() {
        // shape (2,1) over 3 letters has 8 tableaux
        let ones = EvalContext::from_free(vec![q("1"), q("1")]).unwrap();
        assert_eq!(schur_tableau_oracle(&[2, 1], &ones).unwrap(), q("8"));
        assert_eq!(schur_tableau_oracle(&[1], &ones).unwrap(), q("3"));
        assert_eq!(schur_tableau_oracle(&[], &ones).unwrap(), q("1"));
        assert_eq!(schur_tableau_oracle(&[1, 1, 1, 1], &ones).unwrap(), q("0"));
    }

    #[test]
    fn schur_needs_distinct_values() {
        let ctx = EvalContext::from_free(vec![q("2"), q("2")]).unwrap();
        assert!(matches!(
            schur_of_partition(&[1], &ctx),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn context_rejects_zero() {
        assert_eq!(
            EvalContext::from_free(vec![q("0")]).unwrap_err(),
            Error::ZeroCoordinate
        );
    }

    #[test]
    fn partition_round_trip() {
        let v = ExponentVector::from_partition(&[3, 1], 3).unwrap();
        assert_eq!(v.exps, vec![6, 3, 1, 0]);
        assert_eq!(v.partition(), vec![3, 1]);
        assert!(ExponentVector::from_partition(&[1, 2], 3).is_err());
    }
}
