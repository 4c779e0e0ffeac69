//! Integer polynomials in q, used for principally specialized characters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{AlgebraData, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    /// coeffs[k] multiplies q^k; no trailing zeros.
    pub coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn one() -> Self {
        QPolynomial::new(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    /// Multiplies in place by (1 − q^b).
    fn mul_one_minus(&mut self, b: usize) {
        let n = self.coeffs.len();
        self.coeffs.resize(n + b, BigInt::zero());
        for k in (b..n + b).rev() {
            let t = self.coeffs[k - b].clone();
            self.coeffs[k] -= t;
        }
    }

    /// Exact division by (1 − q^b); None if it leaves a remainder.
    fn div_one_minus(&self, b: usize) -> Option<QPolynomial> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(self.clone());
        }
        if n <= b {
            return None;
        }
        let mut q = vec![BigInt::zero(); n - b];
        for k in 0..n - b {
            q[k] = self.coeffs[k].clone();
            if k >= b {
                let t = q[k - b].clone();
                q[k] += t;
            }
        }
        // remainder check on the top b coefficients
        for k in n - b..n {
            let back = if k >= b && k - b < q.len() { q[k - b].clone() } else { BigInt::zero() };
            let from_q = if k < q.len() { q[k].clone() } else { BigInt::zero() };
            if from_q - back != self.coeffs[k] {
                return None;
            }
        }
        Some(QPolynomial::new(q))
    }

    /// Integer coefficients given as residues mod p, lifted to (−p/2, p/2].
    pub fn from_residues(residues: &[u64], p: u64) -> Self {
        let half = p / 2;
        QPolynomial::new(
            residues
                .iter()
                .map(|&r| {
                    if r > half {
                        BigInt::from(r) - BigInt::from(p)
                    } else {
                        BigInt::from(r)
                    }
                })
                .collect(),
        )
    }

    /// Whether every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Largest coefficient magnitude, in bits.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show = k == 0 || !mag.is_one();
            match (show, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}q")?,
                (false, 1) => write!(f, "q")?,
                (true, _) => write!(f, "{mag}q^{k}")?,
                (false, _) => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Π_{α>0} (1 − q^{(Λ+ρ,α)}) / (1 − q^{(ρ,α)}), by exact integer arithmetic.
pub fn q_weyl_product(alg: &AlgebraData, dominant: &Weight) -> Result<QPolynomial> {
    alg.check_weight(dominant)?;
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.labels.clone()));
    }
    let rho = alg.rho();
    let shifted = dominant.plus(&rho);
    let mut p = QPolynomial::one();
    let mut denominators = Vec::new();
    for root in &alg.positive_roots {
        let top = alg.pairing(&shifted, root) as usize;
        let bottom = alg.pairing(&rho, root) as usize;
        if top != bottom {
            p.mul_one_minus(top);
            denominators.push(bottom);
        }
    }
    for b in denominators {
        p = p
            .div_one_minus(b)
            .ok_or_else(|| Error::ZeroDenominator(format!("1 - q^{b} does not divide")))?;
    }
    Ok(p)
}

/// 2(Λ, ρ): the degree of the q-dimension polynomial.
pub fn q_degree(alg: &AlgebraData, dominant: &Weight) -> usize {
    alg.positive_roots
        .iter()
        .map(|r| alg.pairing(dominant, r))
        .sum::<i64>()
        .to_usize()
        .unwrap_or(0)
}
