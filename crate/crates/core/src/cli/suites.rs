//! Verification suites behind `weylsum verify`.

use std::path::Path;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::branching::{decompose_fundamental, Pair};
use crate::charkit::{
    dimension_oracle, direct_context, q_dimension, weyl_sum_direct, weyl_sum_permweights,
    ExponentMap,
};
use crate::checkpoint::{direct_sum_checkpointed, Progress, RunConfig};
use crate::error::Result;
use crate::field::DEFAULT_PRIME;
use crate::permweights::{frozen_branch_node, resolve_branch_node, verify_tables};
use crate::qpoly::q_weyl_product;
use crate::rootsys::{build_algebra, AlgebraKind, Weight};
use crate::schur::{cascade_identity_check, EvalContext, ExponentVector};
use crate::weyl::{orbit_size, walk_orbit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            schema: "weylsum.report/1",
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Runs `f`, recording PASS on Ok(true), FAIL otherwise.
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }

    fn skip(&mut self, name: &str, detail: &str) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
            elapsed_ms: 0,
        });
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub slow: bool,
    pub checkpoint: std::path::PathBuf,
}

pub const SUITES: [&str; 6] = ["tables", "orbits", "cascade", "oracle-e7", "qdim", "all"];

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<Report> {
    let mut report = if name == "all" {
        let mut r = Report::new("all");
        for s in &SUITES[..5] {
            r.extend(base_suite(s, opts.seed)?);
        }
        r
    } else {
        base_suite(name, opts.seed)?
    };
    if name == "all" || name == "oracle-e7" {
        if opts.slow {
            report.extend(e8_slow(opts.seed, &opts.checkpoint));
        } else {
            report.skip("E8 direct sum", "needs --slow");
        }
    }
    Some(report)
}

fn base_suite(name: &str, seed: u64) -> Option<Report> {
    Some(match name {
        "tables" => tables(),
        "orbits" => orbits(),
        "cascade" => cascade(seed),
        "oracle-e7" => oracle_e7(seed),
        "qdim" => qdim(),
        _ => return None,
    })
}

fn tables() -> Report {
    let mut r = Report::new("tables");
    for pair in [Pair::E7A7, Pair::E8A8] {
        r.run(format!("table {pair}"), || {
            let t = verify_tables(pair)?;
            let detail = if t.passed() {
                format!(
                    "{} words, {} weights, |W(E)|/|W(A)| = {}",
                    t.base_count, t.full_count, t.group_ratio
                )
            } else {
                t.errors.join("; ")
            };
            Ok((t.passed(), detail))
        });
        r.run(format!("branch node {pair}"), || {
            let b = resolve_branch_node(pair)?;
            let frozen = frozen_branch_node(pair.source());
            Ok((Some(b) == frozen, format!("node {} attaches at {b}", pair.source().rank())))
        });
    }
    r
}

fn orbits() -> Report {
    let mut r = Report::new("orbits");
    for (kind, want) in [(AlgebraKind::E7, 2_903_040u64), (AlgebraKind::E8, 696_729_600)] {
        r.run(format!("|W({kind})|"), || {
            let n = orbit_size(&build_algebra(kind), &Weight::rho(kind))?;
            Ok((n == BigUint::from(want), n.to_string()))
        });
    }
    r.run("E7 streaming count", || {
        let mut n = 0u64;
        walk_orbit(&build_algebra(AlgebraKind::E7), &Weight::rho(AlgebraKind::E7), |_, _| n += 1)?;
        Ok((n == 2_903_040, n.to_string()))
    });
    for pair in [Pair::E7A7, Pair::E8A8] {
        let alg = build_algebra(pair.source());
        for i in 1..=pair.source().rank() {
            r.run(format!("decompose {pair} Λ_{i}"), || {
                let d = decompose_fundamental(pair, i)?;
                let total: BigUint = d.part_sizes()?.into_iter().sum();
                let want = orbit_size(&alg, &d.source)?;
                Ok((total == want, format!("{} parts, {total} of {want}", d.parts.len())))
            });
        }
    }
    r
}

/// i_1 > … > i_n > 0 with i_1 ≤ max, followed by the trailing 0.
pub fn strict_exponent_vectors(n: usize, max: i64) -> Vec<ExponentVector> {
    fn go(n: usize, below: i64, cur: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if cur.len() == n {
            let mut e = cur.clone();
            e.push(0);
            out.push(ExponentVector::new(e));
            return;
        }
        let left = (n - cur.len()) as i64;
        for x in (left..below).rev() {
            cur.push(x);
            go(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max + 1, &mut Vec::new(), &mut out);
    out
}

fn cascade(seed: u64) -> Report {
    let mut r = Report::new("cascade");
    for n in 2..=4 {
        r.run(format!("A{n}→A{} exhaustive", n - 1), || {
            let ctx = EvalContext::<BigRational>::random_rational(n - 1, seed)?;
            let vs = strict_exponent_vectors(n, 8);
            let mut bad = 0;
            for v in &vs {
                if !cascade_identity_check(v, &ctx)? {
                    bad += 1;
                }
            }
            Ok((bad == 0, format!("{} exponent vectors, {bad} mismatches", vs.len())))
        });
    }
    r.run("A8→A7 against S9 sums", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = Pair::An(8);
        let alg = build_algebra(AlgebraKind::A(8));
        let map = ExponentMap::for_pair(pair)?;
        let mut bad = 0;
        for k in 0..20 {
            let w = Weight::random_strictly_dominant(AlgebraKind::A(8), 3, &mut rng);
            let ctx = EvalContext::random(7, seed.wrapping_add(k), DEFAULT_PRIME)?;
            let direct = weyl_sum_direct(&alg, &w, &map, &direct_context(pair, &ctx))?;
            if direct != weyl_sum_permweights(pair, &w, &ctx)? {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("20 weights, {bad} mismatches")))
    });
    r
}

fn oracle_e7(seed: u64) -> Report {
    let mut r = Report::new("oracle-e7");
    let alg = build_algebra(AlgebraKind::E7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![Weight::rho(AlgebraKind::E7)];
    weights.extend((0..5).map(|_| Weight::random_strictly_dominant(AlgebraKind::E7, 3, &mut rng)));
    for (k, w) in weights.iter().enumerate() {
        r.run(format!("E7 {w}"), || {
            let ctx = EvalContext::random(7, seed.wrapping_add(k as u64), DEFAULT_PRIME)?;
            let map = ExponentMap::for_pair(Pair::E7A7)?;
            let direct = weyl_sum_direct(&alg, w, &map, &ctx)?;
            let fast = weyl_sum_permweights(Pair::E7A7, w, &ctx)?;
            Ok((direct == fast, format!("direct {direct}, 72-term {fast}")))
        });
    }
    r
}

fn qdim() -> Report {
    let mut r = Report::new("qdim");
    for pair in [Pair::E7A7, Pair::E8A8] {
        let alg = build_algebra(pair.source());
        for i in 1..=pair.source().rank() {
            r.run(format!("q-dimension {pair} Λ_{i}"), || {
                let w = Weight::fundamental(pair.source(), i)?;
                let p = q_dimension(pair, &w)?;
                let oracle = q_weyl_product(&alg, &w)?;
                let dim = BigInt::from(dimension_oracle(&alg, &w)?);
                let ok = p == oracle && p.eval_at_one() == dim && p.is_palindromic();
                Ok((ok, format!("degree {}, dim {}", p.degree(), p.eval_at_one())))
            });
        }
    }
    r
}

fn e8_slow(seed: u64, path: &Path) -> Report {
    let mut r = Report::new("slow");
    r.run("E8 direct sum", || {
        let rho = Weight::rho(AlgebraKind::E8);
        let config = RunConfig::new(DEFAULT_PRIME, seed);
        let Progress::Complete(direct) = direct_sum_checkpointed(Pair::E8A8, &rho, config, path)?
        else {
            return Ok((false, "interrupted".into()));
        };
        let ctx = EvalContext::random(8, seed, DEFAULT_PRIME)?;
        let fast = weyl_sum_permweights(Pair::E8A8, &rho, &ctx)?;
        Ok((direct == fast, format!("direct {direct}, 1920-term {fast}")))
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_vector_enumeration() {
        let v = strict_exponent_vectors(2, 3);
        let got: Vec<_> = v.iter().map(|e| e.exps.clone()).collect();
        assert_eq!(got, vec![vec![3, 2, 0], vec![3, 1, 0], vec![2, 1, 0]]);
        assert_eq!(strict_exponent_vectors(4, 8).len(), 70);
    }

    #[test]
    fn unknown_suite() {
        let opts = SuiteOptions {
            seed: 0,
            slow: false,
            checkpoint: "x".into(),
        };
        assert!(run_suite("nope", &opts).is_none());
    }

    #[test]
    fn failures_make_the_report_fail() {
        let mut r = Report::new("t");
        r.run("ok", || Ok((true, String::new())));
        assert!(r.passed());
        r.run("bad", || Ok((false, String::new())));
        assert!(!r.passed());
    }
}
