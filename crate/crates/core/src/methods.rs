//! Uniform dispatch over the counting methods and a harness that runs every
//! applicable method on one query and compares the results.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::arith::OpCount;
use crate::error::{Error, Result};
use crate::lambda::{count_lambda_unconstrained, enumerate_lambda};
use crate::oracle::{self, EnumBudget};
use crate::spec::PrimarySpec;
use crate::{pascal, perm, subcount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    Subs,
    Perms,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::Subs => "subs",
            CountKind::Perms => "perms",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Sum over `Λ_m(A)`.
    Formula,
    /// Generalized Pascal triangle (subs) or column fold (perms).
    Table,
    /// Bounded-composition window DP; submultisets only.
    Composition,
    /// Brute-force enumeration.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Table => "table",
            Method::Composition => "composition",
            Method::Oracle => "oracle",
        }
    }

    pub fn applicable(kind: CountKind) -> &'static [Method] {
        match kind {
            CountKind::Subs => &[
                Method::Formula,
                Method::Table,
                Method::Composition,
                Method::Oracle,
            ],
            CountKind::Perms => &[Method::Formula, Method::Table, Method::Oracle],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn count(
    kind: CountKind,
    method: Method,
    spec: &PrimarySpec,
    m: u64,
    budget: EnumBudget,
) -> Result<BigUint> {
    count_measured(kind, method, spec, m, budget).map(|(v, _)| v)
}

/// Work a method performed: big-integer operations plus, for the `Λ_m`
/// routes, candidate assignments the enumerator examined.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Work {
    pub arith: OpCount,
    pub enum_steps: u64,
}

impl Work {
    pub fn total(&self) -> u64 {
        self.arith.0 + self.enum_steps
    }
}

/// Runs one method, returning the value and, where the method is
/// instrumented, the work it performed.
fn count_measured(
    kind: CountKind,
    method: Method,
    spec: &PrimarySpec,
    m: u64,
    budget: EnumBudget,
) -> Result<(BigUint, Option<Work>)> {
    use CountKind::*;
    use Method::*;
    Ok(match (kind, method) {
        (Subs, Formula) => {
            let mut arith = OpCount::default();
            let (v, enum_steps) = subcount::count_subs_general_counted(spec, m, &mut arith);
            (v, Some(Work { arith, enum_steps }))
        }
        (Subs, Table) => {
            let mut arith = OpCount::default();
            let v = pascal::count_subs_dp_counted(spec, m, &mut arith);
            (
                v,
                Some(Work {
                    arith,
                    enum_steps: 0,
                }),
            )
        }
        (Subs, Composition) => (subcount::count_subs_composition(spec, m), None),
        (Subs, Oracle) => (oracle::count_subs_brute(spec, m, budget)?, None),
        (Perms, Formula) => {
            let (v, stats) = perm::count_perms_general_counted(spec, m);
            let work = Work {
                arith: stats.ops,
                enum_steps: stats.visited,
            };
            (v, Some(work))
        }
        (Perms, Table) => {
            let (v, arith) = perm::count_perms_dp_counted(spec, m);
            (
                v,
                Some(Work {
                    arith,
                    enum_steps: 0,
                }),
            )
        }
        (Perms, Composition) => {
            return Err(Error::Precondition(
                "the composition method counts submultisets only".into(),
            ))
        }
        (Perms, Oracle) => (oracle::count_perms_brute(spec, m, budget)?, None),
    })
}

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub kind: CountKind,
    pub method: Method,
    pub outcome: std::result::Result<BigUint, Error>,
    pub elapsed: Duration,
    pub work: Option<Work>,
}

/// Size of the `Λ_m(A)` traversal behind the formula routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    /// `s = min(m, r)`.
    pub s: u64,
    /// Members of `Λ_m(A)`.
    pub solutions: u64,
    /// Partial assignments the pruned enumerator tried.
    pub visited: u64,
    /// Solutions of `λ_1 + ... + s·λ_s = m` before the suffix constraints.
    pub unconstrained: BigUint,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub m: u64,
    pub runs: Vec<MethodRun>,
    pub lambda: LambdaReport,
}

impl BenchReport {
    /// True when every method of each kind that finished produced the same
    /// value. Budget refusals from the oracle are not disagreements.
    pub fn methods_agree(&self) -> bool {
        [CountKind::Subs, CountKind::Perms].iter().all(|&kind| {
            let mut values = self
                .runs
                .iter()
                .filter(|r| r.kind == kind)
                .filter_map(|r| r.outcome.as_ref().ok());
            match values.next() {
                Some(first) => values.all(|v| v == first),
                None => true,
            }
        })
    }

    pub fn value(&self, kind: CountKind) -> Option<&BigUint> {
        self.runs
            .iter()
            .filter(|r| r.kind == kind)
            .find_map(|r| r.outcome.as_ref().ok())
    }

    pub fn run(&self, kind: CountKind, method: Method) -> Option<&MethodRun> {
        self.runs
            .iter()
            .find(|r| r.kind == kind && r.method == method)
    }
}

pub fn lambda_report(spec: &PrimarySpec, m: u64) -> LambdaReport {
    let kbar = spec.adjoint();
    let s = m.min(spec.max());
    let mut it = enumerate_lambda(m, &kbar);
    let solutions = it.by_ref().count() as u64;
    let weights: Vec<u64> = (1..=s).collect();
    LambdaReport {
        s,
        solutions,
        visited: it.visited(),
        unconstrained: count_lambda_unconstrained(m, &weights),
    }
}

/// Runs every applicable method for both submultisets and permutations.
pub fn bench(spec: &PrimarySpec, m: u64, budget: EnumBudget) -> BenchReport {
    let mut runs = Vec::new();
    for kind in [CountKind::Subs, CountKind::Perms] {
        for &method in Method::applicable(kind) {
            let start = Instant::now();
            let result = count_measured(kind, method, spec, m, budget);
            let elapsed = start.elapsed();
            let (outcome, work) = match result {
                Ok((v, work)) => (Ok(v), work),
                Err(e) => (Err(e), None),
            };
            runs.push(MethodRun {
                kind,
                method,
                outcome,
                elapsed,
                work,
            });
        }
    }
    BenchReport {
        m,
        runs,
        lambda: lambda_report(spec, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_agrees() {
        let spec = PrimarySpec::new(vec![4, 3, 3, 1]);
        let b = EnumBudget::default();
        for &method in Method::applicable(CountKind::Subs) {
            assert_eq!(
                count(CountKind::Subs, method, &spec, 5, b).unwrap(),
                BigUint::from(27u32)
            );
        }
        let spec = PrimarySpec::new(vec![2, 4, 5]);
        for &method in Method::applicable(CountKind::Perms) {
            assert_eq!(
                count(CountKind::Perms, method, &spec, 10, b).unwrap(),
                BigUint::from(6930u32)
            );
        }
        assert!(count(CountKind::Perms, Method::Composition, &spec, 1, b).is_err());
    }

    #[test]
    fn bench_reports_agreement() {
        let report = bench(
            &PrimarySpec::new(vec![4, 3, 3, 1]),
            5,
            EnumBudget::default(),
        );
        assert!(report.methods_agree());
        assert_eq!(report.value(CountKind::Subs), Some(&BigUint::from(27u32)));
        assert_eq!(report.runs.len(), 7);
    }

    #[test]
    fn oracle_refusal_is_not_disagreement() {
        let report = bench(
            &PrimarySpec::new(vec![9; 8]),
            30,
            EnumBudget { max_states: 10 },
        );
        let oracle = report.run(CountKind::Subs, Method::Oracle).unwrap();
        assert!(matches!(oracle.outcome, Err(Error::BudgetExceeded { .. })));
        assert!(report.methods_agree());
    }
}
