//! Property checks shared by the proptest suite and the acceptance run.
//! Each returns `Err` with a description of the first violation.

#![allow(dead_code)]

use multicomb::arith::{binom, factorial, multinomial};
use multicomb::lambda::{enumerate_lambda, enumerate_unconstrained};
use multicomb::oracle::{count_perms_brute, count_subs_brute, EnumBudget};
use multicomb::pascal::{build_subs_table, count_subs_dp};
use multicomb::perm::{count_perms_dp, count_perms_full, count_perms_general};
use multicomb::spec::{
    check_spec_identities, multiboolean_cardinality, spec_transform, SpecVector, Transform,
};
use multicomb::subcount::{constant_by_system, count_subs_composition, count_subs_general};
use multicomb::{parse_multiset, PrimarySpec};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn adjoint_involution(spec: &PrimarySpec) -> Check {
    let back = spec.adjoint().to_primary().adjoint().to_primary();
    ensure(&back == spec, || {
        format!("adjoint of adjoint of {spec} is {back}")
    })
}

pub fn transform_round_trip(v: &[i64]) -> Check {
    let v = SpecVector(v.iter().map(|&x| BigInt::from(x)).collect());
    let there = spec_transform(&spec_transform(&v, Transform::M), Transform::MInverse);
    let back = spec_transform(&spec_transform(&v, Transform::MInverse), Transform::M);
    ensure(there == v && back == v, || {
        format!("round trip failed for {:?}", v.0)
    })
}

pub fn identities(spec: &PrimarySpec) -> Check {
    let report = check_spec_identities(spec);
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    ensure(report.checks.len() == 12 && failed.is_empty(), || {
        format!("{spec}: {} checks, failing {failed:?}", report.checks.len())
    })
}

pub fn subs_total(spec: &PrimarySpec) -> Check {
    let sum: BigUint = build_subs_table(spec, false).final_row().iter().sum();
    let expected = multiboolean_cardinality(spec);
    ensure(sum == expected, || {
        format!("{spec}: row sum {sum}, expected {expected}")
    })
}

pub fn subs_symmetry(spec: &PrimarySpec, m: u64) -> Check {
    let total = spec.total();
    let m = m.min(total);
    let a = count_subs_composition(spec, m);
    let b = count_subs_composition(spec, total - m);
    ensure(a == b, || {
        format!("{spec}: C_{m} = {a} but C_{} = {b}", total - m)
    })
}

pub fn subs_methods_agree(spec: &PrimarySpec, m: u64) -> Check {
    let formula = count_subs_general(spec, m);
    let composition = count_subs_composition(spec, m);
    let table = count_subs_dp(spec, m);
    let oracle = count_subs_brute(spec, m, EnumBudget::default()).map_err(|e| e.to_string())?;
    ensure(
        formula == composition && composition == table && table == oracle,
        || {
            format!("{spec}, m={m}: formula {formula}, composition {composition}, table {table}, oracle {oracle}")
        },
    )
}

pub fn perms_methods_agree(spec: &PrimarySpec, m: u64) -> Check {
    let formula = count_perms_general(spec, m);
    let table = count_perms_dp(spec, m);
    let oracle = count_perms_brute(spec, m, EnumBudget::default()).map_err(|e| e.to_string())?;
    ensure(formula == table && table == oracle, || {
        format!("{spec}, m={m}: formula {formula}, table {table}, oracle {oracle}")
    })
}

pub fn perms_top_is_multinomial(spec: &PrimarySpec) -> Check {
    let total = spec.total();
    if total == 0 {
        return ensure(count_perms_dp(spec, 0).is_one(), || {
            "P_0 of the empty multiset".into()
        });
    }
    let full = count_perms_full(spec);
    let top = count_perms_dp(spec, total);
    let below = count_perms_general(spec, total - 1);
    ensure(top == full && below == full, || {
        format!("{spec}: P_|A| = {top}, P_|A|-1 = {below}, multinomial {full}")
    })
}

/// Sets, and unbounded multisets clamped at `m`.
pub fn reductions(n: u64, m: u64) -> Check {
    let set = PrimarySpec::new(vec![1; n as usize]);
    let falling = if m > n {
        BigUint::zero()
    } else {
        factorial(n) / factorial(n - m)
    };
    ensure(
        count_subs_general(&set, m) == binom(n as i64, m as i64),
        || format!("set of {n}: C_{m} is not binom(n, m)"),
    )?;
    ensure(count_perms_general(&set, m) == falling, || {
        format!("set of {n}: P_{m} is not n!/(n-m)!")
    })?;

    let text = vec!["inf"; n as usize].join(",");
    let unbounded = parse_multiset(&text)
        .and_then(|p| p.multiset.primary_spec(Some(m)))
        .map_err(|e| e.to_string())?;
    let repeat = binom(n as i64 + m as i64 - 1, m as i64);
    let words = BigUint::from(n).pow(m as u32);
    ensure(count_subs_dp(&unbounded, m) == repeat, || {
        format!("{n} unbounded: C_{m} is not binom(n+m-1, m)")
    })?;
    ensure(count_perms_dp(&unbounded, m) == words, || {
        format!("{n} unbounded: P_{m} is not n^m")
    })
}

/// Both constant-multiset sums with `q = m` collapse to `binom(n+m-1, m)`.
pub fn constant_sum_identities(n: u64, m: u64) -> Check {
    let expected = binom(n as i64 + m as i64 - 1, m as i64);
    let by_lambda: BigUint = enumerate_unconstrained(m, m as usize)
        .filter_map(|sol| {
            let used: u64 = sol.lambda.iter().sum();
            (used <= n).then(|| {
                let mut parts = sol.lambda.clone();
                parts.push(n - used);
                multinomial(&parts)
            })
        })
        .sum();
    let by_system = constant_by_system(m, n, m);
    ensure(by_lambda == expected && by_system == expected, || {
        format!("n={n}, m={m}: lambda sum {by_lambda}, system sum {by_system}, expected {expected}")
    })
}

/// Every member of `Λ_m(A)` satisfies the weighted equation and the suffix
/// bounds, and the enumerator finds exactly the unconstrained solutions that do.
pub fn lambda_valid(spec: &PrimarySpec, m: u64) -> Check {
    let kbar = spec.adjoint();
    let s = m.min(spec.max()) as usize;
    let fits = |lambda: &[u64]| {
        let weighted: u64 = lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as u64 + 1) * l)
            .sum();
        let suffix_ok =
            (0..lambda.len()).all(|j| lambda[j..].iter().sum::<u64>() <= kbar.get(j as u64 + 1));
        weighted == m && suffix_ok
    };
    let mut found = Vec::new();
    for sol in enumerate_lambda(m, &kbar) {
        ensure(sol.lambda.len() == s && fits(&sol.lambda), || {
            format!("{spec}, m={m}: invalid member {:?}", sol.lambda)
        })?;
        found.push(sol.lambda);
    }
    let mut expected: Vec<_> = enumerate_unconstrained(m, s)
        .map(|sol| sol.lambda)
        .filter(|l| fits(l))
        .collect();
    found.sort();
    expected.sort();
    ensure(found == expected, || {
        format!("{spec}, m={m}: enumerated {found:?}, expected {expected:?}")
    })
}

// Fixed-seed generators for the acceptance run.

pub fn random_spec(rng: &mut ChaCha8Rng, max_len: usize, max_mult: u64) -> PrimarySpec {
    let n = rng.gen_range(0..=max_len);
    PrimarySpec::new((0..n).map(|_| rng.gen_range(1..=max_mult)).collect())
}

/// A spec with `|A| <= max_total`.
pub fn random_small_spec(rng: &mut ChaCha8Rng, max_total: u64) -> PrimarySpec {
    let mut left = rng.gen_range(0..=max_total);
    let mut parts = Vec::new();
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    PrimarySpec::new(parts)
}

pub fn random_m(rng: &mut ChaCha8Rng, spec: &PrimarySpec) -> u64 {
    rng.gen_range(0..=spec.total() + 1)
}
