//! Counting m-submultisets.
//!
//! [`count_subs_general`] evaluates the sum over `Λ_m(A)` of
//! `Π_j binom(k̄_j - Σ_{i>j} λ_i, λ_j)`. The special-class counters evaluate
//! the same sum with `k̄` written in closed form for their class, and
//! [`count_subs_composition`] counts bounded compositions directly.
//!
//! A useful property of the product term: it is non-zero exactly when every
//! suffix constraint `Σ_{i>=j} λ_i <= k̄_j` holds, so summing it over the
//! unconstrained solution set gives the same value as summing over `Λ_m(A)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binom, binom_counted, factorial, multinomial, OpCount};
use crate::error::{Error, Result};
use crate::lambda::{enumerate_lambda, enumerate_unconstrained, Bounds, LambdaIter};
use crate::spec::{AdjointSpec, PrimarySpec};

/// `Π_j binom(k̄_j - Σ_{i>j} λ_i, λ_j)` for `j = 1..λ.len()`.
pub(crate) fn lambda_product(
    lambda: &[u64],
    kbar: impl Fn(usize) -> i64,
    ops: &mut OpCount,
) -> BigUint {
    let mut acc = BigUint::one();
    let mut suffix: i64 = 0;
    for j in (0..lambda.len()).rev() {
        let term = binom_counted(kbar(j + 1) - suffix, lambda[j] as i64, ops);
        if term.is_zero() {
            return term;
        }
        if !term.is_one() {
            acc *= term;
            ops.bump(1);
        }
        suffix += lambda[j] as i64;
    }
    acc
}

fn kbar_at(kbar: &AdjointSpec) -> impl Fn(usize) -> i64 + '_ {
    move |j| kbar.get(j as u64) as i64
}

/// Sum over `Λ_m` for the given adjoint, without the symmetry shortcut.
/// Returns the value and the number of enumeration steps taken.
pub(crate) fn general_sum(kbar: &AdjointSpec, m: u64, ops: &mut OpCount) -> (BigUint, u64) {
    let mut solutions = enumerate_lambda(m, kbar);
    let mut sum = BigUint::zero();
    for sol in solutions.by_ref() {
        sum += lambda_product(&sol.lambda, kbar_at(kbar), ops);
        ops.bump(1);
    }
    (sum, solutions.visited())
}

/// `C_m(A)` by the sum over `Λ_m(A)`. Uses `C_m = C_{|A|-m}` to evaluate the
/// smaller of the two.
pub fn count_subs_general(spec: &PrimarySpec, m: u64) -> BigUint {
    count_subs_general_counted(spec, m, &mut OpCount::default()).0
}

/// [`count_subs_general`] plus the enumeration steps it took; arithmetic is
/// tallied into `ops`.
pub fn count_subs_general_counted(spec: &PrimarySpec, m: u64, ops: &mut OpCount) -> (BigUint, u64) {
    let total = spec.total();
    if m > total {
        return (BigUint::zero(), 0);
    }
    general_sum(&spec.adjoint(), m.min(total - m), ops)
}

/// Number of `(r_1..r_n)` with `Σ r_i = m`, `0 <= r_i <= k_i`, by direct
/// window sums over a table truncated at `m`.
pub fn count_subs_composition(spec: &PrimarySpec, m: u64) -> BigUint {
    if m > spec.total() {
        return BigUint::zero();
    }
    let m = m as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for &k in spec.parts() {
        let k = k as usize;
        let next: Vec<BigUint> = (0..=m)
            .map(|t| ways[t.saturating_sub(k)..=t].iter().sum())
            .collect();
        ways = next;
    }
    ways.swap_remove(m)
}

/// Multiset whose primary specification is `g(1), ..., g(n)` for a
/// nondecreasing `g` with `g(i) >= i`. Requires `m <= n`.
pub fn count_subs_function(g: &[u64], m: u64) -> Result<BigUint> {
    let n = g.len() as u64;
    if m > n {
        return Err(Error::Precondition(format!("m = {m} exceeds n = {n}")));
    }
    if let Some(w) = g.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::Precondition(format!(
            "g must be nondecreasing, found {} after {}",
            w[1], w[0]
        )));
    }
    if let Some((i, &gi)) = g.iter().enumerate().find(|&(i, &gi)| gi < i as u64 + 1) {
        return Err(Error::Precondition(format!(
            "g({}) = {gi} < {}",
            i + 1,
            i + 1
        )));
    }
    // min{i : g(i) >= j}, which exists for every j <= m <= n <= g(n).
    let inverse = |j: u64| g.iter().position(|&gi| gi >= j).unwrap() as i64 + 1;
    let n = n as i64;
    Ok(enumerate_unconstrained(m, m as usize)
        .map(|sol| {
            lambda_product(
                &sol.lambda,
                |j| n - inverse(j as u64) + 1,
                &mut OpCount::default(),
            )
        })
        .sum())
}

/// Multiset with primary specification `⌊f(1)⌋, ..., ⌊f(n)⌋` for a continuous
/// increasing `f`. The caller supplies `min_preimage(j) = min{i >= 1 integer :
/// f(i) >= j}` (or `None` when no such `i` exists) computed exactly.
/// Requires `m <= n`.
pub fn count_subs_continuous(
    min_preimage: impl Fn(u64) -> Option<u64>,
    n: u64,
    m: u64,
) -> Result<BigUint> {
    if m > n {
        return Err(Error::Precondition(format!("m = {m} exceeds n = {n}")));
    }
    // k̄_j = ⌊n - max(1, f⁻¹(j))⌋ + 1 = n - max(1, min_preimage(j)) + 1,
    // zero once j exceeds ⌊f(n)⌋.
    let kbar = |j: usize| -> i64 {
        match min_preimage(j as u64) {
            Some(i) if i <= n => n as i64 - i.max(1) as i64 + 1,
            _ => 0,
        }
    };
    Ok(enumerate_unconstrained(m, m as usize)
        .map(|sol| lambda_product(&sol.lambda, kbar, &mut OpCount::default()))
        .sum())
}

/// Primary specification `⌊f(1)⌋, ..., ⌊f(n)⌋` recovered from the same
/// inverse that [`count_subs_continuous`] takes.
pub fn continuous_spec(min_preimage: impl Fn(u64) -> Option<u64>, n: u64) -> PrimarySpec {
    let parts = (1..=n)
        .map(|i| {
            let mut j = 0;
            while matches!(min_preimage(j + 1), Some(p) if p <= i) {
                j += 1;
            }
            j
        })
        .collect();
    PrimarySpec::new(parts)
}

/// Which solution set a linear-class sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumPath {
    /// `Λ_m(A)` with the suffix inequalities enforced during enumeration.
    Constrained,
    /// Every solution of `λ_1 + ... + s·λ_s = m`.
    Unconstrained,
}

/// Linear multiset with primary specification `p·i + q`, `i = 1..n`.
/// Uses the constrained sum when `m > n` and the unconstrained one otherwise.
pub fn count_subs_linear(p: u64, q: i64, n: u64, m: u64) -> Result<BigUint> {
    let path = if m > n {
        SumPath::Constrained
    } else {
        SumPath::Unconstrained
    };
    count_subs_linear_via(p, q, n, m, path)
}

pub fn count_subs_linear_via(p: u64, q: i64, n: u64, m: u64, path: SumPath) -> Result<BigUint> {
    if (p as i64) + q < 1 {
        return Err(Error::Precondition(format!("p + q = {} < 1", p as i64 + q)));
    }
    if p == 0 {
        return count_subs_constant(q as u64, n, m);
    }
    let (pi, ni) = (p as i64, n as i64);
    let r = pi * ni + q;
    // ⌊n - max(1, (j-q)/p)⌋ + 1 in exact integer arithmetic.
    let kbar = |j: usize| -> i64 {
        let shift = j as i64 - q;
        let v = if shift <= pi {
            ni
        } else {
            ni + 1 - Integer::div_ceil(&shift, &pi)
        };
        v.max(0)
    };
    let s = (m as i64).min(r).max(0) as usize;
    let iter = match path {
        SumPath::Constrained => {
            let bounds = (1..=s).map(|j| kbar(j) as u64).collect();
            LambdaIter::new(m, (1..=s as u64).collect(), Bounds::Suffix(bounds))
        }
        SumPath::Unconstrained => enumerate_unconstrained(m, s),
    };
    Ok(iter
        .map(|sol| lambda_product(&sol.lambda, kbar, &mut OpCount::default()))
        .sum())
}

/// The specification `p·i + q`, `i = 1..n`.
pub fn linear_spec(p: u64, q: i64, n: u64) -> PrimarySpec {
    PrimarySpec::new(
        (1..=n as i64)
            .map(|i| (p as i64 * i + q).max(0) as u64)
            .collect(),
    )
}

/// Constant multiset `{a_1^q, ..., a_n^q}`. Evaluates both the multinomial
/// sum over `Λ_m` and the two-equation sum over `(λ_0, ..., λ_q)` and
/// returns their common value.
pub fn count_subs_constant(q: u64, n: u64, m: u64) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::Precondition("q must be at least 1".into()));
    }
    let by_lambda = constant_by_lambda(q, n, m);
    let by_system = constant_by_system(q, n, m);
    if by_lambda != by_system {
        return Err(Error::Disagreement(format!(
            "constant class q={q} n={n} m={m}: {by_lambda} vs {by_system}"
        )));
    }
    Ok(by_lambda)
}

/// `Σ_{λ ∈ Λ_m} n! / (λ_1!⋯λ_r! (n - Σλ)!)` with `r = min(m, q)`.
pub fn constant_by_lambda(q: u64, n: u64, m: u64) -> BigUint {
    let r = m.min(q) as usize;
    let n_fact = factorial(n);
    LambdaIter::new(m, (1..=r as u64).collect(), Bounds::Suffix(vec![n; r]))
        .map(|sol| {
            let used: u64 = sol.lambda.iter().sum();
            let denom = sol
                .lambda
                .iter()
                .fold(factorial(n - used), |acc, &l| acc * factorial(l));
            &n_fact / denom
        })
        .sum()
}

/// `Σ n! / (λ_0! λ_1! ⋯ λ_q!)` over `Σ i·λ_i = m`, `Σ λ_i = n`.
pub fn constant_by_system(q: u64, n: u64, m: u64) -> BigUint {
    fn walk(
        value: u64,
        q: u64,
        parts_left: u64,
        weight_left: u64,
        chosen: &mut Vec<u64>,
        acc: &mut BigUint,
    ) {
        if value > q {
            if parts_left == 0 && weight_left == 0 {
                *acc += multinomial(chosen);
            }
            return;
        }
        // Zeros are limited only by the parts left.
        let most = weight_left
            .checked_div(value)
            .map_or(parts_left, |w| parts_left.min(w));
        for count in 0..=most {
            chosen.push(count);
            walk(
                value + 1,
                q,
                parts_left - count,
                weight_left - count * value,
                chosen,
                acc,
            );
            chosen.pop();
        }
    }
    // Values above m can never appear; capping keeps the walk small for huge q.
    let q = q.min(m.max(1));
    let mut acc = BigUint::zero();
    walk(0, q, n, m, &mut Vec::new(), &mut acc);
    acc
}

/// Multiset with primary specification `2^{l_1} - 1, ..., 2^{l_n} - 1` for a
/// nondecreasing `l`. Each copy count is a sum of distinct powers of two, so
/// the count is a sum over `Σ 2^{i-1}·λ_i = m` with `λ_i <= k̄_{2^{i-1}}`.
pub fn count_subs_step(l: &[u64], m: u64) -> Result<BigUint> {
    if let Some(w) = l.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::Precondition(format!(
            "l must be nondecreasing, found {} after {}",
            w[1], w[0]
        )));
    }
    if l.iter().any(|&x| x == 0 || x > 63) {
        return Err(Error::Precondition("each l_i must lie in 1..=63".into()));
    }
    let top = l.last().copied().unwrap_or(0);
    // k̄_{2^{i-1}} = |{j : 2^{l_j} - 1 >= 2^{i-1}}| = |{j : l_j >= i}|.
    let bounds: Vec<u64> = (1..=top)
        .map(|i| l.iter().filter(|&&lj| lj >= i).count() as u64)
        .collect();
    let weights: Vec<u64> = (0..top).map(|i| 1u64 << i).collect();
    Ok(LambdaIter::new(m, weights, Bounds::PerPart(bounds.clone()))
        .map(|sol| {
            sol.lambda
                .iter()
                .zip(&bounds)
                .map(|(&lam, &b)| binom(b as i64, lam as i64))
                .product::<BigUint>()
        })
        .sum())
}

/// The specification `2^{l_i} - 1`.
pub fn step_spec(l: &[u64]) -> PrimarySpec {
    PrimarySpec::new(l.iter().map(|&x| (1u64 << x) - 1).collect())
}

/// m-submultisets of `{x_1^∞, ..., x_n^∞}` containing every element at least
/// once: the coefficient of `t^m` in `t^n (1-t)^{-n}`.
pub fn count_onto_unbounded(n: u64, m: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if m < n {
        return Ok(BigUint::zero());
    }
    Ok(binom(m as i64 - 1, n as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[u64]) -> PrimarySpec {
        PrimarySpec::new(v.to_vec())
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    const THIRTEEN: [u64; 13] = [5, 5, 5, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1];

    #[test]
    fn general_examples() {
        assert_eq!(count_subs_general(&spec(&THIRTEEN), 6), big(10670));
        assert_eq!(count_subs_general(&spec(&THIRTEEN), 0), big(1));
        assert_eq!(count_subs_general(&spec(&[1, 2, 3]), 2), big(5));
        assert_eq!(count_subs_general(&spec(&[2]), 3), big(0));
        assert_eq!(count_subs_general(&spec(&[]), 0), big(1));
    }

    #[test]
    fn general_without_symmetry_visits_every_solution() {
        // The unreduced sum visits all ten solutions for the thirteen-element spec.
        let mut ops = OpCount::default();
        let (value, steps) = general_sum(&spec(&THIRTEEN).adjoint(), 6, &mut ops);
        assert_eq!(value, big(10670));
        assert!(steps >= 10);
        assert!(ops.0 > 0);
    }

    #[test]
    fn composition_examples() {
        assert_eq!(count_subs_composition(&spec(&[4, 3, 3, 1]), 5), big(27));
        assert_eq!(count_subs_composition(&spec(&[1, 1, 1, 1]), 2), big(6));
        assert_eq!(count_subs_composition(&spec(&[2]), 3), big(0));
    }

    #[test]
    fn function_class() {
        assert_eq!(count_subs_function(&[1, 3, 5, 7, 9], 4).unwrap(), big(54));
        assert_eq!(count_subs_function(&[1, 2, 3, 4], 1).unwrap(), big(4));
        let g = [2, 7, 20, 54, 148];
        assert_eq!(
            count_subs_function(&g, 3).unwrap(),
            count_subs_composition(&spec(&g), 3)
        );
    }

    #[test]
    fn function_class_rejects_bad_input() {
        assert!(count_subs_function(&[1, 3], 3).is_err());
        assert!(count_subs_function(&[1, 1, 3], 1).is_err());
        assert!(count_subs_function(&[3, 2, 5], 1).is_err());
    }

    fn sqrt_preimage(j: u64) -> Option<u64> {
        Some(j * j)
    }

    #[test]
    fn continuous_class() {
        assert_eq!(count_subs_continuous(sqrt_preimage, 6, 5).unwrap(), big(48));
        // f(x) = x gives k_i = i, i.e. the multiset (4,3,2,1): six pairs of
        // distinct elements plus three doubled elements.
        assert_eq!(continuous_spec(Some, 4).parts(), &[4, 3, 2, 1]);
        assert_eq!(count_subs_continuous(Some, 4, 2).unwrap(), big(9));
        let k = continuous_spec(sqrt_preimage, 6);
        assert_eq!(k.parts(), &[2, 2, 2, 1, 1, 1]);
        assert_eq!(
            count_subs_continuous(sqrt_preimage, 6, 2).unwrap(),
            count_subs_general(&k, 2)
        );
        assert!(count_subs_continuous(sqrt_preimage, 3, 4).is_err());
    }

    #[test]
    fn linear_class() {
        assert_eq!(count_subs_linear(2, -1, 5, 4).unwrap(), big(54));
        assert_eq!(count_subs_linear(0, 3, 2, 2).unwrap(), big(3));
        assert_eq!(count_subs_linear(1, 0, 3, 2).unwrap(), big(5));
        assert!(count_subs_linear(0, 0, 3, 2).is_err());
        assert!(count_subs_linear(1, -1, 3, 2).is_err());
        for m in 0..=30 {
            let direct = count_subs_composition(&linear_spec(3, -2, 4), m);
            for path in [SumPath::Constrained, SumPath::Unconstrained] {
                assert_eq!(
                    count_subs_linear_via(3, -2, 4, m, path).unwrap(),
                    direct,
                    "m={m}"
                );
            }
        }
    }

    #[test]
    fn constant_class() {
        assert_eq!(count_subs_constant(1, 5, 2).unwrap(), big(10));
        assert_eq!(count_subs_constant(4, 3, 4).unwrap(), big(15));
        assert_eq!(count_subs_constant(2, 2, 2).unwrap(), big(3));
        assert_eq!(count_subs_constant(2, 0, 0).unwrap(), big(1));
        assert_eq!(count_subs_constant(2, 0, 1).unwrap(), big(0));
        assert!(count_subs_constant(0, 3, 1).is_err());
    }

    #[test]
    fn step_class() {
        assert_eq!(count_subs_step(&[2, 3, 4, 5], 21).unwrap(), big(492));
        assert_eq!(count_subs_step(&[1], 1).unwrap(), big(1));
        assert_eq!(
            count_subs_step(&[2, 3, 4, 5], 3).unwrap(),
            count_subs_composition(&spec(&[31, 15, 7, 3]), 3)
        );
        assert!(count_subs_step(&[3, 2], 1).is_err());
        assert!(count_subs_step(&[0, 2], 1).is_err());
        assert_eq!(count_subs_step(&[], 0).unwrap(), big(1));
    }

    #[test]
    fn onto_unbounded() {
        assert_eq!(count_onto_unbounded(3, 3).unwrap(), big(1));
        assert_eq!(count_onto_unbounded(3, 5).unwrap(), big(6));
        assert_eq!(count_onto_unbounded(2, 1).unwrap(), big(0));
        assert!(count_onto_unbounded(0, 1).is_err());
    }
}
