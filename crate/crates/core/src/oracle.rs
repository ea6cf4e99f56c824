//! Brute-force ground truth for small instances: explicit enumeration of
//! bounded compositions `(r_1..r_n)`, `Σ r_i = m`, `0 <= r_i <= k_i`.
//!
//! Nothing here touches `Λ_m`, adjoint specs or the table recurrences.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::multinomial;
use crate::error::{Error, Result};
use crate::spec::PrimarySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_states: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_states: 1_000_000,
        }
    }
}

/// Walks every composition, calling `emit` on each. Each visited partial
/// state and each emitted vector costs one unit of budget.
fn walk(
    spec: &PrimarySpec,
    m: u64,
    budget: EnumBudget,
    mut emit: impl FnMut(&[u64]),
) -> Result<()> {
    let k = spec.parts();
    if m > spec.total() {
        return Ok(());
    }
    // capacity[i] = k_i + ... + k_n, to prune hopeless prefixes.
    let mut capacity = vec![0u64; k.len() + 1];
    for i in (0..k.len()).rev() {
        capacity[i] = capacity[i + 1] + k[i];
    }

    let mut spent = 0u64;
    let mut charge = |n: u64| -> Result<()> {
        spent += n;
        if spent > budget.max_states {
            Err(Error::BudgetExceeded {
                max_states: budget.max_states,
            })
        } else {
            Ok(())
        }
    };

    let mut current = vec![0u64; k.len()];
    fn go(
        i: usize,
        left: u64,
        k: &[u64],
        capacity: &[u64],
        current: &mut Vec<u64>,
        charge: &mut dyn FnMut(u64) -> Result<()>,
        emit: &mut dyn FnMut(&[u64]),
    ) -> Result<()> {
        charge(1)?;
        if i == k.len() {
            if left == 0 {
                charge(1)?;
                emit(current);
            }
            return Ok(());
        }
        let hi = k[i].min(left);
        let lo = left.saturating_sub(capacity[i + 1]);
        // Descending, so the output is in decreasing lexicographic order.
        for r in (lo..=hi).rev() {
            current[i] = r;
            go(i + 1, left - r, k, capacity, current, charge, emit)?;
        }
        current[i] = 0;
        Ok(())
    }
    go(0, m, k, &capacity, &mut current, &mut charge, &mut emit)
}

/// Every m-submultiset as a multiplicity vector aligned with `spec`, in
/// decreasing lexicographic order.
pub fn enumerate_submultisets(
    spec: &PrimarySpec,
    m: u64,
    budget: EnumBudget,
) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    walk(spec, m, budget, |v| out.push(v.to_vec()))?;
    Ok(out)
}

pub fn count_subs_brute(spec: &PrimarySpec, m: u64, budget: EnumBudget) -> Result<BigUint> {
    let mut count = BigUint::zero();
    walk(spec, m, budget, |_| count += 1u32)?;
    Ok(count)
}

/// Distinct ordered m-samples: each submultiset `r` contributes its number
/// of arrangements `m! / Π r_i!`.
pub fn count_perms_brute(spec: &PrimarySpec, m: u64, budget: EnumBudget) -> Result<BigUint> {
    let mut count = BigUint::zero();
    walk(spec, m, budget, |r| count += multinomial(r))?;
    Ok(count)
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

    #[test]
    fn enumeration() {
        let b = EnumBudget::default();
        assert_eq!(
            enumerate_submultisets(&spec(&[2, 1]), 2, b).unwrap(),
            vec![vec![2, 0], vec![1, 1]]
        );
        assert_eq!(
            enumerate_submultisets(&spec(&[1, 1]), 0, b).unwrap(),
            vec![vec![0, 0]]
        );
        let all = enumerate_submultisets(&spec(&[4, 3, 3, 1]), 5, b).unwrap();
        assert_eq!(all.len(), 27);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 27);
        assert!(enumerate_submultisets(&spec(&[2]), 3, b)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn counts() {
        let b = EnumBudget::default();
        let ex1 = spec(&[5, 5, 5, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(count_subs_brute(&ex1, 6, b).unwrap(), big(10670));
        assert_eq!(
            count_subs_brute(&spec(&[3, 7, 15, 31]), 21, b).unwrap(),
            big(492)
        );
        assert_eq!(count_subs_brute(&spec(&[]), 0, b).unwrap(), big(1));
        assert_eq!(
            count_perms_brute(&spec(&[2, 4, 5]), 5, b).unwrap(),
            big(191)
        );
        assert_eq!(count_perms_brute(&spec(&[2, 1]), 2, b).unwrap(), big(3));
        assert_eq!(count_perms_brute(&spec(&[1, 1, 1]), 3, b).unwrap(), big(6));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = EnumBudget { max_states: 50 };
        let ex1 = spec(&[5, 5, 5, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(
            count_subs_brute(&ex1, 6, tight),
            Err(Error::BudgetExceeded { max_states: 50 })
        );
        assert!(count_subs_brute(&spec(&[2, 1]), 2, tight).is_ok());
    }
}
