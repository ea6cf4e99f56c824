//! Counting m-permutations (ordered m-samples) of a multiset.
//!
//! Two routes: the sum over `Λ_m(A)` weighted by `m! / Π (i!)^{λ_i}`, and a
//! column fold where adding an element of multiplicity `k_r` maps the column
//! `P_j` of the prefix to `Σ_j binom(i, j) P_j` over `max(0, i-k_r) <= j <=
//! min(i, |prefix|)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{factorials, multinomial, pascal_rows, OpCount};
use crate::lambda::enumerate_lambda;
use crate::spec::PrimarySpec;
use crate::subcount::lambda_product;

pub type Column = Vec<BigUint>;

/// `(Σ k_i)! / Π k_i!`.
pub fn count_perms_full(spec: &PrimarySpec) -> BigUint {
    multinomial(spec.parts())
}

/// Work done by the `Λ_m` route.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct FormulaStats {
    /// Members of `Λ_m(A)` summed over.
    pub solutions: u64,
    /// Partial assignments the enumerator tried.
    pub visited: u64,
    pub ops: OpCount,
}

pub fn count_perms_general(spec: &PrimarySpec, m: u64) -> BigUint {
    count_perms_general_counted(spec, m).0
}

pub fn count_perms_general_counted(spec: &PrimarySpec, m: u64) -> (BigUint, FormulaStats) {
    let mut stats = FormulaStats::default();
    if m > spec.total() {
        return (BigUint::zero(), stats);
    }
    let kbar = spec.adjoint();
    let fact = factorials(m, &mut stats.ops);
    let mut sum = BigUint::zero();
    let mut solutions = enumerate_lambda(m, &kbar);
    for sol in solutions.by_ref() {
        stats.solutions += 1;
        let choices = lambda_product(&sol.lambda, |j| kbar.get(j as u64) as i64, &mut stats.ops);
        if choices.is_zero() {
            continue;
        }
        let mut denom = BigUint::one();
        for (i, &count) in sol.lambda.iter().enumerate() {
            for _ in 0..count {
                denom *= &fact[i + 1];
            }
            stats.ops.bump(count);
        }
        let arrangements = &fact[m as usize] / denom;
        sum += arrangements * choices;
        stats.ops.bump(3);
    }
    stats.visited = solutions.visited();
    (sum, stats)
}

/// One fold step of the column recurrence.
pub fn perm_col_next(prev: &[BigUint], k_r: u64) -> Column {
    let len = prev.len() + k_r as usize;
    let pascal = pascal_rows(len - 1, &mut OpCount::default());
    perm_col_next_truncated(prev, k_r, usize::MAX, &pascal, &mut OpCount::default())
}

/// [`perm_col_next`] keeping entries `0..=limit`; `pascal` must cover every
/// row index produced.
fn perm_col_next_truncated(
    prev: &[BigUint],
    k_r: u64,
    limit: usize,
    pascal: &[Vec<BigUint>],
    ops: &mut OpCount,
) -> Column {
    let k = k_r as usize;
    let prefix_total = prev.len() - 1;
    let len = (prev.len() + k).min(limit.saturating_add(1));
    (0..len)
        .map(|i| {
            let lo = i.saturating_sub(k);
            let hi = i.min(prefix_total);
            let mut acc = BigUint::zero();
            for j in lo..=hi {
                if j == 0 || j == i {
                    acc += &prev[j];
                } else {
                    acc += &pascal[i][j] * &prev[j];
                    ops.bump(1);
                }
            }
            // Additions: one fewer than the number of terms.
            ops.bump((hi - lo) as u64);
            acc
        })
        .collect()
}

/// All columns of the fold: entry `r` is `P_0..P_{k_1+...+k_{r+1}}` of the
/// first `r + 1` elements of `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermTable {
    /// Multiplicities in the order they were folded in.
    pub order: Vec<u64>,
    pub columns: Vec<Column>,
}

impl PermTable {
    /// `P_0(A)..P_{|A|}(A)`.
    pub fn result(&self) -> Column {
        self.columns
            .last()
            .cloned()
            .unwrap_or_else(|| vec![BigUint::one()])
    }
}

/// Folds the canonical (non-increasing) order.
pub fn build_perm_table(spec: &PrimarySpec) -> PermTable {
    build_perm_table_ordered(spec.parts())
}

/// Folds the multiplicities in the given order; zeros are skipped. The final
/// column does not depend on the order.
pub fn build_perm_table_ordered(order: &[u64]) -> PermTable {
    let order: Vec<u64> = order.iter().copied().filter(|&k| k > 0).collect();
    let total: u64 = order.iter().sum();
    let pascal = pascal_rows(total as usize, &mut OpCount::default());
    let mut columns: Vec<Column> = Vec::with_capacity(order.len());
    for &k in &order {
        let next = match columns.last() {
            None => vec![BigUint::one(); k as usize + 1],
            Some(prev) => {
                perm_col_next_truncated(prev, k, usize::MAX, &pascal, &mut OpCount::default())
            }
        };
        columns.push(next);
    }
    PermTable { order, columns }
}

pub fn count_perms_dp(spec: &PrimarySpec, m: u64) -> BigUint {
    count_perms_dp_counted(spec, m).0
}

pub fn count_perms_dp_counted(spec: &PrimarySpec, m: u64) -> (BigUint, OpCount) {
    let mut ops = OpCount::default();
    if m > spec.total() {
        return (BigUint::zero(), ops);
    }
    let m = m as usize;
    let Some((&first, rest)) = spec.parts().split_first() else {
        return (BigUint::one(), ops);
    };
    let pascal = pascal_rows(m, &mut ops);
    let mut col = vec![BigUint::one(); (first as usize).min(m) + 1];
    for &k in rest {
        col = perm_col_next_truncated(&col, k, m, &pascal, &mut ops);
    }
    (col.swap_remove(m), ops)
}

/// The printed tableau for each fold step after the first: the basic row,
/// then for `i = 0..` the index, the Pascal row `i` restricted to the basic
/// row's width with the lower-left triangle zeroed, and the resulting entry.
pub fn render_perm_table(table: &PermTable) -> Vec<String> {
    let mut lines = Vec::new();
    let Some(first) = table.columns.first() else {
        return vec!["1".to_string()];
    };
    let total: u64 = table.order.iter().sum();
    let pascal = pascal_rows(total as usize, &mut OpCount::default());
    lines.push(format!("basic: {}", join(first)));
    for (step, pair) in table.columns.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        let k = table.order[step + 1] as usize;
        lines.push(String::new());
        lines.push(format!("step {} (k = {k})", step + 2));
        lines.push(format!("  | {} |", join(prev)));
        for (i, value) in next.iter().enumerate() {
            let cells: Vec<String> = (0..prev.len())
                .map(|j| {
                    if j + k < i || j > i {
                        "0".to_string()
                    } else {
                        pascal[i][j].to_string()
                    }
                })
                .collect();
            lines.push(format!("{i} | {} | {value}", cells.join(" ")));
        }
    }
    lines
}

fn join(xs: &[BigUint]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
