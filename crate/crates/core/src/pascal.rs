//! Generalized Pascal triangle: row `l` holds the coefficients of
//! `Π_{i<=l} (1 + t + ... + t^{k_i})`, so the last row is `C_0(A)..C_{|A|}(A)`.
//!
//! Rows are stored without the zero padding of the printed triangle; indices
//! outside a row read as zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::OpCount;
use crate::spec::PrimarySpec;

pub type Row = Vec<BigUint>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsTable {
    pub spec: PrimarySpec,
    /// Row 0 is `(1)`; row `l` is the table after `l` elements. Only the last
    /// row is kept unless the table was built with `keep_all_rows`.
    pub rows: Vec<Row>,
}

impl SubsTable {
    pub fn final_row(&self) -> &Row {
        self.rows
            .last()
            .expect("table always holds at least one row")
    }
}

/// Next row via the running sum `B(j) = B(j-1) + A(j) - A(j-k-1)`.
pub fn subs_row_next(prev: &[BigUint], k_next: u64) -> Row {
    subs_row_next_truncated(prev, k_next, usize::MAX, &mut OpCount::default())
}

/// [`subs_row_next`] keeping only entries `0..=limit`.
pub fn subs_row_next_truncated(
    prev: &[BigUint],
    k_next: u64,
    limit: usize,
    ops: &mut OpCount,
) -> Row {
    let k = k_next as usize;
    let len = (prev.len() + k).min(limit.saturating_add(1));
    let mut out: Row = Vec::with_capacity(len);
    let mut acc = BigUint::zero();
    for j in 0..len {
        if let Some(a) = prev.get(j) {
            acc += a;
            ops.bump(1);
        }
        if j > k {
            if let Some(a) = prev.get(j - k - 1) {
                acc -= a;
                ops.bump(1);
            }
        }
        out.push(acc.clone());
    }
    out
}

/// Next row by summing the `k_next + 1` trailing entries directly.
pub fn subs_row_next_window(prev: &[BigUint], k_next: u64) -> Row {
    let k = k_next as usize;
    (0..prev.len() + k)
        .map(|j| {
            let lo = j.saturating_sub(k);
            let hi = j.min(prev.len() - 1);
            prev[lo..=hi].iter().sum()
        })
        .collect()
}

pub fn build_subs_table(spec: &PrimarySpec, keep_all_rows: bool) -> SubsTable {
    let mut rows = vec![vec![BigUint::one()]];
    for &k in spec.parts() {
        let next = subs_row_next(rows.last().unwrap(), k);
        if !keep_all_rows {
            rows.clear();
        }
        rows.push(next);
    }
    SubsTable {
        spec: spec.clone(),
        rows,
    }
}

/// `C_m(A)` from the table, building only the entries up to
/// `min(m, |A| - m)`.
pub fn count_subs_dp(spec: &PrimarySpec, m: u64) -> BigUint {
    count_subs_dp_counted(spec, m, &mut OpCount::default())
}

pub fn count_subs_dp_counted(spec: &PrimarySpec, m: u64, ops: &mut OpCount) -> BigUint {
    let total = spec.total();
    if m > total {
        return BigUint::zero();
    }
    let target = m.min(total - m) as usize;
    let mut row = vec![BigUint::one()];
    for &k in spec.parts() {
        row = subs_row_next_truncated(&row, k, target, ops);
    }
    row.swap_remove(target)
}

/// The printed layout: row `l` padded on both sides with `k_{l+1}` zeros,
/// the final row unpadded.
pub fn render_subs_table(table: &SubsTable) -> Vec<String> {
    let parts = table.spec.parts();
    table
        .rows
        .iter()
        .enumerate()
        .map(|(l, row)| {
            let pad = parts.get(l).copied().unwrap_or(0) as usize;
            let zeros = std::iter::repeat_n("0".to_string(), pad);
            zeros
                .clone()
                .chain(row.iter().map(|x| x.to_string()))
                .chain(zeros)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[u64]) -> Row {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn spec(v: &[u64]) -> PrimarySpec {
        PrimarySpec::new(v.to_vec())
    }

    #[test]
    fn row_step_examples() {
        assert_eq!(
            subs_row_next(&row(&[1, 1, 1, 1, 1]), 3),
            row(&[1, 2, 3, 4, 4, 3, 2, 1])
        );
        assert_eq!(subs_row_next(&row(&[1]), 2), row(&[1, 1, 1]));
        assert_eq!(subs_row_next(&row(&[1, 2, 1]), 1), row(&[1, 3, 3, 1]));
    }

    #[test]
    fn running_sum_equals_window_sum() {
        let mut prev = row(&[1]);
        for k in [4, 3, 3, 1, 7, 2] {
            let a = subs_row_next(&prev, k);
            assert_eq!(a, subs_row_next_window(&prev, k));
            prev = a;
        }
    }

    #[test]
    fn worked_tables() {
        let t = build_subs_table(&spec(&[4, 3, 3, 1]), true);
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[3], row(&[1, 3, 6, 10, 13, 14, 13, 10, 6, 3, 1]));
        assert_eq!(
            t.final_row(),
            &row(&[1, 4, 9, 16, 23, 27, 27, 23, 16, 9, 4, 1])
        );
        let t = build_subs_table(&spec(&[1, 1, 1, 1]), false);
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.final_row(), &row(&[1, 4, 6, 4, 1]));
        assert_eq!(build_subs_table(&spec(&[]), true).final_row(), &row(&[1]));
    }

    #[test]
    fn dp_counts() {
        assert_eq!(count_subs_dp(&spec(&[4, 3, 3, 1]), 7), BigUint::from(23u32));
        assert_eq!(count_subs_dp(&spec(&[4, 3, 3, 1]), 12), BigUint::zero());
        let ex1 = spec(&[5, 5, 5, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(count_subs_dp(&ex1, 6), BigUint::from(10670u32));
        assert_eq!(count_subs_dp(&spec(&[]), 0), BigUint::one());
    }

    #[test]
    fn rendering_matches_printed_triangle() {
        let lines = render_subs_table(&build_subs_table(&spec(&[1, 1, 1, 1]), true));
        assert_eq!(
            lines,
            vec!["0 1 0", "0 1 1 0", "0 1 2 1 0", "0 1 3 3 1 0", "1 4 6 4 1"]
        );
        let lines = render_subs_table(&build_subs_table(&spec(&[4, 3, 3, 1]), true));
        assert_eq!(lines[0], "0 0 0 0 1 0 0 0 0");
        assert_eq!(lines[1], "0 0 0 1 1 1 1 1 0 0 0");
        assert_eq!(lines[3], "0 1 3 6 10 13 14 13 10 6 3 1 0");
        assert_eq!(lines[4], "1 4 9 16 23 27 27 23 16 9 4 1");
    }
}
