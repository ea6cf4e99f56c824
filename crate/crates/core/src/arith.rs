//! Exact integer helpers shared by the counting routines.
//!
//! Every helper here has a `_counted` twin that records the number of
//! big-integer additions, multiplications and divisions it performs, so the
//! benchmark harness can compare methods by work done rather than wall time.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Tally of big-integer arithmetic operations (one add, mul or div each).
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpCount(pub u64);

impl OpCount {
    #[inline]
    pub fn bump(&mut self, n: u64) {
        self.0 += n;
    }
}

/// `binom(top, k)`, zero whenever `k < 0`, `top < 0` or `k > top`.
pub fn binom(top: i64, k: i64) -> BigUint {
    binom_counted(top, k, &mut OpCount::default())
}

pub fn binom_counted(top: i64, k: i64, ops: &mut OpCount) -> BigUint {
    if k < 0 || top < 0 || k > top {
        return BigUint::zero();
    }
    let k = k.min(top - k) as u64;
    let top = top as u64;
    let mut acc = BigUint::one();
    // acc * (top - i) / (i + 1) stays integral at every step.
    for i in 0..k {
        acc *= top - i;
        acc /= i + 1;
    }
    ops.bump(2 * k);
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `0!, 1!, ..., n!`.
pub fn factorials(n: u64, ops: &mut OpCount) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigUint::one());
    for i in 1..=n {
        let next = &out[i as usize - 1] * i;
        out.push(next);
    }
    ops.bump(n);
    out
}

/// `(Σ parts)! / Π parts_i!`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    // Built as a product of binomials so no intermediate exceeds the result.
    let mut total: i64 = 0;
    let mut acc = BigUint::one();
    for &p in parts {
        total += p as i64;
        acc *= binom(total, p as i64);
    }
    acc
}

/// Row `n` of Pascal's triangle, computed by additions only.
pub fn pascal_rows(n: usize, ops: &mut OpCount) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigUint::one()]);
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = Vec::with_capacity(i + 1);
        row.push(BigUint::one());
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigUint::one());
        ops.bump(i.saturating_sub(1) as u64);
        rows.push(row);
    }
    rows
}
