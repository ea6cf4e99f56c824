//! Enumeration of the weighted-partition solution sets that index the
//! closed-form sums: non-negative `λ` with `Σ w_i·λ_i = m`, optionally
//! bounded either by suffix sums (`Σ_{i>=j} λ_i <= k̄_j`) or per component.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::spec::AdjointSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaSolution {
    /// `λ_1..λ_s`, aligned with the weight vector.
    pub lambda: Vec<u64>,
    pub weighted_total: u64,
}

/// Constraint family applied on top of the weighted equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounds {
    Unconstrained,
    /// `Σ_{i>=j} λ_i <= b_j` for every `j`.
    Suffix(Vec<u64>),
    /// `λ_j <= b_j` for every `j`.
    PerPart(Vec<u64>),
}

#[derive(Debug, Clone)]
struct Frame {
    cand: i64,
    min: i64,
    rem: u64,
    suffix: u64,
}

/// Lazy depth-first enumerator. Assigns the last component first and tries
/// larger values before smaller ones, so the output order is deterministic.
#[derive(Debug, Clone)]
pub struct LambdaIter {
    m: u64,
    weights: Vec<u64>,
    bounds: Bounds,
    lam: Vec<u64>,
    frames: Vec<Frame>,
    pending_empty: bool,
    visited: u64,
}

impl LambdaIter {
    /// Solutions of `Σ weights_i·λ_i = m`. `weights` must be positive; bound
    /// vectors must be at least as long as `weights`.
    pub fn new(m: u64, weights: Vec<u64>, bounds: Bounds) -> Self {
        debug_assert!(weights.iter().all(|&w| w > 0));
        let s = weights.len();
        let mut it = LambdaIter {
            m,
            lam: vec![0; s],
            weights,
            bounds,
            frames: Vec::new(),
            pending_empty: s == 0 && m == 0,
            visited: 0,
        };
        if s > 0 {
            if let Some(frame) = it.frame(s - 1, m, 0) {
                it.frames.push(frame);
            }
        }
        it
    }

    /// Partial assignments tried so far (one per component value set).
    pub fn visited(&self) -> u64 {
        self.visited
    }

    fn cap(&self, idx: usize, rem: u64, suffix: u64) -> Option<u64> {
        let by_weight = rem / self.weights[idx];
        match &self.bounds {
            Bounds::Unconstrained => Some(by_weight),
            Bounds::Suffix(b) => b[idx].checked_sub(suffix).map(|room| room.min(by_weight)),
            Bounds::PerPart(b) => Some(b[idx].min(by_weight)),
        }
    }

    fn frame(&self, idx: usize, rem: u64, suffix: u64) -> Option<Frame> {
        let cap = self.cap(idx, rem, suffix)?;
        if idx == 0 {
            // The last component is forced.
            let w = self.weights[0];
            if !rem.is_multiple_of(w) || rem / w > cap {
                return None;
            }
            let v = (rem / w) as i64;
            return Some(Frame {
                cand: v,
                min: v,
                rem,
                suffix,
            });
        }
        Some(Frame {
            cand: cap as i64,
            min: 0,
            rem,
            suffix,
        })
    }
}

impl Iterator for LambdaIter {
    type Item = LambdaSolution;

    fn next(&mut self) -> Option<LambdaSolution> {
        if self.pending_empty {
            self.pending_empty = false;
            return Some(LambdaSolution {
                lambda: Vec::new(),
                weighted_total: 0,
            });
        }
        let s = self.weights.len();
        while let Some(top) = self.frames.last_mut() {
            if top.cand < top.min {
                self.frames.pop();
                continue;
            }
            let value = top.cand as u64;
            top.cand -= 1;
            let (rem, suffix) = (top.rem, top.suffix);
            let idx = s - self.frames.len();
            self.lam[idx] = value;
            self.visited += 1;
            let rem = rem - value * self.weights[idx];
            if idx == 0 {
                debug_assert_eq!(rem, 0);
                return Some(LambdaSolution {
                    lambda: self.lam.clone(),
                    weighted_total: self.m,
                });
            }
            if let Some(child) = self.frame(idx - 1, rem, suffix + value) {
                self.frames.push(child);
            }
        }
        None
    }
}

/// The solution set `Λ_m` for a multiset with adjoint `k̄`: weights `1..s`
/// with `s = min(m, r)`, suffix sums bounded by `k̄`.
pub fn enumerate_lambda(m: u64, kbar: &AdjointSpec) -> LambdaIter {
    let s = m.min(kbar.len() as u64) as usize;
    let weights = (1..=s as u64).collect();
    LambdaIter::new(m, weights, Bounds::Suffix(kbar.kbar[..s].to_vec()))
}

/// All solutions of `λ_1 + 2λ_2 + ... + s·λ_s = m` with no inequality
/// constraints.
pub fn enumerate_unconstrained(m: u64, s: usize) -> LambdaIter {
    LambdaIter::new(m, (1..=s as u64).collect(), Bounds::Unconstrained)
}

/// Number of non-negative solutions of `Σ w_i·λ_i = m` (coin-change count).
pub fn count_lambda_unconstrained(m: u64, weights: &[u64]) -> BigUint {
    let m = m as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for &w in weights {
        let w = w as usize;
        for total in w..=m {
            let prev = ways[total - w].clone();
            ways[total] += prev;
        }
    }
    ways.swap_remove(m)
}
