//! Primary, secondary and adjoint specifications of a multiset, the
//! triangular suffix-sum transform linking them, and the full set of
//! relationships between the four vectors `k`, `λ`, `k̄`, `λ̄`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Non-increasing sequence of positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PrimarySpec(Vec<u64>);

impl PrimarySpec {
    /// Sorts into canonical (non-increasing) order and drops zeros.
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.retain(|&k| k > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PrimarySpec(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    /// Number of distinct elements, `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest multiplicity, `r` (zero for the empty multiset).
    pub fn max(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Cardinality `|A| = Σ k_i`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn secondary(&self) -> SecondarySpec {
        secondary_spec(self)
    }

    pub fn adjoint(&self) -> AdjointSpec {
        adjoint_spec(self)
    }
}

impl From<Vec<u64>> for PrimarySpec {
    fn from(parts: Vec<u64>) -> Self {
        PrimarySpec::new(parts)
    }
}

impl fmt::Display for PrimarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, &self.0)
    }
}

/// `λ_i = |{j : k_j = i}|` for `i = 1..r`, zeros included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondarySpec {
    pub lambda: Vec<u64>,
    /// `Σ i·λ_i`, equal to the cardinality of the source multiset.
    pub total: BigUint,
}

impl fmt::Display for SecondarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, &self.lambda)
    }
}

/// `k̄_i = |{j : k_j >= i}|` for `i = 1..r`; the conjugate partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjointSpec {
    pub kbar: Vec<u64>,
}

impl AdjointSpec {
    /// `k̄_j` with 1-based `j`; zero past the end.
    pub fn get(&self, j: u64) -> u64 {
        if j == 0 {
            return 0;
        }
        self.kbar.get(j as usize - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.kbar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kbar.is_empty()
    }

    /// The adjoint read as a primary specification in its own right.
    pub fn to_primary(&self) -> PrimarySpec {
        PrimarySpec(self.kbar.clone())
    }
}

impl fmt::Display for AdjointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, &self.kbar)
    }
}

pub fn secondary_spec(k: &PrimarySpec) -> SecondarySpec {
    let mut lambda = vec![0u64; k.max() as usize];
    for &kj in k.parts() {
        lambda[kj as usize - 1] += 1;
    }
    let total = lambda
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (i, &l)| {
            acc + BigUint::from(l) * (i as u64 + 1)
        });
    SecondarySpec { lambda, total }
}

/// Counts, for each threshold `i`, the entries reaching it. Works on any
/// permutation of the input; sortedness is not assumed.
pub fn adjoint_spec(k: &PrimarySpec) -> AdjointSpec {
    adjoint_of_parts(k.parts())
}

pub(crate) fn adjoint_of_parts(parts: &[u64]) -> AdjointSpec {
    let r = parts.iter().copied().max().unwrap_or(0) as usize;
    let mut kbar = vec![0u64; r];
    for &kj in parts {
        for slot in kbar.iter_mut().take(kj as usize) {
            *slot += 1;
        }
    }
    AdjointSpec { kbar }
}

pub fn is_self_adjoint(k: &PrimarySpec) -> bool {
    adjoint_spec(k).kbar == k.parts()
}

/// `Π (k_i + 1)`: the number of all submultisets.
pub fn multiboolean_cardinality(k: &PrimarySpec) -> BigUint {
    k.parts()
        .iter()
        .fold(BigUint::one(), |acc, &kj| acc * (kj + 1))
}

/// Column vector operand of the triangular transform.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecVector(pub Vec<BigInt>);

impl SpecVector {
    pub fn from_u64(v: &[u64]) -> Self {
        SpecVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// Upper-triangular all-ones matrix: suffix sums.
    M,
    /// Its inverse: `v_i - v_{i+1}`.
    MInverse,
}

pub fn spec_transform(v: &SpecVector, direction: Transform) -> SpecVector {
    let v = &v.0;
    let n = v.len();
    let mut out = vec![BigInt::zero(); n];
    match direction {
        Transform::M => {
            let mut acc = BigInt::zero();
            for i in (0..n).rev() {
                acc += &v[i];
                out[i] = acc.clone();
            }
        }
        Transform::MInverse => {
            for i in 0..n {
                out[i] = match v.get(i + 1) {
                    Some(next) => &v[i] - next,
                    None => v[i].clone(),
                };
            }
        }
    }
    SpecVector(out)
}

/// Names of the relationships checked by [`check_spec_identities`], in
/// report order. `k`, `λ` belong to the multiset, `k̄`, `λ̄` to its adjoint.
pub const IDENTITY_NAMES: [&str; 12] = [
    "kbar_i = |{j : k_j >= i}|",
    "k_i = |{j : lambda_j+..+lambda_r >= i}|",
    "lambdabar_i = |{j : kbar_j = i}|",
    "kbar_i = |{j : lambdabar_j+..+lambdabar_n >= i}|",
    "lambda_i = |{j : k_j = i}|",
    "k_i = |{j : kbar_j >= i}|",
    "lambdabar_i = |{j : lambda_j+..+lambda_r = i}|",
    "lambda_i = |{j : lambdabar_j+..+lambdabar_n = i}|",
    "M * lambdabar = k",
    "M^-1 * k = lambdabar",
    "M * lambda = kbar",
    "M^-1 * kbar = lambda",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Evaluates every relationship between `k`, `λ`, `k̄` and `λ̄`. Each check
/// is computed straight from counting definitions, independent of how the
/// derived specs were produced.
pub fn check_spec_identities(k: &PrimarySpec) -> IdentityReport {
    let kv = k.parts();
    let n = kv.len() as u64;
    let r = k.max();
    let lambda = secondary_spec(k).lambda;
    let kbar = adjoint_spec(k).kbar;
    // Secondary spec of the adjoint, length n (its largest part is k̄_1 = n).
    let lambdabar = secondary_spec(&PrimarySpec(kbar.clone())).lambda;

    let count_ge = |xs: &[u64], i: u64| xs.iter().filter(|&&x| x >= i).count() as u64;
    let count_eq = |xs: &[u64], i: u64| xs.iter().filter(|&&x| x == i).count() as u64;
    let suffix_sums = |xs: &[u64]| -> Vec<u64> {
        let mut acc = 0;
        let mut out: Vec<u64> = xs
            .iter()
            .rev()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect();
        out.reverse();
        out
    };
    let build = |len: u64, f: &dyn Fn(u64) -> u64| -> Vec<u64> { (1..=len).map(f).collect() };

    let lambda_suffix = suffix_sums(&lambda);
    let lambdabar_suffix = suffix_sums(&lambdabar);

    let as_vec = |xs: &[u64]| SpecVector::from_u64(xs);
    let m_apply = |xs: &[u64]| spec_transform(&as_vec(xs), Transform::M);
    let minv_apply = |xs: &[u64]| spec_transform(&as_vec(xs), Transform::MInverse);

    let results = [
        build(r, &|i| count_ge(kv, i)) == kbar,
        build(n, &|i| count_ge(&lambda_suffix, i)) == kv,
        build(n, &|i| count_eq(&kbar, i)) == lambdabar,
        build(r, &|i| count_ge(&lambdabar_suffix, i)) == kbar,
        build(r, &|i| count_eq(kv, i)) == lambda,
        build(n, &|i| count_ge(&kbar, i)) == kv,
        build(n, &|i| count_eq(&lambda_suffix, i)) == lambdabar,
        build(r, &|i| count_eq(&lambdabar_suffix, i)) == lambda,
        m_apply(&lambdabar) == as_vec(kv),
        minv_apply(kv) == as_vec(&lambdabar),
        m_apply(&lambda) == as_vec(&kbar),
        minv_apply(&kbar) == as_vec(&lambda),
    ];

    IdentityReport {
        checks: IDENTITY_NAMES.iter().copied().zip(results).collect(),
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}
