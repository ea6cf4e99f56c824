//! Exact counting of m-submultisets and m-permutations of finite multisets.
//!
//! A multiset `{a_1^{k_1}, ..., a_n^{k_n}}` is reduced to its primary
//! specification `k_1 >= ... >= k_n`. From there:
//!
//! - [`spec`]: secondary (`λ`) and adjoint (`k̄`) specifications and the
//!   relationships between them;
//! - [`lambda`]: the constrained weighted-partition sets `Λ_m(A)`;
//! - [`subcount`]: submultiset counts by the `Λ_m` sum, special-class closed
//!   forms and bounded compositions;
//! - [`pascal`]: the generalized Pascal triangle;
//! - [`perm`]: permutation counts by the `Λ_m` sum and the column fold;
//! - [`oracle`]: brute-force enumeration for cross-checking;
//! - [`methods`]: dispatch and a harness comparing all methods.
//!
//! All results are exact [`BigUint`](num_bigint::BigUint)s.

pub mod arith;
pub mod error;
pub mod lambda;
pub mod methods;
pub mod multiset;
pub mod oracle;
pub mod pascal;
pub mod perm;
pub mod spec;
pub mod subcount;

pub use error::{Error, Result};
pub use multiset::{parse_multiset, Multiplicity, Multiset};
pub use spec::{AdjointSpec, PrimarySpec, SecondarySpec};
