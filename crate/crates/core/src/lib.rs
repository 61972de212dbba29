//! Exact combinatorics of stable tensor-module invariants for the three
//! finitary simple Lie algebras sl(∞), o(∞) and sp(∞).
//!
//! Everything infinite is shadowed by finite, exactly computable data:
//! simple tensor modules become labels λ ∈ Θ (pairs of partitions for sl,
//! one partition for o/sp), socle filtrations become Loewy profiles with
//! symbolic ℶ-cardinal multiplicities, and every stable claim is
//! cross-checked against a finite-rank character-arithmetic oracle
//! (Weyl dimension formula, exact weight multiplicities, classical
//! one-step branching rules). All integer arithmetic is arbitrary
//! precision.

pub mod branching;
pub mod char_oracle;
pub mod dlim_desc;
pub mod duals_inj;
pub mod error;
pub mod tensor_calc;
pub mod theta_order;
pub mod weights;

pub use error::{Error, Result};
pub use weights::{enumerate_theta, Family, Partition, ThetaWeight};
