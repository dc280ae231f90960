//! Exact weight distributions of a family of p-ary cyclic codes whose
//! duals have two zeros, via exponential-sum evaluation over F_{p^m},
//! with closed-form predictions and brute-force cross-checks.

pub mod codes;
pub mod cyclo;
pub mod expsums;
pub mod gf;
pub mod predict;
pub mod structure;
