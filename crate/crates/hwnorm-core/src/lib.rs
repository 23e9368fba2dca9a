//! Exact computations for the polynomial models of vector-valued highest
//! weight modules over the classical Hermitian families (plus the two
//! exceptional domains in their supported fibers).
//!
//! Everything in this crate is exact: scalars are arbitrary-precision
//! rationals, norm ratios are kept as factored rational functions of the
//! continuation parameter λ, and all combinatorics (Pieri rules,
//! Littlewood-Richardson coefficients, Weyl dimension formulas) is done in
//! integer arithmetic. Floating point never enters; numeric cross-checks
//! live in the companion crate.
//!
//! Module map:
//! - [`arith`]: rationals, half-integers, factored rational functions of λ
//! - [`partitions`]: signatures and branching/tensor combinatorics
//! - [`catalog`]: structure constants and fiber validation per family
//! - [`decomp`]: graded K-type decomposition of P(p+) ⊗ V
//! - [`norms`]: norm ratios R(λ), normalizing constants c_λ
//! - [`analysis`]: unitarizability, reducibility, filtrations, GK dimensions

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod decomp;
pub mod norms;
pub mod partitions;
