//! Classification and weight-enumerator analysis of binary codes that are
//! maximal totally isotropic for the alternating form `<u,v> = u.v + p(u)p(v)`
//! on GF(2)^n, where `p` is the parity (weight mod 2) functional.
//!
//! The crate provides:
//!
//! * bit-packed GF(2) linear algebra ([`gf2`]);
//! * linear codes, their duals under the dot product and under the
//!   alternating form, and the isotropy predicates ([`code`]);
//! * canonical forms, equivalence testing and automorphism groups under
//!   coordinate permutations ([`canon`]);
//! * generation and mass certification of self-dual codes ([`selfdual`]);
//! * classification of the maximal totally isotropic codes containing
//!   odd-weight words, with mass-formula verification ([`classify`]);
//! * exact weight enumerators and duality transforms ([`wenum`]);
//! * exact polynomial invariant theory for the finite matrix groups attached
//!   to the duality transforms, and checkers for the structural theorems on
//!   weight enumerators ([`cyclo`], [`bipoly`], [`invariants`]);
//! * direct-product decomposition of codes ([`decomp`]);
//! * report generation for the command-line interface ([`report`]).

// `LinearCode` compares, orders and hashes by its rref generator matrix only;
// the interior `OnceLock` memoizes data derived from that matrix, so keys in
// ordered/hashed collections are stable despite the interior mutability.
#![allow(clippy::mutable_key_type)]
// Parity tests (`% 2 == 0`) and `(n + 1) / 2` mirror the mathematical
// statements literally; keep them as written.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod bipoly;
pub mod canon;
pub mod classify;
pub mod code;
pub mod cyclo;
pub mod decomp;
pub mod gf2;
pub mod invariants;
pub mod perm;
pub mod report;
pub mod selfdual;
pub mod wenum;
