//! Generalized Mexican hat wavelets built from creation-operator
//! coefficient vectors.
//!
//! A state `Σ g_n a†ⁿ|0⟩` projects onto the coordinate representation as
//! `ψ(x) = π^{-1/4} e^{-x²/2} Σ g_n H_n(x) / 2^{n/2}`, and it is a valid
//! mother wavelet exactly when the even coefficients satisfy
//! `Σ (2n-1)!! g_{2n} = 0`. The crate builds such wavelets, runs the
//! continuous wavelet transform with them, and checks the transform
//! against a truncated Fock-space realization of the squeeze-translate
//! operator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock_space;
pub mod math_core;
pub mod operator_lab;
pub mod transform_engine;
pub mod wavelet_builder;

pub use error::{Error, Result};
