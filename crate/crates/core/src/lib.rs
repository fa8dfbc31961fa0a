//! Exact computation of the prime-power coefficients `H(p^k; p^m)` of
//! type-C Weyl group multiple Dirichlet series.
//!
//! The crate provides four independent descriptions of the same family of
//! coefficients together with the machinery to cross-check them:
//!
//! * [`crystal`]: the inductive description summing decorated one-row
//!   arrays over `CQ_1(mu)` (`h_inductive`), and the crystal-graph
//!   description over `BZL_1(mu)` for odd cover degree (`h_bzl_inductive`).
//! * [`daleth`]: the uniform-in-`n` description built from connected
//!   components of the weight vector (`h_daleth`), plus the stable-range
//!   Weyl-group closed form.
//! * [`ffield`]: a concrete function-field model over `F_q[t]` that
//!   evaluates the defining exponential-sum recursion directly
//!   (`h_direct`) and the twisted-multiplicativity factors.
//!
//! Values live in the symbolic ring of [`gauss`] and can be pinned down
//! numerically as exact cyclotomic integers via [`chars`].

pub mod arrays;
pub mod chars;
pub mod crystal;
pub mod cyclotomic;
pub mod daleth;
pub mod ffield;
pub mod ffpoly;
pub mod gauss;
pub mod patterns;
pub mod serialize;
pub mod verify;
pub mod weyl;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("symbol index is divisible by the cover degree n = {n}")]
    DegenerateSymbol { n: u32 },
    #[error("cover degree mismatch: element has n = {elem}, characters have n = {chars}")]
    DegreeMismatch { elem: u32, chars: u32 },
    #[error("element has a q^{exp} term; clear denominators before numeric evaluation")]
    NegativeQExponent { exp: i64 },
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("zero is not a valid {what}")]
    ZeroArgument { what: &'static str },
    #[error("the crystal-graph description requires odd n; use h_daleth for n = {n}")]
    EvenCover { n: u32 },
    #[error("weight vector is not strict")]
    NonStrictWeight,
    #[error("array kind requires a shift parameter N (multiple of n exceeding k_1)")]
    MissingShift,
    #[error("invalid shift parameter N = {n_shift}: need a multiple of {n} exceeding k_1 = {k1}")]
    InvalidShift { n_shift: i64, n: u32, k1: i64 },
    #[error("array kind {kind} does not apply to weight class {class}")]
    KindClassMismatch { kind: &'static str, class: &'static str },
    #[error("flat arrays require n | k_r (n = {n}, k_r = {kr})")]
    FlatShift { n: u32, kr: u32 },
    #[error("totally resonant weights do not split")]
    TotallyResonant,
    #[error("stability bound violated: n = {n} but the support formula needs n >= {required}")]
    Unstable { n: u32, required: u32 },
    #[error("rank {r} exceeds the direct-evaluation cap r <= 2")]
    RankCap { r: usize },
    #[error("weight mismatch between pattern and supplied vector")]
    WeightMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub use gauss::{gs_prime_power, GaussElement, GaussMonomial};
