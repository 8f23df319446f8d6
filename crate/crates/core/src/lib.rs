//! Fractional revival on Cayley graphs over finite abelian groups.
//!
//! The crate decides, with exact cyclotomic arithmetic, whether the
//! continuous-time quantum walk `H(t) = exp(itA)` on `Cay(Γ, S)` exhibits
//! fractional revival between a vertex `v` and `v + a`, and reports the
//! minimum revival time together with the revival amplitudes. Every analytic
//! verdict can be cross-checked against an independent matrix-exponential
//! engine that only ever sees the adjacency matrix.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! * [`group`]: finite abelian groups `ℤ_{n_1} ⊕ … ⊕ ℤ_{n_r}` and their elements.
//! * [`cyclotomic`]: exact arithmetic in `ℤ[ω_L]`.
//! * [`spectra`]: characters, exact eigenvalues and the closed-form walk.
//! * [`oracle`]: scaling-and-squaring series exponential and fidelity scans.
//! * [`analysis`]: the revival decision procedure and certificates.
//! * [`bent`]: Walsh–Hadamard spectra and bent-function Cayley graphs.
//! * [`matrix`]: the small dense matrix type shared by the numeric engines.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod bent;
pub mod cyclotomic;
mod error;
pub mod group;
pub mod matrix;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};

pub use num_complex::Complex64;
