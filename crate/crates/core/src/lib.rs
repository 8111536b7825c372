//! Rankin–Selberg coefficient algebra over synthetic families of local
//! parameter data.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! - [`repmodel`]: synthetic unitary representations, families, validation,
//!   Hecke/Laplacian eigenvalues, conductor proxies and a seeded sampler.
//! - [`dseries`]: truncated power series in `X = p^{-s}` and Hermitian
//!   families of them ([`dseries::FamilySeries`]) with PSD checks.
//! - [`linalg`]: a deterministic cyclic Jacobi eigensolver for Hermitian
//!   matrices.
//! - [`ranksel`]: Rankin–Selberg local logarithms (unramified and segment
//!   data), coefficients `a(m)`, coefficient matrices, the prime-power lower
//!   bound and triple sums.
//! - [`analytic`]: `log Γ`, `Γ_R`, Stirling checks, Mellin transforms of the
//!   smooth kernels and direct vs. contour smooth sums.
//! - [`powersum`]: Turán power-sum windows and empirical ratio sweeps.
//! - [`density`]: density exponents, thresholds, crossovers and the
//!   computable halves of the finite and Archimedean chains.
//!
//! File formats and the command-line interface live in the `rsdensity`
//! crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod density;
pub mod dseries;
pub mod error;
pub mod linalg;
pub mod powersum;
pub mod ranksel;
pub mod repmodel;

pub use error::{Error, Result};

/// Complex double used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Default truncation degree `K` of local series.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Deterministic generator behind every seeded routine in the crate.
///
/// ChaCha with 8 rounds, seeded through `SeedableRng::seed_from_u64`.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub(crate) fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `m` as `(p, k)` pairs in increasing `p`.
pub fn factorize(mut m: u64) -> alloc::vec::Vec<(u64, u32)> {
    let mut out = alloc::vec::Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut k = 0;
            while m % d == 0 {
                m /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}
