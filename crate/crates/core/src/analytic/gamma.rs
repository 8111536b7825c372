use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Arguments closer than this to a nonpositive integer are treated as poles
/// of `Γ`.
pub const POLE_DISTANCE: f64 = 1e-8;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Real part above which the asymptotic series is used directly.
const SHIFT_TARGET: f64 = 15.0;

fn near_pole(s: C64, dist: f64) -> bool {
    if s.re > 0.5 {
        return false;
    }
    let n = s.re.round();
    n <= 0.0 && (s - C64::new(n, 0.0)).norm() < dist
}

fn stirling_series(z: C64) -> C64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut acc = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for c in STIRLING {
        acc += pow * c;
        pow *= inv2;
    }
    acc
}

/// `log Γ(s)`, continuous off the negative real axis (the branch for which
/// `log Γ(s+1) = log Γ(s) + log s` with principal `log s`).
///
/// Shifts upward until `Re s ≥ 15` and applies Stirling's series there.
pub fn log_gamma(s: C64) -> Result<C64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain("non-finite argument to log Γ".into()));
    }
    if near_pole(s, POLE_DISTANCE) {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    let shift = if s.re < SHIFT_TARGET {
        (SHIFT_TARGET - s.re).ceil() as usize
    } else {
        0
    };
    let mut acc = stirling_series(s + shift as f64);
    for k in 0..shift {
        acc -= (s + k as f64).ln();
    }
    Ok(acc)
}

pub fn gamma(s: C64) -> Result<C64> {
    Ok(log_gamma(s)?.exp())
}

/// `log Γ_R(s) = -(s/2) log π + log Γ(s/2)`.
pub fn log_gamma_r(s: C64) -> Result<C64> {
    Ok(-s * (0.5 * PI.ln()) + log_gamma(s * 0.5)?)
}

/// `Γ_R(s) = π^{-s/2} Γ(s/2)`.
pub fn gamma_r(s: C64) -> Result<C64> {
    Ok(log_gamma_r(s)?.exp())
}

/// `|Γ(σ+it)| / (√(2π) |t|^{σ-1/2} e^{-π|t|/2})`, evaluated in log space.
pub fn stirling_ratio(sigma: f64, t: f64) -> Result<f64> {
    if !(t.abs() >= 1.0) {
        return Err(Error::Domain(alloc::format!(
            "stirling_ratio needs |t| ≥ 1, got t = {t}"
        )));
    }
    let lg = log_gamma(C64::new(sigma, t))?.re;
    let model = 0.5 * (2.0 * PI).ln() + (sigma - 0.5) * t.abs().ln() - 0.5 * PI * t.abs();
    Ok((lg - model).exp())
}

/// `Γ_R(1 - s + conj(z)) / Γ_R(s + z)` and its size relative to
/// `(1 + |Im(s+z)|)^{1/2 - Re s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaQuotient {
    pub quotient: C64,
    pub ratio: f64,
}

/// Poles of `Γ_R` in the denominator give a zero quotient; poles in the
/// numerator and arguments outside `Re s ≤ 2`, `Re z ≤ 2`,
/// `Re(1 - s + z) ≥ 0.05` are errors.
pub fn gamma_quotient(s: C64, z: C64) -> Result<GammaQuotient> {
    if s.re > 2.0 || z.re > 2.0 || (1.0 - s + z).re < 0.05 {
        return Err(Error::Domain(alloc::format!(
            "gamma_quotient needs Re s ≤ 2, Re z ≤ 2, Re(1-s+z) ≥ 0.05 (s = {s}, z = {z})"
        )));
    }
    let num = 1.0 - s + z.conj();
    let den = s + z;
    if near_pole(num * 0.5, 1e-6) {
        return Err(Error::Pole { re: num.re, im: num.im });
    }
    let scale_log = (0.5 - s.re) * (1.0 + den.im.abs()).ln();
    if near_pole(den * 0.5, 1e-6) {
        return Ok(GammaQuotient {
            quotient: C64::new(0.0, 0.0),
            ratio: 0.0,
        });
    }
    let lq = log_gamma_r(num)? - log_gamma_r(den)?;
    Ok(GammaQuotient {
        quotient: lq.exp(),
        ratio: (lq.re - scale_log).exp(),
    })
}

pub fn gamma_quotient_ratio(s: C64, z: C64) -> Result<f64> {
    Ok(gamma_quotient(s, z)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1.0)
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-13);
        assert!((log_gamma(c(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-13);
        assert!((log_gamma(c(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_high_precision_values() {
        let cases = [
            (c(0.3, 2.0), c(-2.359449355937571, -0.916907613518670)),
            (c(-2.5, 0.5), c(-0.935085621298277, -8.870962885247459)),
            (c(10.0, 20.0), c(-1.702980443956511, 52.660660425584719)),
            (c(-0.5, -3.0), c(-4.905762226198390, 1.426125733123084)),
        ];
        for (s, want) in cases {
            let got = log_gamma(s).unwrap();
            assert!(rel(got, want) < 1e-12, "{s}: {got} vs {want}");
        }
    }

    #[test]
    fn poles() {
        for s in [c(0.0, 0.0), c(-3.0, 0.0), c(-7.0 + 1e-9, 0.0)] {
            assert!(matches!(log_gamma(s), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-3.0, 1e-6)).is_ok());
        assert!(gamma_r(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_r_examples() {
        assert!((gamma_r(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        assert!((gamma_r(c(2.0, 0.0)).unwrap().re - 1.0 / PI).abs() < 1e-13);
        assert!((gamma_r(c(4.0, 0.0)).unwrap().re - 0.101321183642338).abs() < 1e-13);
    }

    #[test]
    fn stirling_examples() {
        assert!((stirling_ratio(0.5, 50.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((stirling_ratio(0.0, 10.0).unwrap() - 0.99999999999999997).abs() < 1e-12);
        assert!((stirling_ratio(2.0, 10.0).unwrap() - 1.00498756211209).abs() < 1e-12);
        assert!(stirling_ratio(0.0, 0.5).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = gamma_quotient(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((q.quotient - c(1.0, 0.0)).norm() < 1e-13 && (q.ratio - 1.0).abs() < 1e-13);

        let q = gamma_quotient(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(q.quotient, c(0.0, 0.0));

        let q = gamma_quotient(c(0.25, 10.0), c(0.0, 0.0)).unwrap();
        assert!(rel(q.quotient, c(1.1111727858963, -0.1632908051012)) < 1e-11);
        assert!((q.ratio - 0.616698481522237).abs() < 1e-12 && q.ratio <= 10.0);

        assert!(gamma_quotient(c(2.5, 0.0), c(0.0, 0.0)).is_err());
        assert!(gamma_quotient(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }
}
