use alloc::collections::BTreeMap;
use alloc::format;

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::log_gamma;
use crate::{Error, Result, C64};

/// Relative tolerance of [`smooth_sum_contour`] against `∫ |integrand|`.
pub const CONTOUR_TOL: f64 = 1e-6;

/// Terms of a constant-coefficient direct sum are dropped once `|Φ(m/M)|`
/// falls below this fraction of the largest kernel value seen.
const DECAY_CUTOFF: f64 = 1e-17;

const MAX_DIRECT_TERMS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothKernel {
    /// `Φ(x) = x^β e^{-x²}`, `Re β ≥ -1`.
    GaussPower { beta: C64 },
    /// `Φ(x) = x^B e^{-√x}`.
    SqrtExpPower { b: f64 },
}

impl SmoothKernel {
    pub fn gauss_power(beta: C64) -> Result<Self> {
        if !(beta.re >= -1.0) || !beta.im.is_finite() {
            return Err(Error::Domain(format!("GaussPower needs Re β ≥ -1, got {beta}")));
        }
        Ok(Self::GaussPower { beta })
    }

    pub fn sqrt_exp_power(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::Domain(format!("SqrtExpPower exponent {b} is not finite")));
        }
        Ok(Self::SqrtExpPower { b })
    }

    /// `Φ(x)` for `x > 0`.
    pub fn eval(&self, x: f64) -> C64 {
        let lx = x.ln();
        match *self {
            SmoothKernel::GaussPower { beta } => (beta * lx - x * x).exp(),
            SmoothKernel::SqrtExpPower { b } => C64::new((b * lx - x.sqrt()).exp(), 0.0),
        }
    }

    /// Location of the maximum of `|Φ|` on `(0, ∞)`.
    fn peak(&self) -> f64 {
        match *self {
            SmoothKernel::GaussPower { beta } => (beta.re.max(0.0) / 2.0).sqrt(),
            SmoothKernel::SqrtExpPower { b } => (2.0 * b.max(0.0)).powi(2),
        }
    }
}

/// `Φ̃(s) = ∫_0^∞ x^{s-1} Φ(x) dx`: `½ Γ((s+β)/2)` for the Gaussian kernel,
/// `2 Γ(2(s+B))` for the square-root exponential one (substitute `x = y²`).
pub fn mellin_kernel(kernel: &SmoothKernel, s: C64) -> Result<C64> {
    Ok(log_mellin_kernel(kernel, s)?.exp())
}

fn log_mellin_kernel(kernel: &SmoothKernel, s: C64) -> Result<C64> {
    match *kernel {
        SmoothKernel::GaussPower { beta } => Ok(log_gamma((s + beta) * 0.5)? - 2f64.ln()),
        SmoothKernel::SqrtExpPower { b } => Ok(log_gamma((s + b) * 2.0)? + 2f64.ln()),
    }
}

/// Dirichlet coefficients `a(m)`: finitely supported, or constant in `m`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Finite(BTreeMap<u64, C64>),
    Constant(C64),
}

impl Coefficients {
    /// `a(i + 1) = values[i]`.
    pub fn from_slice(values: &[C64]) -> Self {
        Coefficients::Finite(
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as u64 + 1, v))
                .collect(),
        )
    }
}

/// `Σ_m Φ(m/M) a(m)`.
///
/// Constant coefficients are summed until `Φ` has passed its maximum and
/// decayed below `1e-17` of it.
pub fn smooth_sum_direct(coeffs: &Coefficients, big_m: f64, kernel: &SmoothKernel) -> Result<C64> {
    if !(big_m > 0.0) {
        return Err(Error::Domain(format!("M = {big_m} must be positive")));
    }
    let zero = C64::new(0.0, 0.0);
    match coeffs {
        Coefficients::Finite(map) => Ok(map
            .iter()
            .filter(|(&m, _)| m >= 1)
            .map(|(&m, &a)| a * kernel.eval(m as f64 / big_m))
            .fold(zero, |acc, x| acc + x)),
        Coefficients::Constant(a) => {
            if *a == zero {
                return Ok(zero);
            }
            let peak = kernel.peak();
            let mut acc = zero;
            let mut max_seen = 0.0f64;
            for m in 1..=MAX_DIRECT_TERMS {
                let x = m as f64 / big_m;
                let phi = kernel.eval(x);
                max_seen = max_seen.max(phi.norm());
                acc += phi;
                if x > peak && phi.norm() < DECAY_CUTOFF * max_seen {
                    return Ok(acc * a);
                }
            }
            Err(Error::Domain("kernel did not decay within the term budget".into()))
        }
    }
}

/// Vertical line `Re s = σ`, truncated at `|t| ≤ T`, trapezoid step `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub sigma: f64,
    pub t_max: f64,
    pub step: f64,
}

impl ContourSpec {
    pub fn new(sigma: f64, t_max: f64, step: f64) -> Result<Self> {
        if !(sigma >= 2.0) {
            return Err(Error::Domain(format!("σ = {sigma} must be at least 2")));
        }
        if !(t_max > 0.0) || !(step > 0.0) || step > t_max / 100.0 {
            return Err(Error::Domain(format!(
                "need T > 0 and 0 < step ≤ T/100 (T = {t_max}, step = {step})"
            )));
        }
        Ok(Self { sigma, t_max, step })
    }
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            sigma: 2.0,
            t_max: 60.0,
            step: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourResult {
    pub value: C64,
    /// Step-halving difference plus a tail estimate beyond `|t| = T`.
    pub error_estimate: f64,
    /// `(1/2π) ∫ |integrand| dt`, the scale the estimate is compared against.
    pub scale: f64,
}

/// `(1/2πi) ∫_{(σ)} M^s D(s) Φ̃(s) ds` with `D(s) = Σ a(m) m^{-s}`,
/// by the trapezoid rule on `[-T, T]`. Only finitely supported
/// coefficients are accepted.
pub fn smooth_sum_contour(
    coeffs: &Coefficients,
    big_m: f64,
    kernel: &SmoothKernel,
    spec: &ContourSpec,
) -> Result<ContourResult> {
    let map = match coeffs {
        Coefficients::Finite(map) => map,
        Coefficients::Constant(_) => {
            return Err(Error::Domain(
                "contour evaluation needs finitely supported coefficients".into(),
            ))
        }
    };
    if !(big_m > 0.0) {
        return Err(Error::Domain(format!("M = {big_m} must be positive")));
    }
    let ContourSpec { sigma, t_max, step } = *spec;
    let logs: alloc::vec::Vec<(f64, C64)> = map
        .iter()
        .filter(|(&m, &a)| m >= 1 && a != C64::new(0.0, 0.0))
        .map(|(&m, &a)| ((big_m / m as f64).ln(), a))
        .collect();
    let integrand = |t: f64| -> Result<C64> {
        let s = C64::new(sigma, t);
        let lk = log_mellin_kernel(kernel, s)?;
        let mut d = C64::new(0.0, 0.0);
        for &(l, a) in &logs {
            d += a * (s * l + lk).exp();
        }
        Ok(d)
    };

    let mut n = (2.0 * t_max / step).ceil() as usize;
    n += n % 2;
    let h = 2.0 * t_max / n as f64;
    let mut fine = C64::new(0.0, 0.0);
    let mut coarse = C64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut ends = 0.0;
    for k in 0..=n {
        let f = integrand(-t_max + k as f64 * h)?;
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        fine += f * w;
        abs_sum += f.norm() * w;
        if k % 2 == 0 {
            coarse += f * w;
        }
        if k == 0 || k == n {
            ends += f.norm();
        }
    }
    let norm = 1.0 / (2.0 * PI);
    let value = fine * h * norm;
    let coarse = coarse * 2.0 * h * norm;
    let scale = abs_sum * h * norm;
    let error_estimate = (value - coarse).norm() + 2.0 * ends * norm;
    if error_estimate > CONTOUR_TOL * scale {
        return Err(Error::Quadrature {
            estimate: error_estimate / scale,
        });
    }
    Ok(ContourResult {
        value,
        error_estimate,
        scale,
    })
}
