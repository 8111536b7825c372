//! Density exponents, thresholds, and the computable lower-bound halves of
//! the finite-place and Archimedean counting arguments.
//!
//! All exponents are the leading terms; `ε` and `o(1)` corrections are not
//! represented. Upper-bound sides of the chains carry ineffective constants
//! and are reported with constant 1, never asserted.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::powersum::{turan_lhs, turan_ratio, PowerSumInstance};
use crate::ranksel::{power_sum, rs_coefficient, rs_triple_sum, RsPair};
use crate::repmodel::{rs_conductor_cap, Family};
use crate::{Error, Result, C64};

/// Half-width of the band around 1 in which [`AmplifiedVerdict::Boundary`]
/// is reported.
pub const BOUNDARY_BAND: f64 = 1e-12;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} must be at least 2")));
    }
    Ok(())
}

fn check_theta_open(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 0.5) {
        return Err(Error::Domain(format!("θ = {theta} must lie in (0, 1/2)")));
    }
    Ok(())
}

/// Exponent of the analytic conductor in the family-size bound,
/// `n(1 - 2θ)/(2θ)`.
pub fn exponent_lfn(n: usize, theta: f64) -> Result<f64> {
    check_n(n)?;
    check_theta_open(theta)?;
    Ok(n as f64 * (1.0 - 2.0 * theta) / (2.0 * theta))
}

/// Exponent of the Rankin–Selberg conductor cap, `(1 - 2θ)/(4θ)`.
pub fn exponent_rs(theta: f64) -> Result<f64> {
    check_theta_open(theta)?;
    Ok((1.0 - 2.0 * theta) / (4.0 * theta))
}

/// Spectral large-sieve exponent at level `q`, `n - 1 - 4θ`; accepts
/// `θ ∈ [0, 1/2)`.
pub fn exponent_spectral(n: usize, theta: f64) -> Result<f64> {
    check_n(n)?;
    if !(0.0..0.5).contains(&theta) {
        return Err(Error::Domain(format!("θ = {theta} must lie in [0, 1/2)")));
    }
    Ok(n as f64 - 1.0 - 4.0 * theta)
}

/// The spectral exponent after summing over levels `q ≤ Q`, `n - 4θ`.
pub fn exponent_spectral_summed(n: usize, theta: f64) -> Result<f64> {
    Ok(exponent_spectral(n, theta)? + 1.0)
}

/// Best known pointwise bound on `|Re μ|` at unramified places.
pub fn pointwise_threshold(n: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok(match n {
        2 => 7.0 / 64.0,
        3 | 4 => 0.5 - 1.0 / (nf * (nf + 1.0) / 2.0 + 1.0),
        _ => 0.5 - 1.0 / (nf * nf + 1.0),
    })
}

/// `θ*` where `n(1-2θ)/(2θ) = n - 4θ`, namely `(n - √((n-2)n))/4`.
pub fn crossover_theta(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain("crossover analysis requires n ≥ 3".into()));
    }
    let nf = n as f64;
    Ok((nf - ((nf - 2.0) * nf).sqrt()) / 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentReport {
    pub n: usize,
    pub theta: f64,
    pub exponent_lfn: f64,
    pub exponent_rs: f64,
    pub exponent_spectral: f64,
    pub exponent_spectral_summed: f64,
    pub pointwise_threshold: f64,
    pub crossover: Option<f64>,
}

pub fn exponent_report(n: usize, theta: f64) -> Result<ExponentReport> {
    Ok(ExponentReport {
        n,
        theta,
        exponent_lfn: exponent_lfn(n, theta)?,
        exponent_rs: exponent_rs(theta)?,
        exponent_spectral: exponent_spectral(n, theta)?,
        exponent_spectral_summed: exponent_spectral_summed(n, theta)?,
        pointwise_threshold: pointwise_threshold(n)?,
        crossover: crossover_theta(n).ok(),
    })
}

/// Exponents of `𝔠_RS` and of the twisting modulus `q` in an amplified
/// bound `(𝔠_RS q^a)^{(1-2θ)/(4θ)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifiedPair {
    pub rs_exponent: f64,
    pub q_exponent: f64,
    /// `q^{q_exponent}`.
    pub q_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplifiedVerdict {
    /// The `q`-exponent exceeds 1: twisting costs more than it saves.
    PickQOne,
    /// The `q`-exponent equals 1 within [`BOUNDARY_BAND`].
    Boundary,
    /// The `q`-exponent is below 1.
    AmplificationWins,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifiedReport {
    pub n: usize,
    pub theta: f64,
    pub q: f64,
    /// Twisted family, conductor grows by `q^{n²}`.
    pub twisted: AmplifiedPair,
    /// After square-root cancellation in hyper-Kloosterman sums, `q^{n²-1}`.
    pub kloosterman: AmplifiedPair,
    pub verdict: AmplifiedVerdict,
    /// `θ = 1/2 - 1/(n²+1)`, where the Kloosterman `q`-exponent equals 1.
    pub boundary_theta: f64,
}

pub fn amplified_exponents(n: usize, theta: f64, q: f64) -> Result<AmplifiedReport> {
    check_n(n)?;
    let base = exponent_rs(theta)?;
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("q = {q} must be at least 1")));
    }
    let n2 = (n * n) as f64;
    let pair = |a: f64| AmplifiedPair {
        rs_exponent: base,
        q_exponent: a * base,
        q_factor: q.powf(a * base),
    };
    let kloosterman = pair(n2 - 1.0);
    let e = kloosterman.q_exponent;
    let verdict = if (e - 1.0).abs() <= BOUNDARY_BAND {
        AmplifiedVerdict::Boundary
    } else if e > 1.0 {
        AmplifiedVerdict::PickQOne
    } else {
        AmplifiedVerdict::AmplificationWins
    };
    Ok(AmplifiedReport {
        n,
        theta,
        q,
        twisted: pair(n2),
        kloosterman,
        verdict,
        boundary_theta: 0.5 - 1.0 / (n2 + 1.0),
    })
}

/// `k₀ = round(log_p(|F| √cap))` clamped to `[1, K - n]`.
pub fn choose_k0(f: &Family, p: u64, k_max: usize) -> Result<usize> {
    let hi = k_max as i64 - f.rank() as i64;
    if hi < 1 {
        return Err(Error::Domain(format!(
            "truncation {k_max} leaves no room for a window of length {}",
            f.rank()
        )));
    }
    let target = (f.len().max(1) as f64 * rs_conductor_cap(f).sqrt()).ln() / (p as f64).ln();
    let k0 = target.round();
    Ok(if k0.is_finite() {
        (k0 as i64).clamp(1, hi) as usize
    } else {
        hi as usize
    })
}

/// `ℓ = ceil(|F| √cap)`, at least 1.
pub fn choose_ell(f: &Family) -> u64 {
    let v = (f.len().max(1) as f64 * rs_conductor_cap(f).sqrt()).ceil();
    if v.is_finite() && v >= 1.0 && v < u64::MAX as f64 {
        v as u64
    } else if v >= 1.0 {
        u64::MAX
    } else {
        1
    }
}

/// `w_π = conj(P_k(π)) / |P_k(π)|` (1 where `P_k` vanishes), so that
/// `|Σ w_π P_k(π)| = Σ |P_k(π)|`.
pub fn phase_aligned_weights(f: &Family, p: u64, k: u32) -> Result<Vec<C64>> {
    f.reps()
        .iter()
        .map(|rep| {
            let u = power_sum(rep, p, k)?;
            let a = u.norm();
            Ok(if a > 0.0 {
                u.conj() / a
            } else {
                C64::new(1.0, 0.0)
            })
        })
        .collect()
}

/// Where the chain was run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainPlace {
    Prime(u64),
    Infinity,
}

/// One evaluated sum `𝒮` and its lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStep {
    /// `k` for `m = p^k`; 0 at the Archimedean place.
    pub k: usize,
    pub s_value: f64,
    pub s_imag: f64,
    pub lower_bound: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Turán window data for one member: `z = α_π(p)`, `M = k₀`, `N = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TuranRecord {
    pub id: String,
    pub k_star: u64,
    pub window_max: f64,
    pub window_sum: f64,
    pub ratio: f64,
    /// `max_j |α_{π,j}|^{k₀}`.
    pub max_alpha_pow: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub place: ChainPlace,
    pub family_size: usize,
    pub rank: usize,
    /// `k₀` at a prime, `ℓ` at infinity.
    pub parameter: u64,
    pub theta: Option<f64>,
    pub conductor_cap: f64,
    pub steps: Vec<ChainStep>,
    pub turan: Vec<TuranRecord>,
    /// `max_{k in window} |Σ_π w_π P_k(π)|`.
    pub window_max: Option<f64>,
    /// `k₀^{-n} max_π max_j |α_{π,j}|^{k₀}`.
    pub turan_reference: Option<f64>,
    /// `m/|F| + √cap` with constant 1 (`m = p^{k₀}` or `ℓ`); not asserted.
    pub upper_reference: f64,
    pub pass: bool,
}

impl ChainReport {
    pub fn min_slack(&self) -> f64 {
        self.steps.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min)
    }
}

fn chain_tol(v: f64) -> f64 {
    1e-9 * 1.0f64.max(v.abs())
}

/// Evaluates `𝒮(p^k) = |F|^{-2} Σ w_π conj(w_π') a_{π×π̃'}(p^k)` for
/// `k ∈ [k₀+1, k₀+n]` and checks `𝒮 ≥ 0` and
/// `𝒮 ≥ (k |F|²)^{-1} |Σ w_π P_k(π)|²`.
pub fn simulate_chain_finite(
    f: &Family,
    p: u64,
    k0: usize,
    w: &[C64],
    k_max: usize,
) -> Result<ChainReport> {
    let n = f.rank();
    let size = f.len();
    if size == 0 {
        return Err(Error::Family("empty family".into()));
    }
    if w.len() != size {
        return Err(Error::Dimension {
            expected: size,
            got: w.len(),
        });
    }
    if let Some(x) = w.iter().find(|x| (x.norm() - 1.0).abs() > 1e-9) {
        return Err(Error::Domain(format!("weight {x} is not of absolute value 1")));
    }
    if k0 < 1 || k0 + n > k_max {
        return Err(Error::Domain(format!(
            "need 1 ≤ k₀ and k₀ + n ≤ K (k₀ = {k0}, n = {n}, K = {k_max})"
        )));
    }
    for rep in f.reps() {
        rep.unramified_at(p)?;
    }

    let f2 = (size * size) as f64;
    let reps = f.reps();
    let mut steps = Vec::with_capacity(n);
    let mut window_max = 0.0f64;
    for k in k0 + 1..=k0 + n {
        let pk = p.checked_pow(k as u32).ok_or_else(|| {
            Error::Domain(format!("p^k overflows for p = {p}, k = {k}"))
        })?;
        let mut s = C64::new(0.0, 0.0);
        let mut wp = C64::new(0.0, 0.0);
        for (i, a) in reps.iter().enumerate() {
            wp += w[i] * power_sum(a, p, k as u32)?;
            for (j, b) in reps.iter().enumerate() {
                s += w[i] * w[j].conj() * rs_coefficient(&RsPair::new(a, b)?, pk, k_max)?;
            }
        }
        s /= f2;
        window_max = window_max.max(wp.norm());
        let lower_bound = wp.norm_sqr() / (k as f64 * f2);
        let slack = s.re - lower_bound;
        let tol = chain_tol(s.re);
        steps.push(ChainStep {
            k,
            s_value: s.re,
            s_imag: s.im,
            lower_bound,
            slack,
            pass: s.re >= -tol && slack >= -tol,
        });
    }

    let mut turan = Vec::with_capacity(size);
    let mut max_pow = 0.0f64;
    for rep in reps {
        let alpha = rep.unramified_at(p)?.satake(p);
        let inst = PowerSumInstance::new(alpha.clone(), k0 as u64)?;
        let lhs = turan_lhs(&inst);
        let window_sum = inst
            .window()
            .map(|k| power_sum(rep, p, k as u32).map(|v| v.norm()))
            .sum::<Result<f64>>()?;
        let pow = alpha
            .iter()
            .map(|a| a.norm().powi(k0 as i32))
            .fold(0.0, f64::max);
        max_pow = max_pow.max(pow);
        turan.push(TuranRecord {
            id: rep.id.clone(),
            k_star: lhs.k_star,
            window_max: lhs.value,
            window_sum,
            ratio: turan_ratio(&inst)?,
            max_alpha_pow: pow,
        });
    }

    let cap = rs_conductor_cap(f);
    let pass = steps.iter().all(|s| s.pass);
    Ok(ChainReport {
        place: ChainPlace::Prime(p),
        family_size: size,
        rank: n,
        parameter: k0 as u64,
        theta: None,
        conductor_cap: cap,
        steps,
        turan,
        window_max: Some(window_max),
        turan_reference: Some(max_pow / (k0 as f64).powi(n as i32)),
        upper_reference: (p as f64).powi(k0 as i32) / size as f64 + cap.sqrt(),
        pass,
    })
}

/// Evaluates `𝒮 = |F|^{-2} Σ w_π conj(w_π') ℓ^{β_π + β_π'}` with
/// `β_π = max_j Re μ_{π,j}(∞)` and `w_π = |ℓ^{β_π}| / ℓ^{β_π}`, through
/// the triple sum with `u = 1_{m=1}`, `M = ℓ`, and checks `𝒮 ≥ ℓ^{2θ}`.
pub fn simulate_chain_infty(f: &Family, ell: u64, theta: f64, k_max: usize) -> Result<ChainReport> {
    let size = f.len();
    if size == 0 {
        return Err(Error::Family("empty family".into()));
    }
    if ell < 1 {
        return Err(Error::Domain("ℓ must be at least 1".into()));
    }
    let mut beta = Vec::with_capacity(size);
    for rep in f.reps() {
        let b = rep.archimedean.max_re();
        if b < theta {
            return Err(Error::Domain(format!(
                "β = {b} of {} is below θ = {theta}",
                rep.id
            )));
        }
        beta.push(C64::new(b, 0.0));
    }
    let l = ell as f64;
    let weights: Vec<C64> = beta
        .iter()
        .map(|b| {
            let v = (b * l.ln()).exp();
            v.norm() / v
        })
        .collect();
    let mut wmat = Vec::with_capacity(size * size);
    for wi in &weights {
        for wj in &weights {
            wmat.push(wi * wj.conj());
        }
    }
    let one = [C64::new(1.0, 0.0)];
    let s = rs_triple_sum(f, &wmat, &one, &beta, l, k_max)? / (size * size) as f64;
    let lower_bound = l.powf(2.0 * theta);
    let slack = s.re - lower_bound;
    let step = ChainStep {
        k: 0,
        s_value: s.re,
        s_imag: s.im,
        lower_bound,
        slack,
        pass: slack >= -chain_tol(s.re),
    };
    let cap = rs_conductor_cap(f);
    Ok(ChainReport {
        place: ChainPlace::Infinity,
        family_size: size,
        rank: f.rank(),
        parameter: ell,
        theta: Some(theta),
        conductor_cap: cap,
        steps: alloc::vec![step],
        turan: Vec::new(),
        window_max: None,
        turan_reference: None,
        upper_reference: l / size as f64 + cap.sqrt(),
        pass: step.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmodel::{sample_family, Representation, UnramifiedLocal};
    use crate::DEFAULT_TRUNCATION as K;
    use alloc::vec;

    #[test]
    fn exponent_examples() {
        assert!((exponent_lfn(3, 0.25).unwrap() - 3.0).abs() < 1e-15);
        assert!(exponent_lfn(3, 0.5 - 1e-12).unwrap() < 1e-10);
        assert!((exponent_lfn(5, 6.0 / 13.0).unwrap() - 5.0 / 12.0).abs() < 1e-14);
        assert!(exponent_lfn(3, 0.5).is_err() && exponent_lfn(3, 0.0).is_err());
        assert!((exponent_spectral(3, 0.3).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(exponent_spectral(2, 0.0).unwrap(), 1.0);
        assert!((exponent_spectral_summed(3, 0.25).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn thresholds_and_crossover() {
        assert_eq!(pointwise_threshold(2).unwrap(), 0.109375);
        assert!((pointwise_threshold(3).unwrap() - 5.0 / 14.0).abs() < 1e-15);
        assert!((pointwise_threshold(5).unwrap() - (0.5 - 1.0 / 26.0)).abs() < 1e-15);
        assert!(pointwise_threshold(1).is_err());

        assert!((crossover_theta(3).unwrap() - 0.3169873).abs() < 1e-7);
        assert!((crossover_theta(1000).unwrap() - 0.25).abs() < 1e-3);
        assert!(crossover_theta(2).is_err());
        let t = crossover_theta(4).unwrap();
        let d = exponent_lfn(4, t).unwrap() - exponent_spectral_summed(4, t).unwrap();
        assert!(d.abs() <= 1e-12);
    }

    #[test]
    fn amplified_examples() {
        let r = amplified_exponents(3, 0.4, 7.0).unwrap();
        assert!((r.kloosterman.q_exponent - 1.0).abs() < 1e-12);
        assert_eq!(r.verdict, AmplifiedVerdict::Boundary);
        assert!((r.boundary_theta - 0.4).abs() < 1e-15);

        let r = amplified_exponents(3, 0.45, 7.0).unwrap();
        assert!((r.kloosterman.q_exponent - 8.0 * 0.1 / 1.8).abs() < 1e-12);
        assert_eq!(r.verdict, AmplifiedVerdict::AmplificationWins);

        let r = amplified_exponents(3, 0.3, 7.0).unwrap();
        assert!((r.kloosterman.q_exponent - 8.0 * 0.4 / 1.2).abs() < 1e-12);
        assert!((r.twisted.q_exponent - 9.0 * 0.4 / 1.2).abs() < 1e-12);
        assert_eq!(r.verdict, AmplifiedVerdict::PickQOne);
        assert!(amplified_exponents(3, 0.3, 0.5).is_err());
    }

    fn single(mu: &[f64], arch: &[f64]) -> Family {
        let rep = Representation::new("a", UnramifiedLocal::from_real(arch))
            .with_unramified(2, UnramifiedLocal::from_real(mu));
        Family::new(2, vec![rep]).unwrap()
    }

    #[test]
    fn finite_chain_examples() {
        let f = single(&[0.3, -0.3], &[0.0, 0.0]);
        let rep = simulate_chain_finite(&f, 2, 2, &[C64::new(1.0, 0.0)], K).unwrap();
        assert!(rep.pass && rep.steps.iter().all(|s| s.s_value >= 0.0));

        let f = sample_family(2, 4, 0.3, &[2], 3).unwrap();
        let w = vec![C64::new(1.0, 0.0); 4];
        let rep = simulate_chain_finite(&f, 2, 2, &w, K).unwrap();
        assert!(rep.pass && rep.min_slack() >= -1e-9, "{rep:?}");
        assert_eq!(rep.steps.len(), 2);

        let w = phase_aligned_weights(&f, 2, 3).unwrap();
        let mut aligned = C64::new(0.0, 0.0);
        let mut total = 0.0;
        for (rep, wi) in f.reps().iter().zip(&w) {
            let u = power_sum(rep, 2, 3).unwrap();
            aligned += wi * u;
            total += u.norm();
        }
        assert!((aligned.norm() - total).abs() < 1e-12 * total.max(1.0));

        assert!(simulate_chain_finite(&f, 2, 7, &w, K).is_err());
        assert!(simulate_chain_finite(&f, 2, 2, &[C64::new(2.0, 0.0); 4], K).is_err());
    }

    #[test]
    fn infinite_chain_examples() {
        let f = single(&[0.0, 0.0], &[0.3, -0.3]);
        let rep = simulate_chain_infty(&f, 4, 0.3, K).unwrap();
        let s = rep.steps[0];
        assert!((s.s_value - 2.2973967).abs() < 1e-7);
        assert!(s.slack.abs() < 1e-12 && rep.pass);

        let mk = |id: &str, b: f64| {
            Representation::new(id, UnramifiedLocal::from_real(&[b, -b]))
                .with_unramified(2, UnramifiedLocal::from_real(&[0.0, 0.0]))
        };
        let f = Family::new(2, vec![mk("a", 0.3), mk("b", 0.4), mk("c", 0.3)]).unwrap();
        let rep = simulate_chain_infty(&f, 10, 0.3, K).unwrap();
        assert!(rep.steps[0].slack > 0.0 && rep.pass);

        assert!(simulate_chain_infty(&f, 10, 0.35, K).is_err());
    }
}
