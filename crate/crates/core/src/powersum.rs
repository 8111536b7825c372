//! Turán power sums `max_{M < k ≤ M+N} |Σ_j z_j^k|`.
//!
//! All comparisons are made after dividing by `r = max_j |z_j|`, so the
//! window maximum is chosen in log space and large `k` never overflows the
//! ratio.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::{seeded_rng, Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumInstance {
    pub z: Vec<C64>,
    pub m: u64,
}

impl PowerSumInstance {
    pub fn new(z: Vec<C64>, m: u64) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::Domain("power sum needs at least one z_j".into()));
        }
        if m < 1 {
            return Err(Error::Domain("M must be at least 1".into()));
        }
        Ok(Self { z, m })
    }

    /// Window length `N`.
    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn window(&self) -> core::ops::RangeInclusive<u64> {
        self.m + 1..=self.m + self.n() as u64
    }

    fn max_abs(&self) -> f64 {
        self.z.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuranLhs {
    pub k_star: u64,
    pub value: f64,
    /// `|Σ_j (z_j / r)^{k_star}|` with `r = max_j |z_j|`.
    pub normalized: f64,
}

fn normalized_sum(w: &[C64], k: u64) -> f64 {
    w.iter().map(|x| x.powu(k as u32)).sum::<C64>().norm()
}

/// The window maximum and the smallest `k` attaining it.
pub fn turan_lhs(inst: &PowerSumInstance) -> TuranLhs {
    let r = inst.max_abs();
    if r == 0.0 {
        return TuranLhs {
            k_star: inst.m + 1,
            value: 0.0,
            normalized: 0.0,
        };
    }
    let w: Vec<C64> = inst.z.iter().map(|z| z / r).collect();
    let lr = r.ln();
    let mut best: Option<(u64, f64, f64)> = None;
    for k in inst.window() {
        let s = normalized_sum(&w, k);
        let score = if s > 0.0 {
            k as f64 * lr + s.ln()
        } else {
            f64::NEG_INFINITY
        };
        if best.is_none_or(|(_, b, _)| score > b) {
            best = Some((k, score, s));
        }
    }
    let (k_star, score, normalized) = best.expect("window is nonempty");
    TuranLhs {
        k_star,
        value: score.exp(),
        normalized,
    }
}

/// `value / (M^{-N} max_j |z_j|^{k_star})`, i.e. `M^N |Σ_j (z_j/r)^{k_star}|`.
/// Exactly `M` when `N = 1`.
pub fn turan_ratio(inst: &PowerSumInstance) -> Result<f64> {
    if inst.max_abs() == 0.0 {
        return Err(Error::Domain("all z_j vanish".into()));
    }
    if inst.n() == 1 {
        return Ok(inst.m as f64);
    }
    let lhs = turan_lhs(inst);
    Ok((inst.m as f64).powi(inst.n() as i32) * lhs.normalized)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub m: u64,
    pub trials: usize,
    pub min_ratio: f64,
    /// Instance attaining `min_ratio`.
    pub worst: Vec<C64>,
}

/// Minimum of [`turan_ratio`] over `trials` instances per `M`, with `z_j`
/// uniform in the unit disc and rescaled so that `max_j |z_j| = 1`.
/// Each `M` uses its own ChaCha stream of the seeded generator.
pub fn turan_sweep(n: usize, m_list: &[u64], trials: usize, seed: u64) -> Result<Vec<SweepRecord>> {
    if trials == 0 || n == 0 {
        return Err(Error::Domain("need N ≥ 1 and trials ≥ 1".into()));
    }
    let mut out = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let mut rng = seeded_rng(seed);
        rng.set_stream(m);
        let mut rec = SweepRecord {
            n,
            m,
            trials,
            min_ratio: f64::INFINITY,
            worst: Vec::new(),
        };
        for _ in 0..trials {
            let z = sample_disc(&mut rng, n);
            let ratio = turan_ratio(&PowerSumInstance::new(z.clone(), m)?)?;
            if ratio < rec.min_ratio {
                rec.min_ratio = ratio;
                rec.worst = z;
            }
        }
        out.push(rec);
    }
    Ok(out)
}

fn sample_disc<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let z: Vec<C64> = (0..n)
            .map(|_| {
                let r: f64 = rng.gen::<f64>().sqrt();
                let phi: f64 = rng.gen_range(0.0..2.0 * PI);
                C64::from_polar(r, phi)
            })
            .collect();
        let max = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if max > 0.0 {
            return z.into_iter().map(|x| x / max).collect();
        }
    }
}
