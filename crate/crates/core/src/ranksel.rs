//! Rankin–Selberg coefficients `a_{π×π̃'}(m)` of synthetic representations.
//!
//! At a prime where both sides are unramified the local logarithm is
//! `Σ_q P_q(π) conj(P_q(π')) X^q / q` with `P_q = Σ_j α_j^q`. Otherwise both
//! sides are expressed as segment data and the logarithm is assembled class
//! by class from
//!
//! ```text
//! Σ_ℓ Σ_q (1/q) A_{q,ℓ} conj(B_{q,ℓ}) X^{q r},
//! A_{q,ℓ} = Σ_{segments in the class with L ≥ ℓ} p^{-q r (s + (L - ℓ)/2)},
//! ```
//!
//! which is the expansion of `∏ (1 - p^{-r(s + s_a + conj(s_b) + (L_a+L_b)/2 - ℓ)})^{-1}`
//! with the `p^{q r ℓ}` factor split evenly between the two sums.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dseries::{FamilySeries, LocalSeries};
use crate::repmodel::{
    Family, LocalComponent, RamifiedSegment, Representation, UNRAMIFIED_CLASS,
};
use crate::{factorize, Error, Result, C64};

/// Tolerance on diagonal entries of a [`CoeffMatrix`], which must be real
/// and nonnegative.
pub const DIAGONAL_TOL: f64 = 1e-10;

/// The ordered pair `(π, π')`; coefficients are those of `π × π̃'`.
#[derive(Debug, Clone, Copy)]
pub struct RsPair<'a> {
    pub a: &'a Representation,
    pub b: &'a Representation,
}

impl<'a> RsPair<'a> {
    pub fn new(a: &'a Representation, b: &'a Representation) -> Result<Self> {
        if a.rank != b.rank {
            return Err(Error::Dimension {
                expected: a.rank,
                got: b.rank,
            });
        }
        Ok(Self { a, b })
    }
}

fn cpow(p: u64, z: C64) -> C64 {
    (z * (p as f64).ln()).exp()
}

/// `P_q = Σ_j α_j^q` with `α_j = p^{μ_j}`.
pub fn power_sum(rep: &Representation, p: u64, q: u32) -> Result<C64> {
    let local = rep.unramified_at(p)?;
    Ok(local.mu.iter().map(|&m| cpow(p, m * q as f64)).sum())
}

/// Segment data of `rep` at `p`. Unramified tuples become `GL(1)` segments
/// in [`UNRAMIFIED_CLASS`] with `r = L = 1` and `s = -μ_j`, so that
/// `p^{-qs} = α_j^q`.
pub fn local_segments(rep: &Representation, p: u64) -> Result<Vec<RamifiedSegment>> {
    match rep.local(p)? {
        LocalComponent::Ramified(segs) => Ok(segs.clone()),
        LocalComponent::Unramified(u) => Ok(u
            .mu
            .iter()
            .map(|&m| RamifiedSegment::new(UNRAMIFIED_CLASS, 1, 1, -m))
            .collect()),
    }
}

/// `log L_p(s, π × π̃')` for a pair unramified at `p`, truncated at `k_max`.
pub fn rs_log_local_unramified(pair: &RsPair, p: u64, k_max: usize) -> Result<LocalSeries> {
    let a = pair.a.unramified_at(p)?.satake(p);
    let b = pair.b.unramified_at(p)?.satake(p);
    let mut coeffs = vec![C64::new(0.0, 0.0); k_max + 1];
    let mut pa = a.clone();
    let mut pb = b.clone();
    for (q, c) in coeffs.iter_mut().enumerate().skip(1) {
        let sa: C64 = pa.iter().sum();
        let sb: C64 = pb.iter().sum();
        *c = sa * sb.conj() / q as f64;
        for (x, y) in pa.iter_mut().zip(&a) {
            *x *= y;
        }
        for (x, y) in pb.iter_mut().zip(&b) {
            *x *= y;
        }
    }
    LocalSeries::new(p, coeffs)
}

fn check_segment(seg: &RamifiedSegment) -> Result<()> {
    if seg.r < 1 || seg.length < 1 {
        return Err(Error::Segments(format!(
            "class {} has r = {}, L = {}",
            seg.twist_class, seg.r, seg.length
        )));
    }
    Ok(())
}

/// `log L_p(s, π × π̃')` from segment data on both sides, truncated at
/// `k_max`. Classes present on one side only contribute nothing.
pub fn rs_log_local_ramified(
    segs_a: &[RamifiedSegment],
    segs_b: &[RamifiedSegment],
    p: u64,
    k_max: usize,
) -> Result<LocalSeries> {
    let mut classes: BTreeMap<&str, u32> = BTreeMap::new();
    for seg in segs_a.iter().chain(segs_b) {
        check_segment(seg)?;
        let r = *classes.entry(seg.twist_class.as_str()).or_insert(seg.r);
        if r != seg.r {
            return Err(Error::Segments(format!(
                "class {} declared with r = {r} and r = {}",
                seg.twist_class, seg.r
            )));
        }
    }

    let mut coeffs = vec![C64::new(0.0, 0.0); k_max + 1];
    for (&class, &r) in &classes {
        let in_a: Vec<&RamifiedSegment> =
            segs_a.iter().filter(|s| s.twist_class == class).collect();
        let in_b: Vec<&RamifiedSegment> =
            segs_b.iter().filter(|s| s.twist_class == class).collect();
        let max_a = in_a.iter().map(|s| s.length).max().unwrap_or(0);
        let max_b = in_b.iter().map(|s| s.length).max().unwrap_or(0);
        for ell in 1..=max_a.min(max_b) {
            let mut q = 1usize;
            while q * r as usize <= k_max {
                let side = |segs: &[&RamifiedSegment]| -> C64 {
                    segs.iter()
                        .filter(|s| s.length >= ell)
                        .map(|s| {
                            let shift = 0.5 * (s.length - ell) as f64;
                            cpow(p, -(s.s + shift) * (q as f64 * r as f64))
                        })
                        .sum()
                };
                let sa = side(&in_a);
                let sb = side(&in_b);
                coeffs[q * r as usize] += sa * sb.conj() / q as f64;
                q += 1;
            }
        }
    }
    LocalSeries::new(p, coeffs)
}

/// Local logarithm, dispatching on whether both sides are unramified.
pub fn rs_log_local(pair: &RsPair, p: u64, k_max: usize) -> Result<LocalSeries> {
    if pair.a.is_unramified_at(p) && pair.b.is_unramified_at(p) {
        rs_log_local_unramified(pair, p, k_max)
    } else {
        let sa = local_segments(pair.a, p)?;
        let sb = local_segments(pair.b, p)?;
        rs_log_local_ramified(&sa, &sb, p, k_max)
    }
}

/// `L_p(s, π × π̃')` as a series, i.e. `a(p^k)` for `k ≤ k_max`.
pub fn rs_local_series(pair: &RsPair, p: u64, k_max: usize) -> Result<LocalSeries> {
    rs_log_local(pair, p, k_max)?.exp_series()
}

/// `a_{π×π̃'}(m)` assembled multiplicatively over `p^k ∥ m`.
pub fn rs_coefficient(pair: &RsPair, m: u64, k_max: usize) -> Result<C64> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let mut out = C64::new(1.0, 0.0);
    for (p, k) in factorize(m) {
        if k as usize > k_max {
            return Err(Error::Truncation {
                p,
                exponent: k,
                max: k_max,
            });
        }
        out *= rs_local_series(pair, p, k as usize)?[k as usize];
    }
    Ok(out)
}

/// `F × F` matrix `(a_{π_i×π̃_j}(m))`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    pub m: u64,
    pub size: usize,
    pub entries: Vec<C64>,
}

impl CoeffMatrix {
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.size + j]
    }

    /// Hermitian to `tol` (relative to `max(1, |entry|)`) with real,
    /// nonnegative diagonal.
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        for i in 0..self.size {
            let d = self.get(i, i);
            if d.im.abs() > tol * 1.0f64.max(d.norm()) || d.re < -DIAGONAL_TOL {
                return Err(Error::Domain(format!(
                    "diagonal entry {i} is {}+{}i",
                    d.re, d.im
                )));
            }
            for j in i + 1..self.size {
                let x = self.get(i, j);
                let y = self.get(j, i);
                if (x - y.conj()).norm() > tol * 1.0f64.max(x.norm()) {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        degree: 0,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Coefficient matrix at `m`. Each local series is computed once per
/// unordered pair and mirrored by conjugation.
pub fn rs_matrix(f: &Family, m: u64, k_max: usize) -> Result<CoeffMatrix> {
    let n = f.len();
    let mut entries = vec![C64::new(0.0, 0.0); n * n];
    let reps = f.reps();
    for i in 0..n {
        for j in i..n {
            let a = rs_coefficient(&RsPair::new(&reps[i], &reps[j])?, m, k_max)?;
            if i == j {
                entries[i * n + i] = C64::new(a.re, 0.0);
            } else {
                entries[i * n + j] = a;
                entries[j * n + i] = a.conj();
            }
        }
    }
    let cm = CoeffMatrix {
        m,
        size: n,
        entries,
    };
    cm.check_invariants(1e-12)?;
    Ok(cm)
}

/// The grid `(L_p(s, π_i × π̃_j))_{i,j}` at `p`.
pub fn rs_local_family_series(f: &Family, p: u64, k_max: usize) -> Result<FamilySeries> {
    let reps = f.reps();
    let n = reps.len();
    let mut upper: BTreeMap<(usize, usize), LocalSeries> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            upper.insert((i, j), rs_local_series(&RsPair::new(&reps[i], &reps[j])?, p, k_max)?);
        }
    }
    FamilySeries::from_fn(n, |i, j| {
        if i <= j {
            upper[&(i, j)].clone()
        } else {
            upper[&(j, i)].conj()
        }
    })
}

/// Both sides of the prime-power lower bound
/// `Σ w_π conj(w_π') a(p^k) ≥ (1/k) |Σ w_π P_k(π)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub lhs: f64,
    pub lhs_im: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl LowerBound {
    /// `slack ≥ -1e-9 · max(1, |lhs|)`.
    pub fn holds(&self) -> bool {
        self.slack >= -1e-9 * 1.0f64.max(self.lhs.abs())
    }
}

/// Evaluates both sides of the prime-power lower bound at `p^k`.
pub fn explicit_lower_bound(f: &Family, w: &[C64], p: u64, k: usize) -> Result<LowerBound> {
    if w.len() != f.len() {
        return Err(Error::Dimension {
            expected: f.len(),
            got: w.len(),
        });
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let reps = f.reps();
    let mut lhs = C64::new(0.0, 0.0);
    let mut wp = C64::new(0.0, 0.0);
    for (i, a) in reps.iter().enumerate() {
        wp += w[i] * power_sum(a, p, k as u32)?;
        for (j, b) in reps.iter().enumerate() {
            let c = rs_local_series(&RsPair::new(a, b)?, p, k)?[k];
            lhs += w[i] * w[j].conj() * c;
        }
    }
    let rhs = wp.norm_sqr() / k as f64;
    Ok(LowerBound {
        lhs: lhs.re,
        lhs_im: lhs.im,
        rhs,
        slack: lhs.re - rhs,
    })
}

/// `Σ_{π,π'} w_{π,π'} Σ_{m ≤ M} u_m a_{π×π̃'}(m) (M/m)^{β_π + conj(β_π')}`
/// with `u[i]` the weight at `m = i + 1`; `w` is row-major `F × F`.
pub fn rs_triple_sum(
    f: &Family,
    w: &[C64],
    u: &[C64],
    beta: &[C64],
    big_m: f64,
    k_max: usize,
) -> Result<C64> {
    let n = f.len();
    if w.len() != n * n {
        return Err(Error::Dimension {
            expected: n * n,
            got: w.len(),
        });
    }
    if beta.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: beta.len(),
        });
    }
    if !(big_m >= 1.0) {
        return Err(Error::Domain(format!("M = {big_m} must be at least 1")));
    }
    let reps = f.reps();
    let zero = C64::new(0.0, 0.0);
    let mut total = zero;
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            let wij = w[i * n + j];
            if wij == zero {
                continue;
            }
            let pair = RsPair::new(a, b)?;
            let e = beta[i] + beta[j].conj();
            let mut inner = zero;
            for (idx, &um) in u.iter().enumerate() {
                let m = idx as u64 + 1;
                if m as f64 > big_m {
                    break;
                }
                if um == zero {
                    continue;
                }
                let ratio = C64::new(big_m / m as f64, 0.0);
                inner += um * rs_coefficient(&pair, m, k_max)? * (e * ratio.ln()).exp();
            }
            total += wij * inner;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmodel::UnramifiedLocal;
    use crate::DEFAULT_TRUNCATION as K;
    use alloc::vec;

    fn rep(id: &str, p: u64, mu: &[C64]) -> Representation {
        Representation::new(id, UnramifiedLocal::from_real(&[0.0, 0.0]))
            .with_unramified(p, UnramifiedLocal::new(mu.to_vec()))
    }

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn unramified_log_examples() {
        let a = rep("a", 2, &[r(0.0), r(0.0)]);
        let s = rs_log_local_unramified(&RsPair::new(&a, &a).unwrap(), 2, 3).unwrap();
        assert_eq!(s[0], r(0.0));
        assert!((s[1] - r(4.0)).norm() < 1e-14);

        let a = rep("a", 2, &[r(0.25), r(-0.25)]);
        let s = rs_log_local_unramified(&RsPair::new(&a, &a).unwrap(), 2, 3).unwrap();
        assert!((s[1].re - 4.1213203).abs() < 1e-7);
        assert!((s[2].re - 2.25).abs() < 1e-12);

        let t = core::f64::consts::PI / 2f64.ln();
        let b = rep("b", 2, &[C64::new(0.0, t), C64::new(0.0, -t)]);
        let s = rs_log_local_unramified(&RsPair::new(&a, &b).unwrap(), 2, 1).unwrap();
        assert!((s[1] - r(-4.0602071)).norm() < 1e-7);
    }

    #[test]
    fn ramified_log_examples() {
        let seg = |l: u32| vec![RamifiedSegment::new("c", 1, l, r(0.0))];
        let s = rs_log_local_ramified(&seg(1), &seg(1), 2, 5).unwrap();
        for k in 1..=5 {
            assert!((s[k] - r(1.0 / k as f64)).norm() < 1e-15);
        }

        let other = vec![RamifiedSegment::new("d", 1, 1, r(0.0))];
        let s = rs_log_local_ramified(&seg(1), &other, 2, 5).unwrap();
        assert!(s.coeffs().iter().all(|c| *c == r(0.0)));

        let s = rs_log_local_ramified(&seg(2), &seg(1), 2, 4).unwrap();
        assert!((s[2] - r(0.25)).norm() < 1e-15);

        let bad = vec![RamifiedSegment::new("c", 2, 1, r(0.0))];
        assert!(matches!(
            rs_log_local_ramified(&seg(1), &bad, 2, 4),
            Err(Error::Segments(_))
        ));
    }

    #[test]
    fn unramified_encoding_agrees() {
        let a = rep("a", 3, &[C64::new(0.2, 0.7), C64::new(-0.2, 0.7)]);
        let b = rep("b", 3, &[C64::new(0.0, 1.3), C64::new(0.0, -0.4)]);
        let pair = RsPair::new(&a, &b).unwrap();
        let direct = rs_log_local_unramified(&pair, 3, 6).unwrap();
        let via = rs_log_local_ramified(
            &local_segments(&a, 3).unwrap(),
            &local_segments(&b, 3).unwrap(),
            3,
            6,
        )
        .unwrap();
        for k in 0..=6 {
            assert!((direct[k] - via[k]).norm() < 1e-13 * (1.0 + direct[k].norm()));
        }
    }

    #[test]
    fn coefficient_examples() {
        let a = rep("a", 2, &[r(0.25), r(-0.25)]).with_unramified(3, UnramifiedLocal::from_real(&[0.0, 0.0]));
        let pair = RsPair::new(&a, &a).unwrap();
        assert_eq!(rs_coefficient(&pair, 1, K).unwrap(), r(1.0));
        assert!((rs_coefficient(&pair, 4, K).unwrap().re - 10.7426407).abs() < 1e-7);
        assert!((rs_coefficient(&pair, 6, K).unwrap().re - 16.4852814).abs() < 1e-7);
        assert!(matches!(
            rs_coefficient(&pair, 1 << 9, K),
            Err(Error::Truncation { .. })
        ));
        assert!(matches!(
            rs_coefficient(&pair, 5, K),
            Err(Error::MissingLocalData { .. })
        ));
    }

    #[test]
    fn matrix_examples() {
        let a = rep("a", 2, &[r(0.25), r(-0.25)]);
        let b = rep("b", 2, &[C64::new(0.1, 0.5), C64::new(-0.1, 0.5)]);
        let f = Family::new(2, vec![a.clone(), b.clone()]).unwrap();
        let one = rs_matrix(&f, 1, K).unwrap();
        assert!(one.entries.iter().all(|e| *e == r(1.0)));

        let m = rs_matrix(&f, 2, K).unwrap();
        let la = crate::repmodel::hecke_eigenvalue(&a, 2).unwrap();
        let lb = crate::repmodel::hecke_eigenvalue(&b, 2).unwrap();
        let expect = [la * la.conj(), la * lb.conj(), lb * la.conj(), lb * lb.conj()];
        for (x, y) in m.entries.iter().zip(&expect) {
            assert!((x - y).norm() < 1e-12);
        }
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        assert!(det.norm() < 1e-12);
    }

    #[test]
    fn lower_bound_examples() {
        let a = rep("a", 2, &[r(0.25), r(-0.25)]);
        let b = rep("b", 2, &[r(0.1), r(-0.1)]);
        let single = Family::new(2, vec![a.clone()]).unwrap();
        let lb = explicit_lower_bound(&single, &[r(1.0)], 2, 1).unwrap();
        assert!(lb.slack.abs() < 1e-12 && (lb.lhs - 4.1213203).abs() < 1e-7);

        let f = Family::new(2, vec![a, b]).unwrap();
        let w = [r(1.0), r(1.0)];
        let lb = explicit_lower_bound(&f, &w, 2, 1).unwrap();
        assert!((lb.lhs - 16.2805).abs() < 1e-4 && (lb.rhs - 16.2805).abs() < 1e-4);
        let lb = explicit_lower_bound(&f, &w, 2, 2).unwrap();
        assert!(lb.slack > 0.0 && lb.holds());
    }

    #[test]
    fn triple_sum_examples() {
        let a = rep("a", 2, &[r(0.25), r(-0.25)]);
        let b = rep("b", 2, &[r(0.1), r(-0.1)]);
        let f = Family::new(2, vec![a, b]).unwrap();
        let ones = vec![r(1.0); 4];
        let s = rs_triple_sum(&f, &ones, &[r(1.0)], &[r(0.0); 2], 1.0, K).unwrap();
        assert!((s - r(4.0)).norm() < 1e-14);

        let mut u = vec![r(0.0); 2];
        u[1] = r(1.0);
        let s = rs_triple_sum(&f, &ones, &u, &[r(0.0); 2], 2.0, K).unwrap();
        let m = rs_matrix(&f, 2, K).unwrap();
        let sum: C64 = m.entries.iter().sum();
        assert!((s - sum).norm() < 1e-12);
    }
}
