//! Truncated local series and nonnegative-definite families.
//!
//! A [`LocalSeries`] at a prime `p` is a polynomial `Σ_{k ≤ K} c_k X^k` in
//! `X = p^{-s}`; `c_k` is the Dirichlet coefficient at `p^k`. Arithmetic is
//! that of `C[X]/(X^{K+1})`.
//!
//! A [`FamilySeries`] is an `F × F` grid of such series, indexed by ordered
//! pairs. It is nonnegative definite at degree `k` when the matrix of
//! degree-`k` coefficients is Hermitian positive semidefinite.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use rand::Rng;

use crate::linalg::min_hermitian_eigenvalue;
use crate::{seeded_rng, Error, Result, C64};

/// Tolerance on `c_0` for [`LocalSeries::log_series`].
pub const UNIT_CONSTANT_TOL: f64 = 1e-12;

/// Relative tolerance for the Hermitian-symmetry check of grids.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSeries {
    p: u64,
    coeffs: Vec<C64>,
}

impl LocalSeries {
    /// Series with the given coefficients `c_0..c_K` (at least one).
    pub fn new(p: u64, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::SeriesMismatch("a series needs at least c_0"));
        }
        Ok(Self { p, coeffs })
    }

    pub fn from_real(p: u64, coeffs: &[f64]) -> Result<Self> {
        Self::new(p, coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero(p: u64, k: usize) -> Self {
        Self {
            p,
            coeffs: vec![C64::new(0.0, 0.0); k + 1],
        }
    }

    pub fn unit(p: u64, k: usize) -> Self {
        let mut s = Self::zero(p, k);
        s.coeffs[0] = C64::new(1.0, 0.0);
        s
    }

    /// `(1 - αX)^{-1}` truncated at degree `k`.
    pub fn geometric(p: u64, k: usize, alpha: C64) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut acc = C64::new(1.0, 0.0);
        for _ in 0..=k {
            coeffs.push(acc);
            acc *= alpha;
        }
        Self { p, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Truncation degree `K`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<C64> {
        self.coeffs.get(k).copied()
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::SeriesMismatch("different primes"));
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::SeriesMismatch("different truncation degrees"));
        }
        Ok(())
    }

    /// Cauchy product truncated at `K`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let k = self.degree();
        let mut out = vec![C64::new(0.0, 0.0); k + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..=k - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self {
            p: self.p,
            coeffs: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Formal logarithm; requires `c_0 = 1`.
    ///
    /// Uses `b' = a'/a`, i.e. `k b_k = k a_k - Σ_{j<k} j b_j a_{k-j}`.
    pub fn log_series(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - C64::new(1.0, 0.0)).norm() > UNIT_CONSTANT_TOL {
            return Err(Error::ConstantTerm {
                expected: 1.0,
                got_re: c0.re,
                got_im: c0.im,
            });
        }
        let k = self.degree();
        let a = &self.coeffs;
        let mut b = vec![C64::new(0.0, 0.0); k + 1];
        for n in 1..=k {
            let mut acc = a[n] * n as f64;
            for j in 1..n {
                acc -= b[j] * a[n - j] * j as f64;
            }
            b[n] = acc / n as f64;
        }
        Ok(Self { p: self.p, coeffs: b })
    }

    /// Formal exponential; requires `c_0 = 0`.
    ///
    /// Uses `e' = a' e`, i.e. `k e_k = Σ_{j=1}^{k} j a_j e_{k-j}`.
    pub fn exp_series(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() > UNIT_CONSTANT_TOL {
            return Err(Error::ConstantTerm {
                expected: 0.0,
                got_re: c0.re,
                got_im: c0.im,
            });
        }
        let k = self.degree();
        let a = &self.coeffs;
        let mut e = vec![C64::new(0.0, 0.0); k + 1];
        e[0] = C64::new(1.0, 0.0);
        for n in 1..=k {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=n {
                acc += a[j] * e[n - j] * j as f64;
            }
            e[n] = acc / n as f64;
        }
        Ok(Self { p: self.p, coeffs: e })
    }
}

impl Index<usize> for LocalSeries {
    type Output = C64;

    fn index(&self, k: usize) -> &C64 {
        &self.coeffs[k]
    }
}

/// `F × F` grid of local series at a common prime and truncation, entry
/// `(i, j)` attached to the ordered pair `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySeries {
    size: usize,
    entries: Vec<LocalSeries>,
}

impl FamilySeries {
    /// Builds a grid from row-major entries, checking shape, compatibility
    /// and Hermitian symmetry.
    pub fn new(size: usize, entries: Vec<LocalSeries>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Dimension {
                expected: size * size,
                got: entries.len(),
            });
        }
        if let Some(first) = entries.first() {
            for e in &entries[1..] {
                first.check_compatible(e)?;
            }
        }
        let fs = Self { size, entries };
        fs.check_hermitian()?;
        Ok(fs)
    }

    /// Builds a grid from `f(i, j)`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> LocalSeries) -> Result<Self> {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        Self::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn prime(&self) -> Option<u64> {
        self.entries.first().map(|e| e.prime())
    }

    pub fn degree(&self) -> usize {
        self.entries.first().map_or(0, |e| e.degree())
    }

    pub fn entry(&self, i: usize, j: usize) -> &LocalSeries {
        &self.entries[i * self.size + j]
    }

    fn check_hermitian(&self) -> Result<()> {
        let n = self.size;
        for i in 0..n {
            for j in i..n {
                let a = self.entry(i, j);
                let b = self.entry(j, i);
                for (k, (x, y)) in a.coeffs.iter().zip(&b.coeffs).enumerate() {
                    let scale = 1.0f64.max(x.norm()).max(y.norm());
                    if (x - y.conj()).norm() > HERMITIAN_TOL * scale {
                        return Err(Error::NotHermitian {
                            row: i,
                            col: j,
                            degree: k,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Row-major `F × F` matrix of degree-`k` coefficients.
    pub fn matrix(&self, k: usize) -> Result<Vec<C64>> {
        let max = self.degree();
        if k > max {
            return Err(Error::DegreeOutOfRange { degree: k, max });
        }
        Ok(self.entries.iter().map(|e| e.coeffs[k]).collect())
    }

    fn map(&self, f: impl Fn(&LocalSeries) -> Result<LocalSeries>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.size, entries)
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&LocalSeries, &LocalSeries) -> Result<LocalSeries>,
    ) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::Dimension {
                expected: self.size,
                got: other.size,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.size, entries)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(C64::new(c, 0.0))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, LocalSeries::add)
    }

    /// Entrywise series product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip(other, LocalSeries::mul)
    }

    /// Entrywise `exp` after dropping constant terms.
    pub fn exp_entries(&self) -> Result<Self> {
        self.map(|e| {
            let mut z = e.clone();
            z.coeffs[0] = C64::new(0.0, 0.0);
            z.exp_series()
        })
    }

    /// Entrywise formal logarithm (requires unit constant terms).
    pub fn log_entries(&self) -> Result<Self> {
        self.map(LocalSeries::log_series)
    }
}

/// Minimum eigenvalue of one degree and the PSD verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub degree: usize,
    pub min_eigenvalue: f64,
    pub trace: f64,
    pub pass: bool,
}

/// Relative PSD threshold: passes iff `λ_min ≥ -tol · max(1, trace)`.
pub fn psd_threshold(tol: f64, trace: f64) -> f64 {
    -tol * 1.0f64.max(trace)
}

/// PSD check of a Hermitian row-major matrix of size `n`.
pub fn psd_check_matrix(m: &[C64], n: usize, tol: f64) -> (f64, f64, bool) {
    let trace: f64 = (0..n).map(|i| m[i * n + i].re).sum();
    let min = min_hermitian_eigenvalue(m, n);
    (min, trace, min >= psd_threshold(tol, trace))
}

/// PSD check of the degree-`k` coefficient matrix of `fs`.
pub fn psd_check(fs: &FamilySeries, k: usize, tol: f64) -> Result<PsdCheck> {
    fs.check_hermitian()?;
    let m = fs.matrix(k)?;
    let (min_eigenvalue, trace, pass) = psd_check_matrix(&m, fs.size(), tol);
    Ok(PsdCheck {
        degree: k,
        min_eigenvalue,
        trace,
        pass,
    })
}

/// PSD checks at every degree `0..=K`.
pub fn psd_check_all(fs: &FamilySeries, tol: f64) -> Result<Vec<PsdCheck>> {
    (0..=fs.degree()).map(|k| psd_check(fs, k, tol)).collect()
}

/// Tolerance used by [`psd_closure_suite`].
pub const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Scale,
    Sum,
    Product,
    Exp,
}

/// Worst observed minimum eigenvalue (relative to `max(1, trace)`) and
/// failure count for one construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureRecord {
    pub construction: Closure,
    pub min_eigenvalue: f64,
    pub worst_relative: f64,
    pub failures: usize,
    pub checks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureReport {
    pub records: Vec<ClosureRecord>,
}

impl ClosureReport {
    pub fn failures(&self) -> usize {
        self.records.iter().map(|r| r.failures).sum()
    }
}

/// Checks that `c·fs1`, `c₁·fs1 + c₂·fs2`, `fs1 ⊙ fs2` and
/// `exp(fs1 − constants)` stay PSD at every degree, with nonnegative
/// scalars drawn per trial from `[0, 4)`.
pub fn psd_closure_suite(
    fs1: &FamilySeries,
    fs2: &FamilySeries,
    trials: usize,
    seed: u64,
) -> Result<ClosureReport> {
    let mut rng = seeded_rng(seed);
    let mut records: Vec<ClosureRecord> = [Closure::Scale, Closure::Sum, Closure::Product, Closure::Exp]
        .into_iter()
        .map(|construction| ClosureRecord {
            construction,
            min_eigenvalue: f64::INFINITY,
            worst_relative: f64::INFINITY,
            failures: 0,
            checks: 0,
        })
        .collect();
    for trial in 0..trials {
        // The first trial pins c = 0 for the scaling construction.
        let c1: f64 = if trial == 0 { 0.0 } else { rng.gen_range(0.0..4.0) };
        let c2: f64 = rng.gen_range(0.0..4.0);
        let built = [
            fs1.scale(c1),
            fs1.scale(c1).add(&fs2.scale(c2))?,
            fs1.scale(c1).hadamard(&fs2.scale(c2))?,
            fs1.scale(c1).exp_entries()?,
        ];
        for (rec, fs) in records.iter_mut().zip(&built) {
            for chk in psd_check_all(fs, CLOSURE_TOL)? {
                rec.checks += 1;
                rec.min_eigenvalue = rec.min_eigenvalue.min(chk.min_eigenvalue);
                rec.worst_relative = rec
                    .worst_relative
                    .min(chk.min_eigenvalue / 1.0f64.max(chk.trace));
                if !chk.pass {
                    rec.failures += 1;
                }
            }
        }
    }
    Ok(ClosureReport { records })
}

/// Random PSD grid `Σ_m w^{(m)}_i conj(w^{(m)}_j) X^{d_m}` with `terms`
/// rank-one terms at random degrees `d_m ∈ 0..=k`, entries of `w` uniform
/// in the unit square.
pub fn random_psd_grid<R: Rng>(
    rng: &mut R,
    p: u64,
    size: usize,
    k: usize,
    terms: usize,
) -> FamilySeries {
    let mut entries = vec![LocalSeries::zero(p, k); size * size];
    for _ in 0..terms {
        let deg = rng.gen_range(0..=k);
        let w: Vec<C64> = (0..size)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for i in 0..size {
            for j in 0..size {
                entries[i * size + j].coeffs_mut()[deg] += w[i] * w[j].conj();
            }
        }
    }
    FamilySeries { size, entries }
}
