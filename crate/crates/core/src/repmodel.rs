//! Synthetic unitary representations and families.
//!
//! A [`Representation`] carries Langlands parameters at the Archimedean
//! place, a local component at each listed prime (either an unramified
//! Satake tuple `μ` with `α = p^μ`, or a list of [`RamifiedSegment`]s) and a
//! declared arithmetic conductor. Nothing here is derived from genuine
//! automorphic data: conductors are inputs, and twist-inequivalence inside a
//! [`Family`] is modelled by distinct ids.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::{is_prime, seeded_rng, Error, Result, C64};

/// Absolute tolerance used when matching a parameter multiset against its
/// image under `μ ↦ -conj(μ)`.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Twist-class id of the unramified characters `|·|^{z}` of `GL(1)`.
///
/// Unramified local components are re-expressed as `GL(1)` segments in this
/// class whenever a pair mixes ramified and unramified data.
pub const UNRAMIFIED_CLASS: &str = "unramified";

/// Unramified local parameters `μ_1..μ_n` at one place.
#[derive(Debug, Clone, PartialEq)]
pub struct UnramifiedLocal {
    pub mu: Vec<C64>,
}

impl UnramifiedLocal {
    pub fn new(mu: Vec<C64>) -> Self {
        Self { mu }
    }

    /// Real parameters `(ν_1, ..)` as a tuple of complex numbers.
    pub fn from_real(nu: &[f64]) -> Self {
        Self::new(nu.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// `{μ_j} == {-conj(μ_j)}` as multisets, greedy nearest-pair matching.
    pub fn is_unitary(&self, tol: f64) -> bool {
        multiset_matches(&self.mu, |m| -m.conj(), |a, b| (a - b).norm(), tol)
    }

    /// `max_j |Re μ_j|`.
    pub fn max_abs_re(&self) -> f64 {
        self.mu.iter().map(|m| m.re.abs()).fold(0.0, f64::max)
    }

    /// `max_j Re μ_j` (equal to [`Self::max_abs_re`] for unitary tuples).
    pub fn max_re(&self) -> f64 {
        self.mu
            .iter()
            .map(|m| m.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Satake parameters `α_j = p^{μ_j}`.
    pub fn satake(&self, p: u64) -> Vec<C64> {
        let lp = (p as f64).ln();
        self.mu.iter().map(|m| (m * lp).exp()).collect()
    }
}

/// One segment `Δ(L, ρ)` of a ramified local component.
///
/// `s = t + iu` combines the real Langlands parameter with the twist
/// `ρ = ρ_0[iu]` inside the class `twist_class`; `r` is the order of the
/// twist-stabilizer of the class.
#[derive(Debug, Clone, PartialEq)]
pub struct RamifiedSegment {
    pub twist_class: String,
    pub r: u32,
    pub length: u32,
    pub s: C64,
}

impl RamifiedSegment {
    pub fn new(twist_class: impl Into<String>, r: u32, length: u32, s: C64) -> Self {
        Self {
            twist_class: twist_class.into(),
            r,
            length,
            s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocalComponent {
    Unramified(UnramifiedLocal),
    Ramified(Vec<RamifiedSegment>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub id: String,
    pub rank: usize,
    pub archimedean: UnramifiedLocal,
    pub finite: BTreeMap<u64, LocalComponent>,
    pub arith_conductor: u64,
}

impl Representation {
    /// A representation with the given Archimedean parameters, conductor 1
    /// and no finite data yet.
    pub fn new(id: impl Into<String>, archimedean: UnramifiedLocal) -> Self {
        Self {
            id: id.into(),
            rank: archimedean.rank(),
            archimedean,
            finite: BTreeMap::new(),
            arith_conductor: 1,
        }
    }

    pub fn with_unramified(mut self, p: u64, local: UnramifiedLocal) -> Self {
        self.finite.insert(p, LocalComponent::Unramified(local));
        self
    }

    pub fn with_ramified(mut self, p: u64, segments: Vec<RamifiedSegment>) -> Self {
        self.finite.insert(p, LocalComponent::Ramified(segments));
        self
    }

    pub fn with_conductor(mut self, f: u64) -> Self {
        self.arith_conductor = f;
        self
    }

    pub fn local(&self, p: u64) -> Result<&LocalComponent> {
        self.finite.get(&p).ok_or_else(|| Error::MissingLocalData {
            id: self.id.clone(),
            p,
        })
    }

    /// The unramified tuple at `p`, or an error if `p` is ramified or absent.
    pub fn unramified_at(&self, p: u64) -> Result<&UnramifiedLocal> {
        match self.local(p)? {
            LocalComponent::Unramified(u) => Ok(u),
            LocalComponent::Ramified(_) => Err(Error::Ramified {
                id: self.id.clone(),
                p,
            }),
        }
    }

    pub fn is_unramified_at(&self, p: u64) -> bool {
        matches!(self.finite.get(&p), Some(LocalComponent::Unramified(_)))
    }
}

/// Where a [`Violation`] was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Representation,
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Representation => f.write_str("representation"),
            Place::Infinity => f.write_str("∞"),
            Place::Prime(p) => write!(f, "p={p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Rank,
    ParameterCount,
    NonFinite,
    Unitarity,
    RealPartBound,
    NotPrime,
    Conductor,
    RamifiedNotDividingConductor,
    SegmentOrder,
    SegmentLength,
    SegmentUnitarity,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Rank => "rank n ≥ 2",
            Rule::ParameterCount => "parameter count",
            Rule::NonFinite => "finite parameters",
            Rule::Unitarity => "unitarity",
            Rule::RealPartBound => "Re μ < 1/2",
            Rule::NotPrime => "prime key",
            Rule::Conductor => "conductor ≥ 1",
            Rule::RamifiedNotDividingConductor => "ramified prime divides conductor",
            Rule::SegmentOrder => "r ≥ 1",
            Rule::SegmentLength => "L ≥ 1",
            Rule::SegmentUnitarity => "segment unitarity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub place: Place,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.rule, self.place)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// Greedy nearest-pair matching of `items` against `{image(x) : x ∈ items}`.
fn multiset_matches<T: Copy>(
    items: &[T],
    image: impl Fn(T) -> T,
    dist: impl Fn(T, T) -> f64,
    tol: f64,
) -> bool {
    let mut used = alloc::vec![false; items.len()];
    for &x in items {
        let target = image(x);
        let mut best: Option<(usize, f64)> = None;
        for (k, &y) in items.iter().enumerate() {
            if used[k] {
                continue;
            }
            let d = dist(y, target);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        match best {
            Some((k, d)) if d <= tol => used[k] = true,
            _ => return false,
        }
    }
    true
}

fn check_unramified(
    local: &UnramifiedLocal,
    n: usize,
    place: Place,
    out: &mut Vec<Violation>,
) {
    if local.rank() != n {
        out.push(Violation {
            place,
            rule: Rule::ParameterCount,
            detail: format!("expected {n}, got {}", local.rank()),
        });
    }
    if local.mu.iter().any(|m| !m.re.is_finite() || !m.im.is_finite()) {
        out.push(Violation {
            place,
            rule: Rule::NonFinite,
            detail: String::new(),
        });
        return;
    }
    if !local.is_unitary(UNITARITY_TOL) {
        out.push(Violation {
            place,
            rule: Rule::Unitarity,
            detail: String::new(),
        });
    }
    if let Some(m) = local.mu.iter().find(|m| m.re >= 0.5) {
        out.push(Violation {
            place,
            rule: Rule::RealPartBound,
            detail: format!("Re μ = {}", m.re),
        });
    }
}

fn check_segments(segments: &[RamifiedSegment], place: Place, out: &mut Vec<Violation>) {
    for seg in segments {
        if seg.r < 1 {
            out.push(Violation {
                place,
                rule: Rule::SegmentOrder,
                detail: format!("class {}", seg.twist_class),
            });
        }
        if seg.length < 1 {
            out.push(Violation {
                place,
                rule: Rule::SegmentLength,
                detail: format!("class {}", seg.twist_class),
            });
        }
        if !seg.s.re.is_finite() || !seg.s.im.is_finite() {
            out.push(Violation {
                place,
                rule: Rule::NonFinite,
                detail: format!("class {}", seg.twist_class),
            });
            return;
        }
    }
    let mut classes: Vec<&str> = segments.iter().map(|s| s.twist_class.as_str()).collect();
    classes.sort_unstable();
    classes.dedup();
    for class in classes {
        let members: Vec<(C64, u32)> = segments
            .iter()
            .filter(|s| s.twist_class == class)
            .map(|s| (s.s, s.length))
            .collect();
        let ok = multiset_matches(
            &members,
            |(s, l)| (-s.conj(), l),
            |(a, la), (b, lb)| if la == lb { (a - b).norm() } else { f64::INFINITY },
            UNITARITY_TOL,
        );
        if !ok {
            out.push(Violation {
                place,
                rule: Rule::SegmentUnitarity,
                detail: format!("class {class}"),
            });
        }
    }
}

/// Lists every broken invariant of `rep`; an empty list means valid.
pub fn validate(rep: &Representation) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = rep.rank;
    if n < 2 {
        out.push(Violation {
            place: Place::Representation,
            rule: Rule::Rank,
            detail: format!("n = {n}"),
        });
    }
    if rep.arith_conductor < 1 {
        out.push(Violation {
            place: Place::Representation,
            rule: Rule::Conductor,
            detail: String::new(),
        });
    }
    check_unramified(&rep.archimedean, n, Place::Infinity, &mut out);
    for (&p, local) in &rep.finite {
        let place = Place::Prime(p);
        if !is_prime(p) {
            out.push(Violation {
                place,
                rule: Rule::NotPrime,
                detail: String::new(),
            });
        }
        match local {
            LocalComponent::Unramified(u) => check_unramified(u, n, place, &mut out),
            LocalComponent::Ramified(segs) => {
                if rep.arith_conductor == 0 || rep.arith_conductor % p != 0 {
                    out.push(Violation {
                        place,
                        rule: Rule::RamifiedNotDividingConductor,
                        detail: format!("f = {}", rep.arith_conductor),
                    });
                }
                check_segments(segs, place, &mut out);
            }
        }
    }
    out
}

/// An ordered family of equal-rank representations with distinct ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    rank: usize,
    reps: Vec<Representation>,
}

impl Family {
    pub fn new(rank: usize, reps: Vec<Representation>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Family(format!("rank must be at least 2, got {rank}")));
        }
        for (i, rep) in reps.iter().enumerate() {
            if rep.rank != rank {
                return Err(Error::Family(format!(
                    "{} has rank {}, family rank is {rank}",
                    rep.id, rep.rank
                )));
            }
            if reps[..i].iter().any(|other| other.id == rep.id) {
                return Err(Error::Family(format!("duplicate id {}", rep.id)));
            }
        }
        Ok(Self { rank, reps })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Representation> {
        self.reps.iter().find(|r| r.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.reps.iter().position(|r| r.id == id)
    }

    /// Validation report for every member, in family order.
    pub fn validate(&self) -> Vec<(String, Vec<Violation>)> {
        self.reps
            .iter()
            .map(|r| (r.id.clone(), validate(r)))
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.reps.iter().all(|r| validate(r).is_empty())
    }

    /// True when every member has unramified data at `p`.
    pub fn unramified_at(&self, p: u64) -> bool {
        self.reps.iter().all(|r| r.is_unramified_at(p))
    }
}

/// `λ(p) = Σ_j p^{μ_j(p)}`.
pub fn hecke_eigenvalue(rep: &Representation, p: u64) -> Result<C64> {
    let local = rep.unramified_at(p)?;
    Ok(local.satake(p).into_iter().sum())
}

/// `λ(∞) = (n³ - n)/24 - ½ Σ_j μ_j(∞)²` (real part; the imaginary part
/// vanishes for unitary tuples).
pub fn laplacian_eigenvalue(rep: &Representation) -> f64 {
    let n = rep.rank as f64;
    let sq: C64 = rep.archimedean.mu.iter().map(|m| m * m).sum();
    (n * n * n - n) / 24.0 - 0.5 * sq.re
}

/// `𝔣 · (1 + max_j |μ_j(∞)|)^n`.
pub fn total_conductor(rep: &Representation) -> f64 {
    let m = rep
        .archimedean
        .mu
        .iter()
        .map(|m| m.norm())
        .fold(0.0, f64::max);
    rep.arith_conductor as f64 * (1.0 + m).powi(rep.rank as i32)
}

/// Upper proxy for the Rankin–Selberg conductor over a family:
/// `max_{π,π'} (𝔠_π 𝔠_π')^n` with implied constant 1. Empty families give 1.
pub fn rs_conductor_cap(f: &Family) -> f64 {
    let max_c = f.reps().iter().map(total_conductor).fold(0.0, f64::max);
    if f.is_empty() {
        return 1.0;
    }
    (max_c * max_c).powi(f.rank() as i32)
}

/// Sampler configuration. `ramified` primes get random segment data;
/// `places` get unramified tuples with `max_j |Re μ_j| ≥ theta_floor`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub rank: usize,
    pub size: usize,
    pub theta_floor: f64,
    pub places: Vec<u64>,
    pub ramified: Vec<u64>,
}

/// Upper end of the real-part range used by the sampler.
pub const SAMPLER_RE_MAX: f64 = 0.49;
/// Imaginary parts are drawn from `[-SAMPLER_IM_MAX, SAMPLER_IM_MAX]`.
pub const SAMPLER_IM_MAX: f64 = 2.0;

/// Twist classes available to sampled segment data: `(id, d, r)` with `d`
/// the size of the supercuspidal and `r | d` its twist-stabilizer order.
const CLASS_POOL: [(&str, usize, u32); 5] = [
    (UNRAMIFIED_CLASS, 1, 1),
    ("sc2-r1", 2, 1),
    ("sc2-r2", 2, 2),
    ("sc3-r1", 3, 1),
    ("sc3-r3", 3, 3),
];

/// Seeded family with unramified data at `places` only.
pub fn sample_family(
    n: usize,
    size: usize,
    theta_floor: f64,
    places: &[u64],
    seed: u64,
) -> Result<Family> {
    sample_family_with(
        &SampleSpec {
            rank: n,
            size,
            theta_floor,
            places: places.to_vec(),
            ramified: Vec::new(),
        },
        seed,
    )
}

/// Seeded family per `spec`. The Archimedean parameters obey the same floor
/// as the requested primes.
pub fn sample_family_with(spec: &SampleSpec, seed: u64) -> Result<Family> {
    if spec.rank < 2 {
        return Err(Error::Sampler(format!("rank {} < 2", spec.rank)));
    }
    if spec.size == 0 {
        return Err(Error::Sampler("size must be at least 1".to_string()));
    }
    if !(spec.theta_floor > 0.0 && spec.theta_floor < 0.5) {
        return Err(Error::Sampler(format!(
            "theta_floor {} outside (0, 1/2)",
            spec.theta_floor
        )));
    }
    for &p in spec.places.iter().chain(&spec.ramified) {
        if !is_prime(p) {
            return Err(Error::Sampler(format!("{p} is not prime")));
        }
    }
    if let Some(p) = spec.places.iter().find(|p| spec.ramified.contains(p)) {
        return Err(Error::Sampler(format!(
            "{p} requested both ramified and unramified"
        )));
    }

    let mut rng = seeded_rng(seed);
    let mut reps = Vec::with_capacity(spec.size);
    for i in 0..spec.size {
        let arch = sample_unramified(&mut rng, spec.rank, spec.theta_floor);
        let mut rep = Representation::new(format!("rep{i}"), arch);
        for &p in &spec.places {
            let local = sample_unramified(&mut rng, spec.rank, spec.theta_floor);
            rep = rep.with_unramified(p, local);
        }
        let mut conductor = 1u64;
        for &p in &spec.ramified {
            rep = rep.with_ramified(p, sample_segments(&mut rng, spec.rank));
            let e = rng.gen_range(1..=2u32);
            conductor = conductor.saturating_mul(p.saturating_pow(e));
        }
        rep.arith_conductor = conductor;
        reps.push(rep);
    }
    Family::new(spec.rank, reps)
}

fn sample_unramified<R: Rng>(rng: &mut R, n: usize, theta: f64) -> UnramifiedLocal {
    let hi = SAMPLER_RE_MAX.max(theta);
    let mut mu = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        let nu = C64::new(
            rng.gen_range(theta..=hi),
            rng.gen_range(-SAMPLER_IM_MAX..=SAMPLER_IM_MAX),
        );
        mu.push(nu);
        mu.push(-nu.conj());
    }
    if n % 2 == 1 {
        mu.push(C64::new(0.0, rng.gen_range(-SAMPLER_IM_MAX..=SAMPLER_IM_MAX)));
    }
    UnramifiedLocal::new(mu)
}

/// Unitary segment data of total dimension `n`; rejects draws that reduce
/// to a plain unramified tuple.
fn sample_segments<R: Rng>(rng: &mut R, n: usize) -> Vec<RamifiedSegment> {
    loop {
        let mut remaining = n;
        let mut segs = Vec::new();
        while remaining > 0 {
            let fits: Vec<&(&str, usize, u32)> =
                CLASS_POOL.iter().filter(|c| c.1 <= remaining).collect();
            let &(class, d, r) = fits[rng.gen_range(0..fits.len())];
            let max_len = (remaining / d).min(3);
            let len = rng.gen_range(1..=max_len);
            let dim = d * len;
            if 2 * dim <= remaining && rng.gen_bool(0.5) {
                let s = C64::new(
                    rng.gen_range(-0.4..=0.4),
                    rng.gen_range(-SAMPLER_IM_MAX..=SAMPLER_IM_MAX),
                );
                segs.push(RamifiedSegment::new(class, r, len as u32, s));
                segs.push(RamifiedSegment::new(class, r, len as u32, -s.conj()));
                remaining -= 2 * dim;
            } else {
                let s = C64::new(0.0, rng.gen_range(-SAMPLER_IM_MAX..=SAMPLER_IM_MAX));
                segs.push(RamifiedSegment::new(class, r, len as u32, s));
                remaining -= dim;
            }
        }
        if segs
            .iter()
            .any(|s| s.twist_class != UNRAMIFIED_CLASS || s.length > 1)
        {
            return segs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::{LN_2, PI};

    fn rep2(mu: [C64; 2]) -> Representation {
        Representation::new("a", UnramifiedLocal::from_real(&[0.0, 0.0]))
            .with_unramified(2, UnramifiedLocal::new(mu.to_vec()))
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&rep2([c(0.25, 0.0), c(-0.25, 0.0)])).is_empty());

        let v = validate(&rep2([c(0.25, 0.0), c(0.25, 0.0)]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::Unitarity);
        assert_eq!(v[0].place, Place::Prime(2));
        assert!(v[0].to_string().starts_with("unitarity at p=2"));

        let v = validate(&rep2([c(0.6, 0.0), c(-0.6, 0.0)]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::RealPartBound);
        assert!(v[0].to_string().starts_with("Re μ < 1/2 at p=2"));
    }

    #[test]
    fn validate_structural_rules() {
        let rep = Representation::new("x", UnramifiedLocal::from_real(&[0.0, 0.0, 0.0]))
            .with_unramified(4, UnramifiedLocal::from_real(&[0.0, 0.0]))
            .with_ramified(5, vec![RamifiedSegment::new("c", 0, 1, c(0.0, 0.0))])
            .with_conductor(3);
        let rules: Vec<Rule> = validate(&rep).into_iter().map(|v| v.rule).collect();
        assert!(rules.contains(&Rule::NotPrime));
        assert!(rules.contains(&Rule::ParameterCount));
        assert!(rules.contains(&Rule::RamifiedNotDividingConductor));
        assert!(rules.contains(&Rule::SegmentOrder));
    }

    #[test]
    fn segment_unitarity_is_per_class_and_length() {
        let good = vec![
            RamifiedSegment::new("c", 1, 2, c(0.2, 1.0)),
            RamifiedSegment::new("c", 1, 2, c(-0.2, 1.0)),
        ];
        let rep = Representation::new("x", UnramifiedLocal::from_real(&[0.0, 0.0]))
            .with_ramified(3, good)
            .with_conductor(9);
        assert!(validate(&rep).is_empty());

        let bad_len = vec![
            RamifiedSegment::new("c", 1, 2, c(0.2, 1.0)),
            RamifiedSegment::new("c", 1, 1, c(-0.2, 1.0)),
        ];
        let rep = rep.with_ramified(3, bad_len);
        let v = validate(&rep);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::SegmentUnitarity);

        let split_class = vec![
            RamifiedSegment::new("c", 1, 1, c(0.2, 0.0)),
            RamifiedSegment::new("d", 1, 1, c(-0.2, 0.0)),
        ];
        let rep = rep.with_ramified(3, split_class);
        assert_eq!(validate(&rep).len(), 2);
    }

    #[test]
    fn hecke_examples() {
        let l = hecke_eigenvalue(&rep2([c(0.0, 0.0), c(0.0, 0.0)]), 2).unwrap();
        assert!((l - c(2.0, 0.0)).norm() < 1e-15);

        let l = hecke_eigenvalue(&rep2([c(0.25, 0.0), c(-0.25, 0.0)]), 2).unwrap();
        let expected = 2f64.powf(0.25) + 2f64.powf(-0.25);
        assert!((l.re - expected).abs() < 1e-14);
        assert!((l.re - 2.0301035).abs() < 1e-7);

        let t = PI / LN_2;
        let l = hecke_eigenvalue(&rep2([c(0.0, t), c(0.0, -t)]), 2).unwrap();
        assert!((l - c(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn hecke_errors() {
        let rep = rep2([c(0.0, 0.0), c(0.0, 0.0)])
            .with_ramified(3, vec![RamifiedSegment::new("c", 1, 2, c(0.0, 0.0))]);
        assert!(matches!(hecke_eigenvalue(&rep, 3), Err(Error::Ramified { p: 3, .. })));
        assert!(matches!(
            hecke_eigenvalue(&rep, 5),
            Err(Error::MissingLocalData { p: 5, .. })
        ));
    }

    #[test]
    fn laplacian_examples() {
        let r = Representation::new("a", UnramifiedLocal::from_real(&[0.0, 0.0]));
        assert_eq!(laplacian_eigenvalue(&r), 0.25);
        let r = Representation::new("a", UnramifiedLocal::from_real(&[0.1, -0.1]));
        assert!((laplacian_eigenvalue(&r) - 0.24).abs() < 1e-15);
        let r = Representation::new("a", UnramifiedLocal::from_real(&[0.0, 0.0, 0.0]));
        assert_eq!(laplacian_eigenvalue(&r), 1.0);
    }

    #[test]
    fn conductor_examples() {
        let r = Representation::new("a", UnramifiedLocal::from_real(&[0.0, 0.0]));
        assert_eq!(total_conductor(&r), 1.0);

        let r = Representation::new(
            "b",
            UnramifiedLocal::new(vec![c(0.0, 0.3), c(0.0, -0.3)]),
        )
        .with_conductor(11);
        assert!((total_conductor(&r) - 18.59).abs() < 1e-12);

        let r = Representation::new("c", UnramifiedLocal::from_real(&[0.0, 0.0])).with_conductor(2);
        let f = Family::new(2, vec![r]).unwrap();
        assert_eq!(rs_conductor_cap(&f), 16.0);
    }

    #[test]
    fn family_rejects_duplicates_and_rank_mismatch() {
        let a = Representation::new("a", UnramifiedLocal::from_real(&[0.0, 0.0]));
        let b = Representation::new("a", UnramifiedLocal::from_real(&[0.1, -0.1]));
        assert!(Family::new(2, vec![a.clone(), b]).is_err());
        let c3 = Representation::new("c", UnramifiedLocal::from_real(&[0.0, 0.0, 0.0]));
        assert!(Family::new(2, vec![a, c3]).is_err());
    }

    #[test]
    fn sampler_examples() {
        let f = sample_family(2, 1, 0.3, &[2], 7).unwrap();
        assert_eq!(f.len(), 1);
        let u = f.reps()[0].unramified_at(2).unwrap();
        assert!(u.max_abs_re() >= 0.3);
        assert_eq!(f, sample_family(2, 1, 0.3, &[2], 7).unwrap());

        let f = sample_family(3, 4, 0.25, &[2, 3], 1).unwrap();
        assert_eq!(f.len(), 4);
        for rep in f.reps() {
            assert!(validate(rep).is_empty(), "{:?}", validate(rep));
        }
    }

    #[test]
    fn sampler_errors() {
        assert!(sample_family(2, 1, 0.5, &[2], 0).is_err());
        assert!(sample_family(2, 1, 0.0, &[2], 0).is_err());
        assert!(sample_family(2, 0, 0.3, &[2], 0).is_err());
        assert!(sample_family(2, 1, 0.3, &[4], 0).is_err());
        let spec = SampleSpec {
            rank: 2,
            size: 1,
            theta_floor: 0.3,
            places: vec![2],
            ramified: vec![2],
        };
        assert!(sample_family_with(&spec, 0).is_err());
    }

    #[test]
    fn ramified_samples_are_valid() {
        for n in 2..=4 {
            let spec = SampleSpec {
                rank: n,
                size: 6,
                theta_floor: 0.2,
                places: vec![2, 3],
                ramified: vec![5, 7],
            };
            let f = sample_family_with(&spec, 11 + n as u64).unwrap();
            assert!(f.is_valid(), "{:?}", f.validate());
            for rep in f.reps() {
                assert_eq!(rep.arith_conductor % 35, 0);
            }
        }
    }
}
