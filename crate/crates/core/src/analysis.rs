//! Deciding fractional revival between `v` and `v + a`.
//!
//! With `u − v = a`, the walk satisfies
//!
//! ```text
//! |H_uu(t)|² + |H_uv(t)|² = (2|Γ| + 4 Σ_{(x,y)∈N} cos(t(λ_x − λ_y))) / |Γ|²
//! ```
//!
//! where `N` collects the pairs `x ⋗ y` whose difference has even weight
//! against `a`, and `|N| = (|Γ|² − 2|Γ|)/4`. Revival therefore happens at `t`
//! exactly when `a` has order two and `t(λ_x − λ_y)/2π` is an integer for
//! every pair in `N`. When all those differences are integers the revival
//! times are the multiples of `2π/M`, `M` their gcd.
//!
//! A `No` excludes revival with `β ≠ 0` only. Periodicity (`β = 0`) at `u`
//! makes the fidelity identity hold for every `v`, partner or not; integral
//! graphs are all periodic at `2π`.
//!
//! Integrality is decided with exact cyclotomic arithmetic. Differences that
//! are not integers give [`Verdict::UndeterminedExact`] rather than a guess;
//! a numeric scan is attached as evidence only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::group::{GroupElement, GroupSpec};
use crate::oracle::{max_after_initial_lobe, scan_spectrum, Engine, ScanReport};
use crate::spectra::{full_spectrum, validate_connection_set, ConnectionSet, Spectrum};
use crate::{Error, Result};

/// Amplitude magnitude below which α or β counts as zero.
pub const CLASSIFY_TOLERANCE: f64 = 1e-8;
/// Allowed deviation of `|α|² + |β|²` from 1 when classifying.
pub const CLASSIFY_NORM_TOLERANCE: f64 = 1e-6;
/// Allowed deviation of `|α|² + |β|²` from 1 on a certificate.
pub const CERTIFICATE_NORM_TOLERANCE: f64 = 1e-9;
/// Largest allowed entry of column `u` outside rows `u` and `v` under a certificate.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Walk time at which amplitudes are reported when revival holds at all times.
pub const ALL_TIMES_REFERENCE: f64 = 1.0;
/// Horizon of the evidence scan attached to undetermined verdicts.
pub const EVIDENCE_T_MAX: f64 = 8.0 * PI;
/// Grid size of the evidence scan.
pub const EVIDENCE_STEPS: usize = 10_000;

/// A time `t = 2π·p/q` with `gcd(p, q) = 1` and `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeOf2Pi {
    p: i64,
    q: u64,
}

impl TimeOf2Pi {
    /// Reduces `p/q` to lowest terms.
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("time denominator must be positive".into()));
        }
        let g = gcd_u64(p.unsigned_abs(), q);
        let p = p / g as i64;
        Ok(Self { p, q: q / g })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn radians(&self) -> f64 {
        2.0 * PI * self.p as f64 / self.q as f64
    }
}

impl fmt::Display for TimeOf2Pi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// When a certificate says revival happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrTime {
    /// First revival at this time; revival recurs exactly at its multiples.
    Rational(TimeOf2Pi),
    /// Every difference over `N` is zero: revival at every time.
    AllTimes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    ProperFR,
    PST,
    Periodic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::ProperFR => "ProperFR",
            Classification::PST => "PST",
            Classification::Periodic => "Periodic",
        })
    }
}

/// Proof of revival between `v` and `v + a`, with amplitudes
/// `H(t)e_u = α e_u + β e_v` sampled at `sample_time`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrCertificate {
    pub involution: GroupElement,
    pub time: FrTime,
    /// gcd of the eigenvalue differences; absent for [`FrTime::AllTimes`].
    pub m: Option<u64>,
    pub sample_time: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub classification: Classification,
}

/// Why a candidate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `a` does not have order two.
    NotOrderTwo { order: usize },
    /// `a_s ≠ 0` on a factor of odd order (1-based coordinate).
    OddFactor { coordinate: usize, order: usize },
    /// A circulant on an odd number of vertices has no antipodes.
    OddCirculant { n: usize },
    /// `λ_x − λ_y` is not an integer.
    NonIntegerDifference { x: GroupElement, y: GroupElement },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotOrderTwo { order } => write!(f, "a has order {order}, not 2"),
            Witness::OddFactor { coordinate, order } => {
                write!(f, "coordinate {coordinate} of a is nonzero in Z{order}, which has odd order")
            }
            Witness::OddCirculant { n } => write!(f, "n = {n} is odd, so no vertex has an antipode"),
            Witness::NonIntegerDifference { x, y } => {
                write!(f, "lambda_{x} - lambda_{y} is not an integer")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    UndeterminedExact,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::UndeterminedExact => "UndeterminedExact",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Yes(FrCertificate),
    No(Witness),
    /// Some difference is irrational. The scan is evidence, not a verdict.
    UndeterminedExact {
        witness: Witness,
        evidence: ScanReport,
    },
}

/// The decision for one candidate partner offset.
#[derive(Debug, Clone, PartialEq)]
pub struct FrDecision {
    /// Candidate `a`; absent only when no candidate exists (odd circulants).
    pub involution: Option<GroupElement>,
    pub outcome: Outcome,
}

impl FrDecision {
    pub fn verdict(&self) -> Verdict {
        match self.outcome {
            Outcome::Yes(_) => Verdict::Yes,
            Outcome::No(_) => Verdict::No,
            Outcome::UndeterminedExact { .. } => Verdict::UndeterminedExact,
        }
    }

    pub fn certificate(&self) -> Option<&FrCertificate> {
        match &self.outcome {
            Outcome::Yes(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Yes(_) => None,
            Outcome::No(w) | Outcome::UndeterminedExact { witness: w, .. } => Some(w),
        }
    }
}

/// The pairs `x ⋗ y` with `wt(2a(x − y)/n)` even, as lexicographic indices
/// sorted by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSetN {
    spec: GroupSpec,
    involution: GroupElement,
    pairs: Vec<(u32, u32)>,
}

impl PairSetN {
    pub fn involution(&self) -> &GroupElement {
        &self.involution
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Index pairs `(x, y)`.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(x, y)| (x as usize, y as usize))
    }

    pub fn element_pairs(&self) -> impl Iterator<Item = (GroupElement, GroupElement)> + '_ {
        self.index_pairs()
            .map(|(x, y)| (self.spec.element_at(x).expect("in range"), self.spec.element_at(y).expect("in range")))
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        let (Ok(x), Ok(y)) = (u32::try_from(x), u32::try_from(y)) else {
            return false;
        };
        self.pairs.binary_search(&(x, y)).is_ok()
    }
}

/// `(|Γ|² − 2|Γ|)/4`.
pub fn expected_pair_count(spec: &GroupSpec) -> usize {
    let n = spec.size();
    (n * n - 2 * n) / 4
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionCheck {
    Pass,
    Fail(Witness),
}

/// Order two, and nonzero only on factors of even order.
pub fn check_conditions_ab(spec: &GroupSpec, a: &GroupElement) -> Result<ConditionCheck> {
    spec.check(a)?;
    if a.is_zero() {
        return Err(Error::ZeroOffset);
    }
    let order = spec.element_order(a)?;
    if order != 2 {
        return Ok(ConditionCheck::Fail(Witness::NotOrderTwo { order }));
    }
    for (s, (&x, &n)) in a.coords().iter().zip(spec.orders()).enumerate() {
        if x != 0 && n % 2 != 0 {
            return Ok(ConditionCheck::Fail(Witness::OddFactor { coordinate: s + 1, order: n }));
        }
    }
    Ok(ConditionCheck::Pass)
}

/// Builds `N` for an offset passing [`check_conditions_ab`].
pub fn build_n(spec: &GroupSpec, a: &GroupElement) -> Result<PairSetN> {
    if let ConditionCheck::Fail(_) = check_conditions_ab(spec, a)? {
        return Err(Error::NotInvolution { element: format!("{a}"), order: spec.element_order(a)? });
    }
    let n = spec.size();
    if u32::try_from(n).is_err() {
        return Err(Error::InvalidArgument(format!("group of order {n} is too large")));
    }
    let r = spec.rank();
    let orders = spec.orders();
    let coords = spec.coordinate_table();
    let active: Vec<usize> = (0..r).filter(|&s| a.coords()[s] != 0).collect();
    let mut pairs = Vec::with_capacity(expected_pair_count(spec));
    for x in 0..n {
        let cx = &coords[x * r..(x + 1) * r];
        for y in 0..x {
            let cy = &coords[y * r..(y + 1) * r];
            // 2·a_s·d_s/n_s = d_s when a_s = n_s/2, with d = x − y canonical
            let weight: usize = active.iter().map(|&s| (cx[s] + orders[s] - cy[s]) % orders[s]).sum();
            if weight.is_multiple_of(2) {
                pairs.push((x as u32, y as u32));
            }
        }
    }
    Ok(PairSetN { spec: spec.clone(), involution: a.clone(), pairs })
}

/// The gcd of the eigenvalue differences over `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceGcd {
    /// `N` is empty or every difference is zero.
    AllZero,
    Gcd(u64),
    /// First pair (in `N` order) with a non-integer difference, as indices.
    NonInteger {
        x: usize,
        y: usize,
    },
}

/// `gcd{λ_x − λ_y : (x, y) ∈ N}`, decided exactly.
pub fn integer_difference_gcd(spectrum: &Spectrum, n: &PairSetN) -> Result<DifferenceGcd> {
    check_same_group(spectrum, n)?;
    let mut g = 0u64;
    for (x, y) in n.index_pairs() {
        match spectrum.integer_difference(x, y)? {
            None => return Ok(DifferenceGcd::NonInteger { x, y }),
            Some(d) => g = gcd_u64(g, d.unsigned_abs()),
        }
    }
    Ok(if g == 0 { DifferenceGcd::AllZero } else { DifferenceGcd::Gcd(g) })
}

/// `λ_x − λ_y` for every pair of `N`, in order; `None` where it is not an integer.
pub fn pair_differences(spectrum: &Spectrum, n: &PairSetN) -> Result<Vec<Option<i64>>> {
    check_same_group(spectrum, n)?;
    n.index_pairs().map(|(x, y)| spectrum.integer_difference(x, y)).collect()
}

/// `t = 2π/M`.
pub fn minimum_fr_time(m: u64) -> Result<TimeOf2Pi> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be positive".into()));
    }
    TimeOf2Pi::new(1, m)
}

/// A pair of `N` for which `t(λ_x − λ_y)/2π` is not an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingPair {
    pub x: GroupElement,
    pub y: GroupElement,
    pub difference: i64,
}

/// First pair of `N` with `t(λ_x − λ_y)/2π` not an integer at `t = 2π·time`.
///
/// Errors with [`Error::NonIntegerDifference`] if any difference over `N` is
/// not an integer, even when an earlier pair already fails.
pub fn first_failing_pair(spectrum: &Spectrum, n: &PairSetN, time: TimeOf2Pi) -> Result<Option<FailingPair>> {
    check_same_group(spectrum, n)?;
    let spec = spectrum.spec();
    let q = i128::from(time.q());
    let p = i128::from(time.p());
    let mut failing = None;
    for (x, y) in n.index_pairs() {
        let Some(d) = spectrum.integer_difference(x, y)? else {
            return Err(Error::NonIntegerDifference {
                x: format!("{}", spec.element_at(x)?),
                y: format!("{}", spec.element_at(y)?),
            });
        };
        if failing.is_none() && (p * i128::from(d)) % q != 0 {
            failing = Some(FailingPair { x: spec.element_at(x)?, y: spec.element_at(y)?, difference: d });
        }
    }
    Ok(failing)
}

/// Whether `t(λ_x − λ_y)/2π` is an integer on all of `N` at `t = 2π·p/q`,
/// in exact integer arithmetic.
pub fn check_fr_at_time(spectrum: &Spectrum, n: &PairSetN, p: i64, q: u64) -> Result<bool> {
    Ok(first_failing_pair(spectrum, n, TimeOf2Pi::new(p, q)?)?.is_none())
}

/// PST when `α ≈ 0`, periodic when `β ≈ 0`, proper revival otherwise.
pub fn classify(alpha: Complex64, beta: Complex64) -> Result<Classification> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > CLASSIFY_NORM_TOLERANCE {
        return Err(Error::NormViolation(norm));
    }
    Ok(if modulus(alpha) < CLASSIFY_TOLERANCE {
        Classification::PST
    } else if modulus(beta) < CLASSIFY_TOLERANCE {
        Classification::Periodic
    } else {
        Classification::ProperFR
    })
}

/// Summary of [`FrAnalyzer::search_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct FrSearch {
    pub decisions: Vec<FrDecision>,
    pub any_yes: bool,
}

/// Revival analysis of one Cayley graph, sharing its spectrum across
/// candidates.
#[derive(Debug, Clone)]
pub struct FrAnalyzer {
    spectrum: Spectrum,
}

impl FrAnalyzer {
    pub fn new(spec: &GroupSpec, set: &ConnectionSet) -> Result<Self> {
        Ok(Self { spectrum: full_spectrum(spec, set)? })
    }

    pub fn from_spectrum(spectrum: Spectrum) -> Self {
        Self { spectrum }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn spec(&self) -> &GroupSpec {
        self.spectrum.spec()
    }

    /// `(H_uu(t), H_vu(t))`.
    pub fn amplitudes(&self, u: &GroupElement, v: &GroupElement, t: f64) -> Result<(Complex64, Complex64)> {
        if u == v {
            return Err(Error::SameVertex);
        }
        Ok((self.spectrum.transition_entry(u, u, t)?, self.spectrum.transition_entry(v, u, t)?))
    }

    /// Amplitudes under a claim of revival at `t`: every other entry of
    /// column `u` must vanish, otherwise the engines disagree.
    pub fn certified_amplitudes(&self, u: &GroupElement, v: &GroupElement, t: f64) -> Result<(Complex64, Complex64)> {
        let (alpha, beta) = self.amplitudes(u, v, t)?;
        let spec = self.spec();
        let (ui, vi) = (spec.index_of(u)?, spec.index_of(v)?);
        for (w, el) in spec.elements().enumerate() {
            if w == ui || w == vi {
                continue;
            }
            let z = self.spectrum.transition_entry(&el, u, t)?;
            if modulus(z) >= RESIDUAL_TOLERANCE {
                return Err(Error::Inconsistency(format!(
                    "revival claimed at t = {t} but |H({el}, {u})| = {}",
                    modulus(z)
                )));
            }
        }
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > CERTIFICATE_NORM_TOLERANCE {
            return Err(Error::Inconsistency(format!("|alpha|^2 + |beta|^2 = {norm} under a certificate")));
        }
        Ok((alpha, beta))
    }

    /// The full decision for the pair `(v, v + a)`.
    pub fn decide(&self, a: &GroupElement) -> Result<FrDecision> {
        let spec = self.spec();
        if let ConditionCheck::Fail(w) = check_conditions_ab(spec, a)? {
            return Ok(FrDecision { involution: Some(a.clone()), outcome: Outcome::No(w) });
        }
        let n = build_n(spec, a)?;
        let u = spec.zero();
        let outcome = match integer_difference_gcd(&self.spectrum, &n)? {
            DifferenceGcd::NonInteger { x, y } => {
                let samples = scan_spectrum(&self.spectrum, &u, a, EVIDENCE_T_MAX, EVIDENCE_STEPS)?;
                Outcome::UndeterminedExact {
                    witness: Witness::NonIntegerDifference { x: spec.element_at(x)?, y: spec.element_at(y)? },
                    evidence: max_after_initial_lobe(&samples, Engine::Spectral),
                }
            }
            DifferenceGcd::AllZero => Outcome::Yes(self.certificate(a, FrTime::AllTimes, None, ALL_TIMES_REFERENCE)?),
            DifferenceGcd::Gcd(m) => {
                let time = minimum_fr_time(m)?;
                Outcome::Yes(self.certificate(a, FrTime::Rational(time), Some(m), time.radians())?)
            }
        };
        Ok(FrDecision { involution: Some(a.clone()), outcome })
    }

    fn certificate(&self, a: &GroupElement, time: FrTime, m: Option<u64>, t: f64) -> Result<FrCertificate> {
        let u = self.spec().zero();
        let (alpha, beta) = self.certified_amplitudes(&u, a, t)?;
        Ok(FrCertificate {
            involution: a.clone(),
            time,
            m,
            sample_time: t,
            alpha,
            beta,
            classification: classify(alpha, beta)?,
        })
    }

    /// One decision per involution, in lexicographic order.
    pub fn search_all(&self) -> Result<FrSearch> {
        let decisions = self.spec().involutions().iter().map(|a| self.decide(a)).collect::<Result<Vec<_>>>()?;
        let any_yes = decisions.iter().any(|d| d.verdict() == Verdict::Yes);
        Ok(FrSearch { decisions, any_yes })
    }
}

/// Decision for `(v, v + a)` on `Cay(Γ, S)`.
pub fn decide_fr(spec: &GroupSpec, set: &ConnectionSet, a: &GroupElement) -> Result<FrDecision> {
    FrAnalyzer::new(spec, set)?.decide(a)
}

/// `(H_uu(t), H_vu(t))` on `Cay(Γ, S)`.
pub fn amplitudes(
    spec: &GroupSpec,
    set: &ConnectionSet,
    u: &GroupElement,
    v: &GroupElement,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    FrAnalyzer::new(spec, set)?.amplitudes(u, v, t)
}

/// Decisions for every involution of `Γ`.
pub fn search_all_fr(spec: &GroupSpec, set: &ConnectionSet) -> Result<FrSearch> {
    FrAnalyzer::new(spec, set)?.search_all()
}

/// The circulant `Cay(ℤ_n, S)`: the only candidate partner is the antipode.
pub fn circulant_fr(n: usize, set: &[i64]) -> Result<FrDecision> {
    let spec = GroupSpec::cyclic(n)?;
    let raw = set.iter().map(|&g| spec.element_reduced(&[g])).collect::<Result<Vec<_>>>()?;
    let set = validate_connection_set(&spec, &raw)?;
    if !n.is_multiple_of(2) {
        return Ok(FrDecision { involution: None, outcome: Outcome::No(Witness::OddCirculant { n }) });
    }
    decide_fr(&spec, &set, &spec.element(&[n / 2])?)
}

/// The cubelike graph `Cay(ℤ_2^r, S)` for every candidate partner.
///
/// Eigenvalues here are integers, so no verdict can be undetermined.
pub fn cubelike_fr(r: usize, set: &[Vec<u8>]) -> Result<Vec<FrDecision>> {
    let spec = GroupSpec::cube(r)?;
    let raw = set
        .iter()
        .map(|bits| {
            if bits.iter().any(|&b| b > 1) {
                return Err(Error::Parse(format!("{bits:?} is not a bit vector")));
            }
            spec.element(&bits.iter().map(|&b| usize::from(b)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let set = validate_connection_set(&spec, &raw)?;
    let search = search_all_fr(&spec, &set)?;
    if let Some(d) = search.decisions.iter().find(|d| d.verdict() == Verdict::UndeterminedExact) {
        return Err(Error::Inconsistency(format!(
            "cubelike graph produced an undetermined verdict: {:?}",
            d.witness()
        )));
    }
    Ok(search.decisions)
}

fn check_same_group(spectrum: &Spectrum, n: &PairSetN) -> Result<()> {
    if spectrum.spec() == &n.spec {
        Ok(())
    } else {
        Err(Error::SpecMismatch(format!("pair set over {} used with spectrum over {}", n.spec, spectrum.spec())))
    }
}

fn modulus(z: Complex64) -> f64 {
    libm::sqrt(z.norm_sqr())
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Human-readable one-line summary.
pub fn describe(decision: &FrDecision) -> String {
    let a = decision.involution.as_ref().map_or_else(|| String::from("-"), |a| format!("{a}"));
    match &decision.outcome {
        Outcome::Yes(c) => match c.time {
            FrTime::Rational(t) => {
                format!("a = {a}: Yes at t = 2pi*{t} (M = {}), {}", c.m.unwrap_or(0), c.classification)
            }
            FrTime::AllTimes => format!("a = {a}: Yes at all times, {} at t = {}", c.classification, c.sample_time),
        },
        Outcome::No(w) => format!("a = {a}: No ({w})"),
        Outcome::UndeterminedExact { witness, evidence } => format!(
            "a = {a}: UndeterminedExact ({witness}); scan max {:.12} at t = {:.12}",
            evidence.max_total, evidence.t_star
        ),
    }
}
