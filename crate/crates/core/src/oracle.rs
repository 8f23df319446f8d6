//! Independent numerical walk engine and fidelity scans.
//!
//! [`expm_series`] computes `exp(itA)` from nothing but the adjacency matrix:
//! scale `itA` by `2^{-m}` until its 1-norm is at most 1/2, sum the Taylor
//! series through the `k = 20` term, then square `m` times. It never touches
//! characters or cyclotomic arithmetic, so it can catch mistakes in the
//! analytic path.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::{GroupElement, GroupSpec};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::spectra::{adjacency_matrix, full_spectrum, ConnectionSet, Spectrum};
use crate::{Error, Result};

/// Last Taylor term kept by [`expm_series`].
pub const SERIES_ORDER: usize = 20;
/// Norm bound for the scaled matrix.
pub const SCALED_NORM: f64 = 0.5;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `exp(itA)` for a real symmetric `A` by scaling and squaring.
pub fn expm_series(a: &RealMatrix, t: f64) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(alloc::format!("expm needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let norm = a.norm_one() * t.abs();
    let mut squarings = 0u32;
    let mut scaled = norm;
    while scaled > SCALED_NORM {
        scaled /= 2.0;
        squarings += 1;
    }
    let factor = t / libm::pow(2.0, f64::from(squarings));
    let x = a.map(|v| Complex64::new(0.0, v * factor));

    let mut sum = ComplexMatrix::identity(n, ONE);
    let mut term = ComplexMatrix::identity(n, ONE);
    for k in 1..=SERIES_ORDER {
        term = term.matmul(&x)?.scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term)?;
    }
    // exp(itA) is complex symmetric; keep it exactly so through the squarings
    let mut h = sum.add(&sum.transpose())?.scale(Complex64::new(0.5, 0.0));
    for _ in 0..squarings {
        h = h.matmul(&h)?;
    }
    Ok(h)
}

/// Which engine produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Closed form from the exact spectrum.
    Spectral,
    /// Matrix exponential of the adjacency matrix.
    Series,
}

/// `|H_uu(t)|²` and `|H_uv(t)|²`; revival at `t` means `total = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelitySample {
    pub t: f64,
    pub p_uu: f64,
    pub p_uv: f64,
    pub total: f64,
    pub engine: Engine,
}

/// Result of [`scan_max_fidelity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanReport {
    /// First grid time attaining the maximum.
    pub t_star: f64,
    pub max_total: f64,
    /// Grid time where the search started (end of the initial lobe).
    pub search_start: f64,
    pub engine: Engine,
}

enum Backend {
    Spectral(Box<Spectrum>),
    Series(RealMatrix),
}

/// Fidelity evaluator for one graph and one engine.
pub struct FidelityProbe {
    spec: GroupSpec,
    backend: Backend,
}

impl FidelityProbe {
    pub fn new(spec: &GroupSpec, set: &ConnectionSet, engine: Engine) -> Result<Self> {
        let backend = match engine {
            Engine::Spectral => Backend::Spectral(Box::new(full_spectrum(spec, set)?)),
            Engine::Series => Backend::Series(adjacency_matrix(spec, set)?.map(|v| v as f64)),
        };
        Ok(Self { spec: spec.clone(), backend })
    }

    /// Uses an already computed spectrum.
    pub fn from_spectrum(spectrum: Spectrum) -> Self {
        Self { spec: spectrum.spec().clone(), backend: Backend::Spectral(Box::new(spectrum)) }
    }

    pub fn engine(&self) -> Engine {
        match self.backend {
            Backend::Spectral(_) => Engine::Spectral,
            Backend::Series(_) => Engine::Series,
        }
    }

    fn indices(&self, u: &GroupElement, v: &GroupElement) -> Result<(usize, usize)> {
        let (ui, vi) = (self.spec.index_of(u)?, self.spec.index_of(v)?);
        if ui == vi {
            return Err(Error::SameVertex);
        }
        Ok((ui, vi))
    }

    /// One sample at time `t`.
    pub fn sample(&self, u: &GroupElement, v: &GroupElement, t: f64) -> Result<FidelitySample> {
        let (ui, vi) = self.indices(u, v)?;
        let (h_uu, h_uv) = match &self.backend {
            Backend::Spectral(s) => (s.transition_entry(u, u, t)?, s.transition_entry(u, v, t)?),
            Backend::Series(a) => {
                let h = expm_series(a, t)?;
                (h[(ui, ui)], h[(ui, vi)])
            }
        };
        Ok(self.make_sample(t, h_uu, h_uv))
    }

    /// Samples on the uniform grid `k·t_max/steps`, `k = 0..=steps`.
    ///
    /// The series engine exponentiates once at the grid step and propagates
    /// the state `e_u` from point to point.
    pub fn scan(&self, u: &GroupElement, v: &GroupElement, t_max: f64, steps: usize) -> Result<Vec<FidelitySample>> {
        if steps < 2 {
            return Err(Error::InvalidArgument("a scan needs at least 2 steps".into()));
        }
        if !t_max.is_finite() {
            return Err(Error::InvalidArgument("t_max must be finite".into()));
        }
        let (ui, vi) = self.indices(u, v)?;
        let time = |k: usize| k as f64 * t_max / steps as f64;
        match &self.backend {
            Backend::Spectral(s) => scan_spectrum(s, u, v, t_max, steps),
            Backend::Series(a) => {
                let step = expm_series(a, t_max / steps as f64)?;
                let mut state = alloc::vec![Complex64::new(0.0, 0.0); a.rows()];
                state[ui] = ONE;
                let mut out = Vec::with_capacity(steps + 1);
                for k in 0..=steps {
                    if k > 0 {
                        state = step.matvec(&state)?;
                    }
                    // column u of H(t): H_vu = H_uv by symmetry
                    out.push(self.make_sample(time(k), state[ui], state[vi]));
                }
                Ok(out)
            }
        }
    }

    fn make_sample(&self, t: f64, h_uu: Complex64, h_uv: Complex64) -> FidelitySample {
        make_sample(t, h_uu, h_uv, self.engine())
    }
}

fn make_sample(t: f64, h_uu: Complex64, h_uv: Complex64, engine: Engine) -> FidelitySample {
    let p_uu = h_uu.norm_sqr();
    let p_uv = h_uv.norm_sqr();
    FidelitySample { t, p_uu, p_uv, total: p_uu + p_uv, engine }
}

/// Spectral samples on the grid `k·t_max/steps`, `k = 0..=steps`.
pub fn scan_spectrum(
    spectrum: &Spectrum,
    u: &GroupElement,
    v: &GroupElement,
    t_max: f64,
    steps: usize,
) -> Result<Vec<FidelitySample>> {
    if steps < 2 {
        return Err(Error::InvalidArgument("a scan needs at least 2 steps".into()));
    }
    if !t_max.is_finite() {
        return Err(Error::InvalidArgument("t_max must be finite".into()));
    }
    let spec = spectrum.spec();
    if spec.index_of(u)? == spec.index_of(v)? {
        return Err(Error::SameVertex);
    }
    let zero = spec.zero();
    let d = spec.sub(u, v)?;
    (0..=steps)
        .map(|k| {
            let t = k as f64 * t_max / steps as f64;
            let phases = spectrum.phases(t);
            let h_uu = spectrum.entry_for_difference(&phases, zero.coords());
            let h_uv = spectrum.entry_for_difference(&phases, d.coords());
            Ok(make_sample(t, h_uu, h_uv, Engine::Spectral))
        })
        .collect()
}

/// One fidelity sample for `Cay(Γ, S)`.
pub fn fidelity(
    spec: &GroupSpec,
    set: &ConnectionSet,
    u: &GroupElement,
    v: &GroupElement,
    t: f64,
    engine: Engine,
) -> Result<FidelitySample> {
    FidelityProbe::new(spec, set, engine)?.sample(u, v, t)
}

/// Maximum of the fidelity total over the grid `k·t_max/steps`.
///
/// Every walk starts at total 1 (`H(0) = I`) and stays close to it for a
/// while, so the search skips the initial lobe: grid points up to the first
/// local minimum of the total. If the total never increases on the grid the
/// whole grid is searched.
pub fn scan_max_fidelity(
    probe: &FidelityProbe,
    u: &GroupElement,
    v: &GroupElement,
    t_max: f64,
    steps: usize,
) -> Result<ScanReport> {
    let samples = probe.scan(u, v, t_max, steps)?;
    Ok(max_after_initial_lobe(&samples, probe.engine()))
}

/// The reduction used by [`scan_max_fidelity`], exposed for precomputed grids.
pub fn max_after_initial_lobe(samples: &[FidelitySample], engine: Engine) -> ScanReport {
    let start = samples.windows(2).position(|w| w[1].total > w[0].total).unwrap_or(0);
    let mut best = start;
    for (k, s) in samples.iter().enumerate().skip(start) {
        if s.total > samples[best].total {
            best = k;
        }
    }
    ScanReport { t_star: samples[best].t, max_total: samples[best].total, search_start: samples[start].t, engine }
}
