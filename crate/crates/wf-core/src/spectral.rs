//! Fourier power representations of time series.
//!
//! A series is embedded as a normalized power spectral density (NPSD): the
//! periodogram normalized to unit total mass on a frequency grid. The module
//! also carries the autocorrelation side of the picture (empirical ACF, the
//! normalized Bochner transform pair) and phase-equipped reconstruction back
//! into the time domain.

use crate::fft;
use crate::grid::{FrequencyGrid, GridError};
use crate::rng::SeedRng;
use crate::Complex64;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

const TAU: f64 = 2.0 * PI;

/// Mass-sum tolerance for the NPSD invariant.
const MASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("series has no samples")]
    EmptySeries,
    #[error("series has {0} samples, spectral operations need at least 2")]
    ShortSeries(usize),
    #[error("sample rate must be strictly positive, got {0}")]
    BadRate(f64),
    #[error("bad grid: {0}")]
    BadGrid(&'static str),
    #[error("total power is not strictly positive")]
    ZeroPower,
    #[error("negative values where nonnegative required: {0}")]
    NegativeValues(&'static str),
    #[error("max_lag {max_lag} out of range for series of length {len}")]
    LagOutOfRange { max_lag: usize, len: usize },
    #[error("phase vector has length {got}, expected {expected}")]
    PhaseLengthMismatch { expected: usize, got: usize },
    #[error("mass vector does not sum to 1 (sum = {0})")]
    NotNormalized(f64),
}

impl From<GridError> for SpectralError {
    fn from(e: GridError) -> Self {
        SpectralError::BadGrid(e.0)
    }
}

/// A uniformly sampled signal. Real signals carry a zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimeSeries {
    samples: Vec<Complex64>,
    sample_rate: f64,
    id: Option<String>,
}

impl TimeSeries {
    pub fn new(samples: Vec<Complex64>, sample_rate: f64) -> Result<Self, SpectralError> {
        if samples.is_empty() {
            return Err(SpectralError::EmptySeries);
        }
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(SpectralError::BadRate(sample_rate));
        }
        Ok(TimeSeries {
            samples,
            sample_rate,
            id: None,
        })
    }

    pub fn from_real(samples: &[f64], sample_rate: f64) -> Result<Self, SpectralError> {
        Self::new(
            samples.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            sample_rate,
        )
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    /// Subtract the sample mean.
    pub fn demean(&self) -> TimeSeries {
        let n = self.samples.len() as f64;
        let mean = self.samples.iter().sum::<Complex64>() / n;
        TimeSeries {
            samples: self.samples.iter().map(|x| x - mean).collect(),
            sample_rate: self.sample_rate,
            id: self.id.clone(),
        }
    }

    /// Circularly rotate samples left by `shift` positions.
    pub fn circular_shift(&self, shift: usize) -> TimeSeries {
        let n = self.samples.len();
        let s = shift % n;
        let mut samples = Vec::with_capacity(n);
        samples.extend_from_slice(&self.samples[s..]);
        samples.extend_from_slice(&self.samples[..s]);
        TimeSeries {
            samples,
            sample_rate: self.sample_rate,
            id: self.id.clone(),
        }
    }

    /// Frequency-shift the signal: `x(t) e^{2πi ξ0 t}` with `t = n/rate`.
    pub fn modulate(&self, xi0: f64) -> TimeSeries {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(n, x)| {
                let ang = TAU * xi0 * n as f64 / self.sample_rate;
                x * Complex64::new(ang.cos(), ang.sin())
            })
            .collect();
        TimeSeries {
            samples,
            sample_rate: self.sample_rate,
            id: self.id.clone(),
        }
    }

    /// First `n` samples as a new series.
    pub fn prefix(&self, n: usize) -> Result<TimeSeries, SpectralError> {
        if n == 0 {
            return Err(SpectralError::EmptySeries);
        }
        let n = n.min(self.samples.len());
        Ok(TimeSeries {
            samples: self.samples[..n].to_vec(),
            sample_rate: self.sample_rate,
            id: self.id.clone(),
        })
    }
}

/// Complex Fourier coefficients on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: FrequencyGrid,
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: FrequencyGrid, coefficients: Vec<Complex64>) -> Result<Self, SpectralError> {
        if coefficients.len() != grid.len() {
            return Err(SpectralError::BadGrid("coefficient/grid length mismatch"));
        }
        Ok(Spectrum { grid, coefficients })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Phase angle per bin, in `(-π, π]`.
    pub fn phases(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.arg()).collect()
    }

    /// Power per bin scaled by `1/(len * rate)`, the periodogram convention.
    pub fn to_psd(&self, series_len: usize, sample_rate: f64) -> Psd {
        let scale = 1.0 / (series_len as f64 * sample_rate);
        let power = self
            .coefficients
            .iter()
            .map(|c| c.norm_sqr() * scale)
            .collect();
        Psd {
            grid: self.grid.clone(),
            power,
        }
    }
}

/// Nonnegative power per grid frequency.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Psd {
    grid: FrequencyGrid,
    power: Vec<f64>,
}

impl Psd {
    pub fn new(grid: FrequencyGrid, power: Vec<f64>) -> Result<Self, SpectralError> {
        if power.len() != grid.len() {
            return Err(SpectralError::BadGrid("power/grid length mismatch"));
        }
        if power.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(SpectralError::NegativeValues("psd power"));
        }
        if !(power.iter().sum::<f64>() > 0.0) {
            return Err(SpectralError::ZeroPower);
        }
        Ok(Psd { grid, power })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }
}

/// A probability mass function over frequency: the normalized PSD.
///
/// Mass is stored per grid bin and sums to 1; the density at a bin is its
/// mass divided by the grid spacing.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Npsd {
    grid: FrequencyGrid,
    mass: Vec<f64>,
}

impl Npsd {
    /// Build from cell masses that already sum to 1 (tolerance 1e-9); the
    /// stored masses are rescaled so the sum is exactly 1.
    pub fn from_masses(grid: FrequencyGrid, mass: Vec<f64>) -> Result<Self, SpectralError> {
        if mass.len() != grid.len() {
            return Err(SpectralError::BadGrid("mass/grid length mismatch"));
        }
        if mass.iter().any(|&m| m < 0.0 || !m.is_finite()) {
            return Err(SpectralError::NegativeValues("npsd mass"));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(SpectralError::NotNormalized(total));
        }
        Ok(Self::rescaled(grid, mass, total))
    }

    /// Build from arbitrary nonnegative weights, normalizing to unit mass.
    pub fn from_weights(grid: FrequencyGrid, weights: Vec<f64>) -> Result<Self, SpectralError> {
        if weights.len() != grid.len() {
            return Err(SpectralError::BadGrid("mass/grid length mismatch"));
        }
        if weights.iter().any(|&m| m < 0.0 || !m.is_finite()) {
            return Err(SpectralError::NegativeValues("npsd weights"));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(SpectralError::ZeroPower);
        }
        Ok(Self::rescaled(grid, weights, total))
    }

    /// Point mass at one grid bin.
    pub fn dirac(grid: FrequencyGrid, bin: usize) -> Result<Self, SpectralError> {
        if bin >= grid.len() {
            return Err(SpectralError::BadGrid("dirac bin out of range"));
        }
        let mut mass = vec![0.0; grid.len()];
        mass[bin] = 1.0;
        Ok(Npsd { grid, mass })
    }

    fn rescaled(grid: FrequencyGrid, mut mass: Vec<f64>, total: f64) -> Self {
        for m in mass.iter_mut() {
            *m /= total;
        }
        Npsd { grid, mass }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// Mean frequency under the mass distribution.
    pub fn mean(&self) -> f64 {
        self.mass
            .iter()
            .zip(self.grid.frequencies())
            .map(|(m, f)| m * f)
            .sum()
    }

    /// Second raw moment `E[ξ²]`.
    pub fn second_moment(&self) -> f64 {
        self.mass
            .iter()
            .zip(self.grid.frequencies())
            .map(|(m, f)| m * f * f)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        (self.second_moment() - mu * mu).max(0.0)
    }

    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Largest deviation from even symmetry `|m(ξ) - m(-ξ)|`; mass in bins
    /// with no mirrored counterpart counts fully.
    pub fn evenness_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.mass.len() {
            match self.grid.mirror_bin(i) {
                Some(j) => worst = worst.max((self.mass[i] - self.mass[j]).abs()),
                None => worst = worst.max(self.mass[i]),
            }
        }
        worst
    }
}

/// Normalized autocorrelation values on a set of nonnegative lags.
#[derive(Debug, Clone, PartialEq)]
pub struct Acf {
    lags: Vec<usize>,
    values: Vec<Complex64>,
}

impl Acf {
    /// Lags must start at 0 and be strictly increasing; the lag-0 value must
    /// equal 1 within 1e-9 (normalized form).
    pub fn new(lags: Vec<usize>, values: Vec<Complex64>) -> Result<Self, SpectralError> {
        if lags.is_empty() || lags[0] != 0 || lags.len() != values.len() {
            return Err(SpectralError::BadGrid("acf lags must start at 0"));
        }
        if lags.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SpectralError::BadGrid("acf lags must be increasing"));
        }
        if (values[0] - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(SpectralError::NotNormalized(values[0].re));
        }
        Ok(Acf { lags, values })
    }

    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Real parts of the values (exact for real even spectra).
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// Zero-padded DFT on the symmetric two-sided grid.
///
/// Coefficient `k` is the DFT bin at frequency `(k - floor(n/2)) * rate / n`,
/// i.e. the usual FFT output rotated so frequency zero sits mid-grid.
pub fn spectrum(ts: &TimeSeries, n_freq: usize) -> Result<Spectrum, SpectralError> {
    check_series(ts)?;
    if n_freq < 2 {
        return Err(SpectralError::BadGrid("n_freq must be at least 2"));
    }
    if n_freq < ts.len() {
        return Err(SpectralError::BadGrid(
            "n_freq must be >= series length (zero padding only)",
        ));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n_freq];
    buf[..ts.len()].copy_from_slice(ts.samples());
    fft::fft(&mut buf);
    let half = n_freq / 2;
    let mut coefficients = Vec::with_capacity(n_freq);
    coefficients.extend_from_slice(&buf[n_freq - half..]);
    coefficients.extend_from_slice(&buf[..n_freq - half]);
    let grid = FrequencyGrid::two_sided(n_freq, ts.sample_rate())?;
    Spectrum::new(grid, coefficients)
}

/// DFT evaluated directly on an arbitrary caller grid:
/// `X(f) = sum_n x[n] e^{-2πi f n / rate}`.
pub fn spectrum_on_grid(ts: &TimeSeries, grid: &FrequencyGrid) -> Result<Spectrum, SpectralError> {
    check_series(ts)?;
    let rate = ts.sample_rate();
    let coefficients = grid
        .frequencies()
        .iter()
        .map(|&f| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, x) in ts.samples().iter().enumerate() {
                let ang = -TAU * f * n as f64 / rate;
                acc += x * Complex64::new(ang.cos(), ang.sin());
            }
            acc
        })
        .collect();
    Spectrum::new(grid.clone(), coefficients)
}

/// Plain periodogram: `|DFT|² / (len · rate)` on the two-sided grid.
pub fn periodogram(ts: &TimeSeries, n_freq: usize) -> Result<Psd, SpectralError> {
    let spec = spectrum(ts, n_freq)?;
    psd_from_spectrum(spec, ts.len(), ts.sample_rate())
}

/// Periodogram on a caller-supplied grid (direct DFT evaluation).
pub fn periodogram_on_grid(ts: &TimeSeries, grid: &FrequencyGrid) -> Result<Psd, SpectralError> {
    let spec = spectrum_on_grid(ts, grid)?;
    psd_from_spectrum(spec, ts.len(), ts.sample_rate())
}

fn psd_from_spectrum(
    spec: Spectrum,
    series_len: usize,
    rate: f64,
) -> Result<Psd, SpectralError> {
    let psd = spec.to_psd(series_len, rate);
    if !(psd.total_power() > 0.0) {
        return Err(SpectralError::ZeroPower);
    }
    Ok(psd)
}

/// Welch-style segment averaging on top of the plain periodogram.
#[derive(Debug, Clone, Copy)]
pub struct WelchConfig {
    /// Number of segments (>= 1; 1 reduces to the plain periodogram).
    pub segments: usize,
    /// Fractional overlap between consecutive segments, in `[0, 1)`.
    pub overlap: f64,
}

/// Averaged periodogram over overlapping rectangular-window segments.
pub fn periodogram_welch(
    ts: &TimeSeries,
    n_freq: usize,
    cfg: WelchConfig,
) -> Result<Psd, SpectralError> {
    if cfg.segments == 0 {
        return Err(SpectralError::BadGrid("welch needs at least one segment"));
    }
    if !(0.0..1.0).contains(&cfg.overlap) {
        return Err(SpectralError::BadGrid("welch overlap must be in [0, 1)"));
    }
    if cfg.segments == 1 {
        return periodogram(ts, n_freq);
    }
    check_series(ts)?;
    let n = ts.len();
    // Segment length so that `segments` windows with the requested overlap
    // tile the series.
    let denom = 1.0 + (cfg.segments as f64 - 1.0) * (1.0 - cfg.overlap);
    let seg_len = ((n as f64 / denom).floor() as usize).max(2);
    let step = (((seg_len as f64) * (1.0 - cfg.overlap)).round() as usize).max(1);
    if seg_len > n {
        return Err(SpectralError::ShortSeries(n));
    }
    if n_freq < seg_len {
        return Err(SpectralError::BadGrid(
            "n_freq must be >= segment length (zero padding only)",
        ));
    }
    let mut acc = vec![0.0; n_freq];
    let mut count = 0usize;
    let mut start = 0usize;
    while count < cfg.segments && start + seg_len <= n {
        let seg = TimeSeries::new(ts.samples()[start..start + seg_len].to_vec(), ts.sample_rate())?;
        let psd = periodogram(&seg, n_freq)?;
        for (a, p) in acc.iter_mut().zip(psd.power()) {
            *a += p;
        }
        count += 1;
        start += step;
    }
    if count == 0 {
        return Err(SpectralError::ShortSeries(n));
    }
    for a in acc.iter_mut() {
        *a /= count as f64;
    }
    Psd::new(FrequencyGrid::two_sided(n_freq, ts.sample_rate())?, acc)
}

/// Normalize a PSD to a unit-mass NPSD.
pub fn normalize(psd: &Psd) -> Result<Npsd, SpectralError> {
    Npsd::from_weights(psd.grid().clone(), psd.power().to_vec())
}

/// Periodogram followed by normalization.
pub fn npsd(ts: &TimeSeries, n_freq: usize) -> Result<Npsd, SpectralError> {
    normalize(&periodogram(ts, n_freq)?)
}

/// NPSD on a caller-supplied grid.
pub fn npsd_on_grid(ts: &TimeSeries, grid: &FrequencyGrid) -> Result<Npsd, SpectralError> {
    normalize(&periodogram_on_grid(ts, grid)?)
}

/// Biased-estimator empirical ACF:
/// `c(h) = (1/n) Σ_{t} y_t y*_{t+h}`, normalized by `c(0)`.
pub fn empirical_acf(ts: &TimeSeries, max_lag: usize) -> Result<Acf, SpectralError> {
    check_series(ts)?;
    let n = ts.len();
    if max_lag >= n {
        return Err(SpectralError::LagOutOfRange { max_lag, len: n });
    }
    let x = ts.samples();
    let mut c = Vec::with_capacity(max_lag + 1);
    for h in 0..=max_lag {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in 0..n - h {
            acc += x[t] * x[t + h].conj();
        }
        c.push(acc / n as f64);
    }
    let c0 = c[0];
    if !(c0.re > 0.0) {
        return Err(SpectralError::ZeroPower);
    }
    let values = c.iter().map(|v| v / c0.re).collect();
    Acf::new((0..=max_lag).collect(), values)
}

/// Diagnostics from the finite-lag Bochner inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BochnerReport {
    /// Total negative weight clipped to zero, as a fraction of total
    /// absolute weight.
    pub clipped_fraction: f64,
}

/// Normalized-Bochner transform of an ACF onto a frequency grid:
/// `s(ξ) ∝ Σ_h r(h) e^{-2πi hξ}` over the Hermitian extension of the stored
/// lags, with negative values clipped to zero and mass renormalized.
pub fn npsd_from_acf(acf: &Acf, grid: &FrequencyGrid) -> Result<Npsd, SpectralError> {
    npsd_from_acf_detailed(acf, grid).map(|(npsd, _)| npsd)
}

/// As [`npsd_from_acf`], also reporting how much negative weight was clipped.
pub fn npsd_from_acf_detailed(
    acf: &Acf,
    grid: &FrequencyGrid,
) -> Result<(Npsd, BochnerReport), SpectralError> {
    let mut raw = Vec::with_capacity(grid.len());
    for &xi in grid.frequencies() {
        // r(-h) = conj(r(h)), so the two-sided sum collapses to
        // r(0) + 2 Re Σ_{h>0} r(h) e^{-2πi hξ}.
        let mut acc = acf.values()[0].re;
        for (&h, v) in acf.lags().iter().zip(acf.values()).skip(1) {
            let ang = -TAU * h as f64 * xi;
            acc += 2.0 * (v * Complex64::new(ang.cos(), ang.sin())).re;
        }
        raw.push(acc);
    }
    let total_abs: f64 = raw.iter().map(|v| v.abs()).sum();
    let clipped: f64 = raw.iter().filter(|&&v| v < 0.0).map(|v| -v).sum();
    let weights: Vec<f64> = raw.into_iter().map(|v| v.max(0.0)).collect();
    let npsd = Npsd::from_weights(grid.clone(), weights)?;
    let report = BochnerReport {
        clipped_fraction: if total_abs > 0.0 {
            clipped / total_abs
        } else {
            0.0
        },
    };
    Ok((npsd, report))
}

/// Inverse normalized-Bochner transform: `r(h) = Σ_k mass[k] e^{+2πi h ξ_k}`.
pub fn acf_from_npsd(npsd: &Npsd, lags: &[usize]) -> Result<Acf, SpectralError> {
    let values: Vec<Complex64> = lags
        .iter()
        .map(|&h| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &xi) in npsd.mass().iter().zip(npsd.grid().frequencies()) {
                let ang = TAU * h as f64 * xi;
                acc += m * Complex64::new(ang.cos(), ang.sin());
            }
            acc
        })
        .collect();
    Acf::new(lags.to_vec(), values)
}

/// Phase policy for time-domain reconstruction from an NPSD.
#[derive(Debug, Clone, PartialEq)]
pub enum PhasePolicy {
    /// All phases zero.
    Zero,
    /// Caller-supplied phase per grid bin.
    Fixed(Vec<f64>),
    /// Uniform phases in `[0, 2π)` drawn deterministically from the seed.
    Random { seed: u64 },
    /// Euclidean phase interpolation `φ_γ = γ(φ1 mod 2π) + (1-γ)(φ2 mod 2π)`.
    Interpolated {
        phi1: Vec<f64>,
        phi2: Vec<f64>,
        gamma: f64,
    },
}

fn mod_tau(x: f64) -> f64 {
    let r = x - TAU * (x / TAU).floor();
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

/// Map an NPSD back into the time domain with magnitude `sqrt(mass)` and the
/// given phase policy:
/// `x[n] = Σ_k sqrt(m_k) e^{i φ_k} e^{+2πi ξ_k n/rate}`.
pub fn reconstruct(
    npsd: &Npsd,
    phase: &PhasePolicy,
    n_samples: usize,
    sample_rate: f64,
) -> Result<TimeSeries, SpectralError> {
    if n_samples == 0 {
        return Err(SpectralError::EmptySeries);
    }
    if !(sample_rate > 0.0) || !sample_rate.is_finite() {
        return Err(SpectralError::BadRate(sample_rate));
    }
    let m = npsd.len();
    let phases: Vec<f64> = match phase {
        PhasePolicy::Zero => vec![0.0; m],
        PhasePolicy::Fixed(phi) => {
            if phi.len() != m {
                return Err(SpectralError::PhaseLengthMismatch {
                    expected: m,
                    got: phi.len(),
                });
            }
            phi.clone()
        }
        PhasePolicy::Random { seed } => {
            let mut rng = SeedRng::new(*seed);
            (0..m).map(|_| rng.uniform(0.0, TAU)).collect()
        }
        PhasePolicy::Interpolated { phi1, phi2, gamma } => {
            if phi1.len() != m {
                return Err(SpectralError::PhaseLengthMismatch {
                    expected: m,
                    got: phi1.len(),
                });
            }
            if phi2.len() != m {
                return Err(SpectralError::PhaseLengthMismatch {
                    expected: m,
                    got: phi2.len(),
                });
            }
            phi1.iter()
                .zip(phi2)
                .map(|(&a, &b)| gamma * mod_tau(a) + (1.0 - gamma) * mod_tau(b))
                .collect()
        }
    };

    let coefficients: Vec<Complex64> = npsd
        .mass()
        .iter()
        .zip(&phases)
        .map(|(&m, &phi)| Complex64::new(phi.cos(), phi.sin()) * m.sqrt())
        .collect();

    // Fast path: the grid is exactly the two-sided DFT grid for
    // (n_samples, sample_rate), so the sum is an inverse DFT.
    let grid = npsd.grid();
    let dft_grid = m == n_samples
        && (grid.spacing() - sample_rate / m as f64).abs() <= 1e-12 * grid.spacing()
        && (grid.min() + (m / 2) as f64 * grid.spacing()).abs() <= 1e-9 * grid.spacing();
    let samples = if dft_grid {
        let half = m / 2;
        let mut buf = Vec::with_capacity(m);
        buf.extend_from_slice(&coefficients[half..]);
        buf.extend_from_slice(&coefficients[..half]);
        fft::ifft(&mut buf);
        for x in buf.iter_mut() {
            *x *= m as f64;
        }
        buf
    } else {
        (0..n_samples)
            .map(|n| {
                let t = n as f64 / sample_rate;
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, &xi) in coefficients.iter().zip(grid.frequencies()) {
                    let ang = TAU * xi * t;
                    acc += c * Complex64::new(ang.cos(), ang.sin());
                }
                acc
            })
            .collect()
    };
    TimeSeries::new(samples, sample_rate)
}

fn check_series(ts: &TimeSeries) -> Result<(), SpectralError> {
    if ts.is_empty() {
        return Err(SpectralError::EmptySeries);
    }
    if ts.len() < 2 {
        return Err(SpectralError::ShortSeries(ts.len()));
    }
    Ok(())
}
