//! 1-D optimal transport on NPSDs.
//!
//! Everything runs through quantile functions: in one dimension the optimal
//! plan is monotone, `W_p` is an exact integral of quantile differences, and
//! geodesics/barycenters are (weighted) quantile averages. Binary operations
//! merge the u-breakpoints of both step quantiles exactly, so no quadrature
//! grid is involved; only re-binning onto a target frequency grid is lossy,
//! and all re-binned equalities are stated as `W2 <= 2 grid spacings`.

use crate::classify::{self, Divergence};
use crate::grid::FrequencyGrid;
use crate::spectral::{self, Npsd, SpectralError, TimeSeries};
use alloc::vec::Vec;
use num_traits::Float;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TransportError {
    #[error("wasserstein order must satisfy p >= 1, got {0}")]
    BadOrder(f64),
    #[error("family of distributions is empty")]
    EmptyFamily,
    #[error("{got} weights supplied for a family of {expected}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("weights must be nonnegative with positive sum")]
    BadWeights,
    #[error("distributions live on different grids")]
    GridMismatch,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Right-continuous nondecreasing step function on `(0, 1]`: the inverse
/// cumulative function of a discrete NPSD.
///
/// `value_at(u)` is the smallest grid frequency whose cumulative mass
/// reaches `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileFunction {
    /// Strictly increasing cumulative levels; the last is exactly 1.
    us: Vec<f64>,
    /// Nondecreasing frequencies, one per level.
    values: Vec<f64>,
}

impl QuantileFunction {
    pub fn from_npsd(npsd: &Npsd) -> Self {
        let mut us = Vec::new();
        let mut values = Vec::new();
        let mut cum = 0.0;
        for (&m, &f) in npsd.mass().iter().zip(npsd.grid().frequencies()) {
            if m > 0.0 {
                cum += m;
                us.push(cum);
                values.push(f);
            }
        }
        // Guard against rounding: the final level is 1 by construction.
        if let Some(last) = us.last_mut() {
            *last = 1.0;
        }
        QuantileFunction { us, values }
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.us.iter().copied().zip(self.values.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        self.us.is_empty()
    }

    /// Evaluate the quantile function at `u` (clamped to `(0, 1]`).
    pub fn value_at(&self, u: f64) -> f64 {
        let u = u.min(1.0);
        // first knot level >= u
        let idx = self.us.partition_point(|&level| level < u);
        self.values[idx.min(self.values.len() - 1)]
    }

    /// Integral `∫₀¹ f(F⁻(u)) du` for step quantiles (exact).
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        let mut prev = 0.0;
        for (&u, &v) in self.us.iter().zip(&self.values) {
            acc += (u - prev) * f(v);
            prev = u;
        }
        acc
    }
}

/// Walk the merged u-breakpoints of two step quantiles, yielding each
/// constant segment `(du, value_a, value_b)` exactly once.
fn merged_segments(a: &QuantileFunction, b: &QuantileFunction, mut f: impl FnMut(f64, f64, f64)) {
    let mut ia = 0;
    let mut ib = 0;
    let mut prev = 0.0;
    while ia < a.us.len() && ib < b.us.len() {
        let ua = a.us[ia];
        let ub = b.us[ib];
        let u = ua.min(ub);
        let du = u - prev;
        if du > 0.0 {
            f(du, a.values[ia], b.values[ib]);
        }
        if ua <= u {
            ia += 1;
        }
        if ub <= u {
            ib += 1;
        }
        prev = u;
    }
}

/// The quantile function of an NPSD: `F⁻(u)` = smallest grid frequency with
/// cumulative mass `>= u`.
pub fn quantile_function(npsd: &Npsd) -> QuantileFunction {
    QuantileFunction::from_npsd(npsd)
}

/// `W_p(a, b)` via exact piecewise integration of
/// `∫₀¹ |F⁻_a(t) - F⁻_b(t)|^p dt` over merged breakpoints.
///
/// The grids of `a` and `b` may differ.
pub fn wasserstein(a: &Npsd, b: &Npsd, p: f64) -> Result<f64, TransportError> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(TransportError::BadOrder(p));
    }
    let qa = QuantileFunction::from_npsd(a);
    let qb = QuantileFunction::from_npsd(b);
    let mut acc = 0.0;
    if (p - 2.0).abs() < 1e-12 {
        merged_segments(&qa, &qb, |du, va, vb| {
            let d = va - vb;
            acc += du * d * d;
        });
        Ok(acc.sqrt())
    } else {
        merged_segments(&qa, &qb, |du, va, vb| {
            acc += du * (va - vb).abs().powf(p);
        });
        Ok(acc.powf(1.0 / p))
    }
}

/// `W_2(a, b)`; infallible since the order is fixed.
pub fn wasserstein2(a: &Npsd, b: &Npsd) -> f64 {
    wasserstein(a, b, 2.0).expect("p = 2 is always a valid order")
}

/// The WF distance between two series: `W2` between their NPSDs computed on
/// `n_freq`-point two-sided grids.
pub fn wf_distance(x: &TimeSeries, y: &TimeSeries, n_freq: usize) -> Result<f64, TransportError> {
    let sx = spectral::npsd(x, n_freq)?;
    let sy = spectral::npsd(y, n_freq)?;
    Ok(wasserstein2(&sx, &sy))
}

/// Mass-preserving assignment of point masses to grid bins.
///
/// Each mass at value `v` is split between the two neighboring bins by the
/// lever rule, which preserves the distribution mean exactly; values outside
/// the grid are clamped to the edge bins and reported as clipped.
pub(crate) fn rebin_point_masses(
    masses: impl Iterator<Item = (f64, f64)>,
    grid: &FrequencyGrid,
) -> (Vec<f64>, f64) {
    let mut out = alloc::vec![0.0; grid.len()];
    let f0 = grid.min();
    let spacing = grid.spacing();
    let last = grid.len() - 1;
    let mut clipped = 0.0;
    for (mass, v) in masses {
        if mass <= 0.0 {
            continue;
        }
        let pos = (v - f0) / spacing;
        if pos <= 0.0 {
            out[0] += mass;
            if pos < 0.0 {
                clipped += mass;
            }
        } else if pos >= last as f64 {
            out[last] += mass;
            if pos > last as f64 {
                clipped += mass;
            }
        } else {
            let i = pos as usize;
            let frac = pos - i as f64;
            out[i] += mass * (1.0 - frac);
            out[i + 1] += mass * frac;
        }
    }
    (out, clipped)
}

/// Common target grid for re-binned transport outputs: the span of all
/// inputs at the finest input spacing. Identical grids map to themselves.
fn union_grid(grids: &[&FrequencyGrid]) -> FrequencyGrid {
    let first = grids[0];
    if grids.iter().all(|g| first.compatible(g)) {
        return first.clone();
    }
    let spacing = grids
        .iter()
        .map(|g| g.spacing())
        .fold(f64::INFINITY, f64::min);
    let lo = grids.iter().map(|g| g.min()).fold(f64::INFINITY, f64::min);
    let hi = grids
        .iter()
        .map(|g| g.max())
        .fold(f64::NEG_INFINITY, f64::max);
    let len = (((hi - lo) / spacing).round() as usize + 1).max(2);
    FrequencyGrid::uniform(lo, spacing, len).expect("positive spacing and finite span")
}

/// Constant-speed displacement geodesic between two NPSDs.
///
/// `at(γ)` pushes mass along the monotone optimal plan:
/// `F⁻_γ = (1-γ) F⁻_source + γ F⁻_target`, re-binned onto [`grid`](Self::grid).
#[derive(Debug, Clone)]
pub struct TransportPath {
    source: Npsd,
    target: Npsd,
    /// Merged quantile segments `(du, value_source, value_target)`.
    segments: Vec<(f64, f64, f64)>,
    grid: FrequencyGrid,
}

impl TransportPath {
    pub fn source(&self) -> &Npsd {
        &self.source
    }

    pub fn target(&self) -> &Npsd {
        &self.target
    }

    /// The grid interpolants are re-binned onto.
    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// The interpolant at `γ` (clamped to `[0, 1]`).
    pub fn at(&self, gamma: f64) -> Npsd {
        let g = gamma.clamp(0.0, 1.0);
        let (mass, _) = rebin_point_masses(
            self.segments
                .iter()
                .map(|&(du, va, vb)| (du, (1.0 - g) * va + g * vb)),
            &self.grid,
        );
        Npsd::from_weights(self.grid.clone(), mass).expect("re-binned mass is a distribution")
    }

    /// Length of the path: `W2(source, target)`.
    pub fn length(&self) -> f64 {
        let mut acc = 0.0;
        for &(du, va, vb) in &self.segments {
            let d = va - vb;
            acc += du * d * d;
        }
        acc.sqrt()
    }
}

/// Build the geodesic from `a` (γ=0) to `b` (γ=1).
pub fn geodesic(a: &Npsd, b: &Npsd) -> TransportPath {
    let qa = QuantileFunction::from_npsd(a);
    let qb = QuantileFunction::from_npsd(b);
    let mut segments = Vec::with_capacity(qa.len() + qb.len());
    merged_segments(&qa, &qb, |du, va, vb| segments.push((du, va, vb)));
    let grid = union_grid(&[a.grid(), b.grid()]);
    TransportPath {
        source: a.clone(),
        target: b.clone(),
        segments,
        grid,
    }
}

/// Wasserstein barycenter of a family: the weighted quantile average
/// `F⁻ = Σ w_i F⁻_{s_i}`, re-binned onto the union grid.
///
/// `weights` defaults to uniform; when given it must match the family length
/// and be nonnegative with positive sum (it is normalized internally).
pub fn wf_barycenter(family: &[Npsd], weights: Option<&[f64]>) -> Result<Npsd, TransportError> {
    if family.is_empty() {
        return Err(TransportError::EmptyFamily);
    }
    let n = family.len();
    let w: Vec<f64> = match weights {
        None => alloc::vec![1.0 / n as f64; n],
        Some(w) => {
            if w.len() != n {
                return Err(TransportError::WeightMismatch {
                    expected: n,
                    got: w.len(),
                });
            }
            if w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
                return Err(TransportError::BadWeights);
            }
            let total: f64 = w.iter().sum();
            if !(total > 0.0) {
                return Err(TransportError::BadWeights);
            }
            w.iter().map(|x| x / total).collect()
        }
    };

    let quantiles: Vec<QuantileFunction> =
        family.iter().map(QuantileFunction::from_npsd).collect();
    let grids: Vec<&FrequencyGrid> = family.iter().map(|s| s.grid()).collect();
    let grid = union_grid(&grids);

    // k-way merge over the breakpoints of all quantile functions.
    let mut idx = alloc::vec![0usize; n];
    let mut prev = 0.0;
    let mut segments: Vec<(f64, f64)> = Vec::new();
    loop {
        let mut next_u = f64::INFINITY;
        for (q, &i) in quantiles.iter().zip(&idx) {
            if i < q.us.len() {
                next_u = next_u.min(q.us[i]);
            }
        }
        if !next_u.is_finite() {
            break;
        }
        let du = next_u - prev;
        if du > 0.0 {
            let mut value = 0.0;
            for ((q, &i), &wi) in quantiles.iter().zip(&idx).zip(&w) {
                value += wi * q.values[i.min(q.values.len() - 1)];
            }
            segments.push((du, value));
        }
        for (q, i) in quantiles.iter().zip(idx.iter_mut()) {
            if *i < q.us.len() && q.us[*i] <= next_u {
                *i += 1;
            }
        }
        prev = next_u;
    }

    let (mass, _) = rebin_point_masses(segments.into_iter(), &grid);
    Ok(Npsd::from_weights(grid, mass)?)
}

/// Minimum divergence from `s` to any member of a class, with the argmin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassDistance {
    pub distance: f64,
    pub argmin: usize,
}

/// `d(s, C) = min_{s' ∈ C} d(s, s')` for the given divergence.
pub fn class_distance(
    s: &Npsd,
    class_set: &[Npsd],
    divergence: Divergence,
) -> Result<ClassDistance, TransportError> {
    if class_set.is_empty() {
        return Err(TransportError::EmptyFamily);
    }
    let mut best = ClassDistance {
        distance: f64::INFINITY,
        argmin: 0,
    };
    for (i, member) in class_set.iter().enumerate() {
        let d = classify::divergence_between(divergence, s, member)
            .map_err(|_| TransportError::GridMismatch)?;
        if d < best.distance {
            best = ClassDistance {
                distance: d,
                argmin: i,
            };
        }
    }
    Ok(best)
}

/// Tangent-space element at a barycenter: the optimal displacement
/// `l(ξ) = F⁻_s(F_s̄(ξ)) - ξ` sampled on the barycenter's grid.
///
/// Bins where the barycenter has no mass carry displacement 0 (no mass
/// moves from them).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LogMap {
    base: Npsd,
    displacement: Vec<f64>,
}

impl LogMap {
    /// Pair a base distribution with an explicit displacement field.
    pub fn new(base: Npsd, displacement: Vec<f64>) -> Result<Self, TransportError> {
        if displacement.len() != base.len() {
            return Err(TransportError::Spectral(SpectralError::BadGrid(
                "displacement/grid length mismatch",
            )));
        }
        if displacement.iter().any(|d| !d.is_finite()) {
            return Err(TransportError::Spectral(SpectralError::NegativeValues(
                "displacement must be finite",
            )));
        }
        Ok(LogMap { base, displacement })
    }

    pub fn base(&self) -> &Npsd {
        &self.base
    }

    pub fn displacement(&self) -> &[f64] {
        &self.displacement
    }
}

/// Log map of `s` at `barycenter`: `l = F⁻_s ∘ F_s̄ - id`.
pub fn log_map(s: &Npsd, barycenter: &Npsd) -> LogMap {
    let qs = QuantileFunction::from_npsd(s);
    let mut displacement = Vec::with_capacity(barycenter.len());
    let mut cum = 0.0;
    let n_support = barycenter.mass().iter().filter(|&&m| m > 0.0).count();
    let mut seen = 0usize;
    for (&m, &xi) in barycenter
        .mass()
        .iter()
        .zip(barycenter.grid().frequencies())
    {
        if m > 0.0 {
            cum += m;
            seen += 1;
            // clamp the final cumulative level to exactly 1
            let u = if seen == n_support { 1.0 } else { cum };
            displacement.push(qs.value_at(u) - xi);
        } else {
            displacement.push(0.0);
        }
    }
    LogMap {
        base: barycenter.clone(),
        displacement,
    }
}

/// Diagnostics from an exponential-map pushforward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpMapReport {
    /// Number of adjacent support bins where `id + displacement` decreases.
    /// The pushforward is still well defined; nonzero counts mean the
    /// tangent vector left the geodesically convex region.
    pub monotonicity_violations: usize,
    /// Mass that landed outside the grid span and was clamped to the edges.
    pub clipped_mass: f64,
}

/// Exponential map: pushforward of the base through `ξ ↦ ξ + l(ξ)`,
/// re-binned onto the base grid.
pub fn exp_map(l: &LogMap) -> Npsd {
    exp_map_detailed(l).0
}

/// As [`exp_map`], with monotonicity/clipping diagnostics.
pub fn exp_map_detailed(l: &LogMap) -> (Npsd, ExpMapReport) {
    let base = &l.base;
    let grid = base.grid();
    let mut violations = 0usize;
    let mut prev_target: Option<f64> = None;
    for ((&m, &xi), &d) in base
        .mass()
        .iter()
        .zip(grid.frequencies())
        .zip(&l.displacement)
    {
        if m > 0.0 {
            let target = xi + d;
            if let Some(p) = prev_target {
                if target < p - 1e-12 {
                    violations += 1;
                }
            }
            prev_target = Some(target);
        }
    }
    let (mass, clipped) = rebin_point_masses(
        base.mass()
            .iter()
            .zip(grid.frequencies())
            .zip(&l.displacement)
            .filter(|((&m, _), _)| m > 0.0)
            .map(|((&m, &xi), &d)| (m, xi + d)),
        grid,
    );
    let npsd =
        Npsd::from_weights(grid.clone(), mass).expect("pushforward of a distribution has mass 1");
    (
        npsd,
        ExpMapReport {
            monotonicity_violations: violations,
            clipped_mass: clipped,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedRng;
    use crate::Complex64;
    use approx::assert_abs_diff_eq;

    fn grid(n: usize, rate: f64) -> FrequencyGrid {
        FrequencyGrid::two_sided(n, rate).unwrap()
    }

    fn random_npsd(rng: &mut SeedRng, g: &FrequencyGrid) -> Npsd {
        let weights: Vec<f64> = (0..g.len()).map(|_| rng.uniform(0.0, 1.0)).collect();
        Npsd::from_weights(g.clone(), weights).unwrap()
    }

    fn gaussian_npsd(g: &FrequencyGrid, mu: f64, sigma: f64) -> Npsd {
        let weights: Vec<f64> = g
            .frequencies()
            .iter()
            .map(|&f| (-((f - mu) * (f - mu)) / (2.0 * sigma * sigma)).exp())
            .collect();
        Npsd::from_weights(g.clone(), weights).unwrap()
    }

    /// Cumulative-sum oracle for quantile evaluation.
    fn quantile_oracle(npsd: &Npsd, u: f64) -> f64 {
        let mut cum = 0.0;
        for (&m, &f) in npsd.mass().iter().zip(npsd.grid().frequencies()) {
            cum += m;
            if cum >= u - 1e-15 {
                return f;
            }
        }
        npsd.grid().max()
    }

    #[test]
    fn quantile_dirac_is_constant() {
        let g = grid(9, 1.0);
        let s = Npsd::dirac(g.clone(), 7).unwrap();
        let q = quantile_function(&s);
        let xi = g.frequencies()[7];
        for u in [0.001, 0.25, 0.5, 0.99, 1.0] {
            assert_eq!(q.value_at(u), xi);
        }
    }

    #[test]
    fn quantile_two_point_law() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 2).unwrap();
        let s = Npsd::from_masses(g, alloc::vec![0.5, 0.5]).unwrap();
        let q = quantile_function(&s);
        assert_eq!(q.value_at(0.3), 0.0);
        assert_eq!(q.value_at(0.5), 0.0);
        assert_eq!(q.value_at(0.500001), 1.0);
        assert_eq!(q.value_at(1.0), 1.0);
    }

    #[test]
    fn quantile_uniform_four_points_matches_oracle() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 4).unwrap();
        let s = Npsd::from_masses(g, alloc::vec![0.25; 4]).unwrap();
        let q = quantile_function(&s);
        for u in [0.1, 0.25, 0.26, 0.5, 0.51, 0.75, 0.76, 1.0] {
            assert_eq!(q.value_at(u), quantile_oracle(&s, u), "u = {u}");
        }
    }

    #[test]
    fn wasserstein_identity_and_diracs() {
        let g = grid(33, 8.0);
        let mut rng = SeedRng::new(1);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let s = random_npsd(&mut rng, &g);
            assert_abs_diff_eq!(wasserstein(&s, &s, p).unwrap(), 0.0, epsilon = 1e-12);
        }
        let g2 = FrequencyGrid::uniform(0.0, 1.0, 6).unwrap();
        let a = Npsd::dirac(g2.clone(), 0).unwrap();
        let b = Npsd::dirac(g2, 5).unwrap();
        assert_abs_diff_eq!(wasserstein2(&a, &b), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(wasserstein(&a, &b, 1.0).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn wasserstein_gaussians_closed_form() {
        // Fig. 2 parameters: N(0.1, 0.025) vs N(1.0, 0.25);
        // W2 = sqrt((μ1-μ2)² + (σ1-σ2)²).
        let g = FrequencyGrid::uniform(-3.0, 6.0 / 4095.0, 4096).unwrap();
        let a = gaussian_npsd(&g, 0.1, 0.025f64.sqrt());
        let b = gaussian_npsd(&g, 1.0, 0.25f64.sqrt());
        let expect = (0.9f64 * 0.9 + (0.5 - 0.025f64.sqrt()) * (0.5 - 0.025f64.sqrt())).sqrt();
        let got = wasserstein2(&a, &b);
        assert!(
            (got - expect).abs() <= 2.0 * g.spacing(),
            "got {got}, expected {expect}"
        );
    }

    #[test]
    fn wasserstein_rejects_bad_order() {
        let g = grid(8, 1.0);
        let s = Npsd::from_weights(g, alloc::vec![1.0; 8]).unwrap();
        assert!(matches!(
            wasserstein(&s, &s, 0.5),
            Err(TransportError::BadOrder(_))
        ));
    }

    #[test]
    fn wasserstein_cross_grid() {
        // Dirac at 0 on one grid vs Dirac at 2.5 on a shifted finer grid.
        let ga = FrequencyGrid::uniform(0.0, 1.0, 4).unwrap();
        let gb = FrequencyGrid::uniform(2.5, 0.5, 4).unwrap();
        let a = Npsd::dirac(ga, 0).unwrap();
        let b = Npsd::dirac(gb, 0).unwrap();
        assert_abs_diff_eq!(wasserstein2(&a, &b), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn metric_axioms_on_random_npsds() {
        let g = grid(32, 4.0);
        let mut rng = SeedRng::new(7);
        for _ in 0..50 {
            let a = random_npsd(&mut rng, &g);
            let b = random_npsd(&mut rng, &g);
            let c = random_npsd(&mut rng, &g);
            let dab = wasserstein2(&a, &b);
            let dba = wasserstein2(&b, &a);
            let dac = wasserstein2(&a, &c);
            let dbc = wasserstein2(&b, &c);
            assert!(dab >= 0.0);
            assert_abs_diff_eq!(dab, dba, epsilon = 1e-12);
            assert!(dac <= dab + dbc + 1e-9);
        }
        // zero distance iff bin-wise equality
        let a = random_npsd(&mut rng, &g);
        assert_eq!(wasserstein2(&a, &a.clone()), 0.0);
        let mut w = a.mass().to_vec();
        w[3] += 0.05;
        w[20] = (w[20] - 0.05).max(0.0);
        let b = Npsd::from_weights(g, w).unwrap();
        assert!(wasserstein2(&a, &b) > 0.0);
    }

    #[test]
    fn geodesic_endpoints_and_midpoint_dirac() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 5).unwrap();
        let a = Npsd::dirac(g.clone(), 0).unwrap();
        let b = Npsd::dirac(g, 4).unwrap();
        let path = geodesic(&a, &b);
        assert_abs_diff_eq!(wasserstein2(&path.at(0.0), &a), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(wasserstein2(&path.at(1.0), &b), 0.0, epsilon = 1e-12);
        // Diracs at 0 and 4, γ=0.25 → Dirac at 1 (on-grid, so exact).
        let mid = path.at(0.25);
        assert_abs_diff_eq!(mid.mass()[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn geodesic_constant_speed() {
        let g = grid(64, 4.0);
        let mut rng = SeedRng::new(3);
        let gammas = [0.0, 0.25, 0.5, 0.75, 1.0];
        for _ in 0..10 {
            let a = random_npsd(&mut rng, &g);
            let b = random_npsd(&mut rng, &g);
            let path = geodesic(&a, &b);
            let d = wasserstein2(&a, &b);
            for (i, &gi) in gammas.iter().enumerate() {
                for &gj in &gammas[i + 1..] {
                    let dij = wasserstein2(&path.at(gi), &path.at(gj));
                    assert!(
                        (dij - (gj - gi) * d).abs() <= 2.0 * g.spacing(),
                        "between {gi} and {gj}: {dij} vs {}",
                        (gj - gi) * d
                    );
                }
            }
        }
    }

    #[test]
    fn geodesic_between_gaussians_stays_gaussian() {
        let g = FrequencyGrid::uniform(-2.0, 4.0 / 2047.0, 2048).unwrap();
        let (mu_a, sd_a) = (-0.5, 0.08);
        let (mu_b, sd_b) = (0.7, 0.25);
        let a = gaussian_npsd(&g, mu_a, sd_a);
        let b = gaussian_npsd(&g, mu_b, sd_b);
        let path = geodesic(&a, &b);
        for gamma in [0.25, 0.5, 0.75] {
            let s = path.at(gamma);
            let mu = (1.0 - gamma) * mu_a + gamma * mu_b;
            let sd = (1.0 - gamma) * sd_a + gamma * sd_b;
            assert!((s.mean() - mu).abs() < 0.01 * (1.0 + mu.abs()));
            assert!((s.std() - sd).abs() < 0.01 * sd.max(0.05));
        }
    }

    #[test]
    fn barycenter_single_and_diracs() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 11).unwrap();
        let a = Npsd::dirac(g.clone(), 0).unwrap();
        assert_eq!(wf_barycenter(&[a.clone()], None).unwrap().mass(), a.mass());
        let b = Npsd::dirac(g, 10).unwrap();
        let bar = wf_barycenter(&[a, b], None).unwrap();
        assert_abs_diff_eq!(bar.mass()[5], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn barycenter_gaussian_family() {
        let g = FrequencyGrid::uniform(-2.0, 4.0 / 4095.0, 4096).unwrap();
        let params = [(-0.4, 0.1), (0.2, 0.2), (0.9, 0.15)];
        let family: Vec<Npsd> = params
            .iter()
            .map(|&(mu, sd)| gaussian_npsd(&g, mu, sd))
            .collect();
        let bar = wf_barycenter(&family, None).unwrap();
        let mu_expect = params.iter().map(|p| p.0).sum::<f64>() / 3.0;
        let sd_expect = params.iter().map(|p| p.1).sum::<f64>() / 3.0;
        assert!((bar.mean() - mu_expect).abs() < 0.01 * mu_expect.abs().max(0.1));
        assert!((bar.std() - sd_expect).abs() < 0.01 * sd_expect);
    }

    #[test]
    fn barycenter_weight_validation() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 4).unwrap();
        let s = Npsd::from_weights(g, alloc::vec![1.0; 4]).unwrap();
        assert!(matches!(
            wf_barycenter(&[], None),
            Err(TransportError::EmptyFamily)
        ));
        assert!(matches!(
            wf_barycenter(&[s.clone()], Some(&[0.5, 0.5])),
            Err(TransportError::WeightMismatch { .. })
        ));
        assert!(matches!(
            wf_barycenter(&[s], Some(&[0.0])),
            Err(TransportError::BadWeights)
        ));
    }

    #[test]
    fn class_distance_diracs() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 6).unwrap();
        let s = Npsd::dirac(g.clone(), 2).unwrap();
        let class = [
            Npsd::dirac(g.clone(), 0).unwrap(),
            Npsd::dirac(g.clone(), 5).unwrap(),
        ];
        let cd = class_distance(&s, &class, Divergence::W2).unwrap();
        assert_abs_diff_eq!(cd.distance, 2.0, epsilon = 1e-12);
        assert_eq!(cd.argmin, 0);
        // membership gives zero at the member's own index
        let cd = class_distance(&class[1], &class, Divergence::W2).unwrap();
        assert_eq!(cd.distance, 0.0);
        assert_eq!(cd.argmin, 1);
        assert!(matches!(
            class_distance(&s, &[], Divergence::W2),
            Err(TransportError::EmptyFamily)
        ));
    }

    #[test]
    fn log_map_at_self_is_zero() {
        let g = grid(32, 2.0);
        let mut rng = SeedRng::new(5);
        let s = random_npsd(&mut rng, &g);
        let l = log_map(&s, &s);
        for d in l.displacement() {
            assert_abs_diff_eq!(*d, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn log_map_dirac_translation() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 6).unwrap();
        let bar = Npsd::dirac(g.clone(), 0).unwrap();
        let s = Npsd::dirac(g, 3).unwrap();
        let l = log_map(&s, &bar);
        assert_abs_diff_eq!(l.displacement()[0], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn log_map_gaussian_translation() {
        let g = FrequencyGrid::uniform(-4.0, 8.0 / 4095.0, 4096).unwrap();
        let bar = gaussian_npsd(&g, 0.0, 0.5);
        let s = gaussian_npsd(&g, 1.2, 0.5);
        let l = log_map(&s, &bar);
        // displacement ≈ constant 1.2 wherever the barycenter has real mass
        for ((&m, &d), &xi) in bar
            .mass()
            .iter()
            .zip(l.displacement())
            .zip(g.frequencies())
        {
            if m > 1e-6 && xi.abs() < 1.5 {
                assert!((d - 1.2).abs() < 0.02, "xi={xi} d={d}");
            }
        }
    }

    #[test]
    fn exp_map_zero_and_constant_displacement() {
        let g = grid(64, 4.0);
        let mut rng = SeedRng::new(13);
        let s = random_npsd(&mut rng, &g);
        let zero = LogMap::new(s.clone(), alloc::vec![0.0; s.len()]).unwrap();
        assert!(wasserstein2(&exp_map(&zero), &s) <= g.spacing());
        let c = 3.0 * g.spacing();
        let shift = LogMap::new(s.clone(), alloc::vec![c; s.len()]).unwrap();
        let pushed = exp_map(&shift);
        assert_abs_diff_eq!(pushed.mean(), s.mean() + c, epsilon = 1e-9);
    }

    #[test]
    fn exp_log_roundtrip() {
        let g = grid(64, 4.0);
        let mut rng = SeedRng::new(17);
        for _ in 0..20 {
            let s = random_npsd(&mut rng, &g);
            let bar = random_npsd(&mut rng, &g);
            let (back, report) = exp_map_detailed(&log_map(&s, &bar));
            assert!(
                wasserstein2(&back, &s) <= 2.0 * g.spacing(),
                "roundtrip distance too large"
            );
            assert_eq!(report.monotonicity_violations, 0);
        }
    }

    #[test]
    fn exp_map_reports_monotonicity_violation() {
        let g = FrequencyGrid::uniform(0.0, 1.0, 4).unwrap();
        let base = Npsd::from_masses(g, alloc::vec![0.25; 4]).unwrap();
        // a displacement that swaps the order of the first two bins
        let l = LogMap::new(base, alloc::vec![2.5, 0.0, 0.0, 0.0]).unwrap();
        let (_, report) = exp_map_detailed(&l);
        assert!(report.monotonicity_violations > 0);
    }

    #[test]
    fn wf_distance_identity_and_shift() {
        let mut rng = SeedRng::new(23);
        let samples: Vec<f64> = (0..128).map(|_| rng.normal()).collect();
        let x = TimeSeries::from_real(&samples, 1.0).unwrap();
        assert_abs_diff_eq!(wf_distance(&x, &x, 128).unwrap(), 0.0, epsilon = 1e-12);
        let shifted = x.circular_shift(40);
        assert!(wf_distance(&x, &shifted, 128).unwrap() <= 1e-6);
    }

    #[test]
    fn wf_distance_frequency_shift() {
        let tau = 2.0 * core::f64::consts::PI;
        let mut rng = SeedRng::new(29);
        // narrow-band signal well inside the grid
        let n = 256;
        let samples: Vec<Complex64> = (0..n)
            .map(|k| {
                let t = k as f64;
                let carrier = Complex64::new((tau * 0.05 * t).cos(), (tau * 0.05 * t).sin());
                carrier * (1.0 + 0.1 * rng.normal())
            })
            .collect();
        let y = TimeSeries::new(samples, 1.0).unwrap();
        let xi0 = 16.0 / n as f64; // bin-aligned shift
        let x = y.modulate(xi0);
        let d = wf_distance(&x, &y, n).unwrap();
        let g = FrequencyGrid::two_sided(n, 1.0).unwrap();
        assert!(
            (d - xi0).abs() <= 2.0 * g.spacing(),
            "d = {d}, xi0 = {xi0}"
        );
    }
}
