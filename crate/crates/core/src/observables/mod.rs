//! Monte Carlo estimators for resolvents, densities, averaged determinants
//! and the eigenvector correlator.
//!
//! Per-sample work runs in parallel; reductions use the sample order, so
//! results do not depend on the thread count.

mod bins;

use rayon::prelude::*;

pub use bins::{histogram, Binning, SpectralHistogram};

use crate::eigen::{diagonal_overlaps, eigen_decompose, hermitian_eigenvalues, EigenSystem};
use crate::error::{contract, Result};
use crate::linalg::{Lu, SINGULAR_TOL};
use crate::stats::{jackknife_mean_complex, pairwise_sum, ComplexEstimate, Estimate};
use crate::types::{
    block_trace, quaternionic_block, EnsembleBatch, GinibreMatrix, HermitianMatrix, Mat2, QuaternionArgument,
    SquareComplexMatrix, C64,
};

fn finish(values: Vec<Option<C64>>) -> Result<ComplexEstimate> {
    let skipped = values.iter().filter(|v| v.is_none()).count();
    let kept: Vec<C64> = values.into_iter().flatten().collect();
    if kept.is_empty() {
        return Err(contract("every sample was skipped"));
    }
    let mut e = jackknife_mean_complex(&kept);
    e.skipped = skipped;
    Ok(e)
}

/// `(1/N) Tr (z - H)^{-1}`; `None` when the solve is singular.
pub fn resolvent_sample(z: C64, h: &SquareComplexMatrix) -> Option<C64> {
    let inv = Lu::new(&h.shifted_negative(z)).inverse(SINGULAR_TOL).ok()?;
    Some(inv.trace() / h.n() as f64)
}

/// `G(z) = (1/N)<Tr (z - H)^{-1}>` with jackknife error. Singular samples are
/// skipped and counted.
pub fn resolvent_mc(z: C64, batch: &EnsembleBatch<HermitianMatrix>) -> Result<ComplexEstimate> {
    let vals: Vec<Option<C64>> = batch.samples.par_iter().map(|h| resolvent_sample(z, h.matrix())).collect();
    finish(vals)
}

pub fn hermitian_spectra(batch: &EnsembleBatch<HermitianMatrix>) -> Result<Vec<Vec<f64>>> {
    batch.samples.par_iter().map(hermitian_eigenvalues).collect()
}

pub fn complex_spectra(batch: &EnsembleBatch<GinibreMatrix>) -> Result<Vec<Vec<C64>>> {
    batch.samples.par_iter().map(|x| crate::eigen::eigenvalues(x.matrix())).collect()
}

/// Normalized eigenvalue histogram on the real line.
pub fn density_real(batch: &EnsembleBatch<HermitianMatrix>, bins: &Binning) -> Result<SpectralHistogram> {
    let spectra = hermitian_spectra(batch)?;
    density_real_from_spectra(&spectra, bins)
}

pub fn density_real_from_spectra(spectra: &[Vec<f64>], bins: &Binning) -> Result<SpectralHistogram> {
    let pts: Vec<Vec<C64>> = spectra.iter().map(|s| s.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
    histogram(bins, &pts)
}

/// Normalized eigenvalue density in the complex plane.
pub fn density_complex(spectra: &[Vec<C64>], bins: &Binning) -> Result<SpectralHistogram> {
    histogram(bins, spectra)
}

/// The four entries of the 2x2 generalized resolvent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralizedResolvent {
    pub g11: C64,
    pub g1bar1bar: C64,
    pub g11bar: C64,
    pub g1bar1: C64,
}

impl GeneralizedResolvent {
    pub fn from_mat2(m: &Mat2) -> Self {
        Self { g11: m.0[0][0], g11bar: m.0[0][1], g1bar1: m.0[1][0], g1bar1bar: m.0[1][1] }
    }

    pub fn as_mat2(&self) -> Mat2 {
        Mat2([[self.g11, self.g11bar], [self.g1bar1, self.g1bar1bar]])
    }

    /// `-(1/π) 𝒢_11̄ 𝒢_1̄1`, the eigenvector-correlator read-out.
    pub fn overlap_density(&self) -> f64 {
        -(self.g11bar * self.g1bar1).re / std::f64::consts::PI
    }
}

/// Averaged generalized resolvent with per-entry jackknife errors.
#[derive(Clone, Copy, Debug)]
pub struct GeneralizedResolventEstimate {
    pub mean: GeneralizedResolvent,
    /// Errors of g11, g1bar1bar, g11bar, g1bar1.
    pub se: [f64; 4],
    /// `-(1/π)·product` of the averaged off-diagonal entries.
    pub overlap_density: Estimate,
    pub count: usize,
    pub skipped: usize,
}

/// `(1/N) bTr (Q - 𝒳)^{-1}` for one sample.
pub fn generalized_resolvent_sample(q: &QuaternionArgument, x: &SquareComplexMatrix) -> Option<GeneralizedResolvent> {
    let n = x.n();
    let inv = Lu::new(&quaternionic_block(x, q)).inverse(SINGULAR_TOL).ok()?;
    let bt = block_trace(&inv, n).ok()?;
    let s = 1.0 / n as f64;
    Some(GeneralizedResolvent::from_mat2(&Mat2([
        [bt.0[0][0] * s, bt.0[0][1] * s],
        [bt.0[1][0] * s, bt.0[1][1] * s],
    ])))
}

pub fn generalized_resolvent_mc(
    q: &QuaternionArgument,
    batch: &EnsembleBatch<GinibreMatrix>,
) -> Result<GeneralizedResolventEstimate> {
    if q.w.norm() == 0.0 {
        return Err(contract("generalized resolvent needs |w| > 0"));
    }
    let per: Vec<Option<GeneralizedResolvent>> =
        batch.samples.par_iter().map(|x| generalized_resolvent_sample(q, x.matrix())).collect();
    let skipped = per.iter().filter(|p| p.is_none()).count();
    let kept: Vec<GeneralizedResolvent> = per.into_iter().flatten().collect();
    let m = kept.len();
    if m < 2 {
        return Err(contract("fewer than two usable samples"));
    }
    let field = |f: fn(&GeneralizedResolvent) -> C64| jackknife_mean_complex(&kept.iter().map(f).collect::<Vec<_>>());
    let e11 = field(|g| g.g11);
    let e1b1b = field(|g| g.g1bar1bar);
    let e11b = field(|g| g.g11bar);
    let e1b1 = field(|g| g.g1bar1);
    let mean = GeneralizedResolvent { g11: e11.value, g1bar1bar: e1b1b.value, g11bar: e11b.value, g1bar1: e1b1.value };

    // jackknife for the product of averages
    let s11b = e11b.value * m as f64;
    let s1b1 = e1b1.value * m as f64;
    let loo: Vec<f64> = kept
        .iter()
        .map(|g| {
            let a = (s11b - g.g11bar) / (m - 1) as f64;
            let b = (s1b1 - g.g1bar1) / (m - 1) as f64;
            -(a * b).re / std::f64::consts::PI
        })
        .collect();
    let loo_mean = pairwise_sum(&loo) / m as f64;
    let dev: Vec<f64> = loo.iter().map(|x| (x - loo_mean).powi(2)).collect();
    let se = (pairwise_sum(&dev) * (m - 1) as f64 / m as f64).sqrt();
    Ok(GeneralizedResolventEstimate {
        mean,
        se: [e11.se, e1b1b.se, e11b.se, e1b1.se],
        overlap_density: Estimate { value: mean.overlap_density(), se, count: m },
        count: m,
        skipped,
    })
}

/// Regulator `|w|` used for generalized-resolvent read-outs at size `n`.
/// It has to sit well above the smallest singular values of `z - X`
/// (of order `1/N`), otherwise the off-diagonal entries collapse.
pub fn default_regulator(n: usize) -> f64 {
    2.0 / n as f64
}

/// Density field from the Gauss law `ρ = (1/π) ∂_z̄ 𝒢_11`.
#[derive(Clone, Debug)]
pub struct GaussLawField {
    /// `density[ix][iy]` at `(x0 + ix·h, y0 + iy·h)`.
    pub density: Vec<Vec<f64>>,
    /// The grid spacing exceeded 0.1.
    pub coarse: bool,
}

/// `field[ix][iy]` holds `𝒢_11` on a uniform grid of spacing `h`.
/// Interior points use central differences, boundary points one-sided ones.
pub fn density_from_gauss_law(field: &[Vec<C64>], h: f64) -> Result<GaussLawField> {
    let nx = field.len();
    if nx < 2 || field.iter().any(|r| r.len() != field[0].len()) || field[0].len() < 2 {
        return Err(contract("gauss-law field must be a rectangular grid of at least 2x2"));
    }
    let ny = field[0].len();
    let diff = |get: &dyn Fn(usize) -> C64, i: usize, len: usize| -> C64 {
        if i == 0 {
            (get(1) - get(0)) / h
        } else if i == len - 1 {
            (get(len - 1) - get(len - 2)) / h
        } else {
            (get(i + 1) - get(i - 1)) / (2.0 * h)
        }
    };
    let density = (0..nx)
        .map(|ix| {
            (0..ny)
                .map(|iy| {
                    let dx = diff(&|k| field[k][iy], ix, nx);
                    let dy = diff(&|k| field[ix][k], iy, ny);
                    ((dx + C64::new(0.0, 1.0) * dy) * 0.5).re / std::f64::consts::PI
                })
                .collect()
        })
        .collect();
    Ok(GaussLawField { density, coarse: h > 0.1 })
}

/// `det(z - H)` via log-determinant, failing if it does not fit an f64.
pub fn acp_sample(z: C64, h: &SquareComplexMatrix) -> Result<C64> {
    Lu::new(&h.shifted_negative(z)).det()
}

/// `U(z) = <det(z - H)>` with jackknife error.
pub fn acp_mc(z: C64, batch: &EnsembleBatch<HermitianMatrix>) -> Result<ComplexEstimate> {
    if batch.is_empty() {
        return Err(contract("empty batch"));
    }
    let vals: Vec<C64> = batch.samples.par_iter().map(|h| acp_sample(z, h.matrix())).collect::<Result<_>>()?;
    Ok(jackknife_mean_complex(&vals))
}

pub fn qdet_sample(q: &QuaternionArgument, x: &SquareComplexMatrix) -> Result<C64> {
    Lu::new(&quaternionic_block(x, q)).det()
}

/// `D = <det(Q - 𝒳)>` with jackknife error.
pub fn qdet_mc(q: &QuaternionArgument, batch: &EnsembleBatch<GinibreMatrix>) -> Result<ComplexEstimate> {
    if batch.is_empty() {
        return Err(contract("empty batch"));
    }
    let vals: Vec<C64> = batch.samples.par_iter().map(|x| qdet_sample(q, x.matrix())).collect::<Result<_>>()?;
    Ok(jackknife_mean_complex(&vals))
}

/// Eigenvalues with their diagonal overlaps, one entry per sample.
#[derive(Clone, Debug)]
pub struct OverlapSample {
    pub values: Vec<C64>,
    pub diagonal: Vec<f64>,
}

impl OverlapSample {
    pub fn from_system(sys: &EigenSystem) -> Self {
        Self { values: sys.values.clone(), diagonal: diagonal_overlaps(sys) }
    }
}

pub fn overlap_samples(batch: &EnsembleBatch<GinibreMatrix>) -> Result<Vec<OverlapSample>> {
    batch
        .samples
        .par_iter()
        .map(|x| eigen_decompose(x.matrix()).map(|s| OverlapSample::from_system(&s)))
        .collect()
}

/// Binned `O(z) = (1/N²)<Σ_a O_aa δ²(z - z_a)>`.
#[derive(Clone, Debug)]
pub struct CorrelatorField {
    pub binning: Binning,
    pub centers: Vec<C64>,
    pub value: Vec<f64>,
    pub se: Vec<f64>,
    /// Eigenvalues that landed in each bin, over all samples.
    pub count: Vec<usize>,
    pub samples: usize,
}

impl CorrelatorField {
    /// `Σ_k value_k·measure_k`.
    pub fn integral(&self) -> f64 {
        pairwise_sum(&(0..self.value.len()).map(|k| self.value[k] * self.binning.measure(k)).collect::<Vec<_>>())
    }
}

pub fn correlator_estimate(samples: &[OverlapSample], bins: &Binning) -> Result<CorrelatorField> {
    if samples.is_empty() {
        return Err(contract("no samples"));
    }
    let n = samples[0].values.len();
    let pts: Vec<Vec<C64>> = samples.iter().map(|s| s.values.clone()).collect();
    let ws: Vec<Vec<f64>> = samples.iter().map(|s| s.diagonal.clone()).collect();
    let (rows, _) = bins::per_sample_bins(bins, &pts, Some(&ws));
    let (counts, _) = bins::per_sample_bins(bins, &pts, None);
    let scale: Vec<f64> = (0..bins.len()).map(|k| 1.0 / ((n * n) as f64 * bins.measure(k))).collect();
    let (value, se) = bins::bin_means(&rows, &scale);
    let count = (0..bins.len()).map(|k| counts.iter().map(|r| r[k] as usize).sum()).collect();
    Ok(CorrelatorField {
        binning: bins.clone(),
        centers: (0..bins.len()).map(|k| bins.center(k)).collect(),
        value,
        se,
        count,
        samples: samples.len(),
    })
}

/// Edge profile on the scale `|z| - 1 = η/√N`, as a density per unit area
/// of the complex plane (bulk value `1/π`).
#[derive(Clone, Debug)]
pub struct EdgeProfile {
    pub eta_edges: Vec<f64>,
    pub density: Vec<f64>,
    pub se: Vec<f64>,
    pub count: Vec<usize>,
    /// Fewer than 500 eigenvalues fell in the window.
    pub sparse: bool,
}

impl EdgeProfile {
    pub fn centers(&self) -> Vec<f64> {
        self.eta_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

pub fn edge_profile(spectra: &[Vec<C64>], n: usize, eta_edges: &[f64]) -> Result<EdgeProfile> {
    if spectra.is_empty() {
        return Err(contract("no samples"));
    }
    let sn = (n as f64).sqrt();
    let radii: Vec<f64> = eta_edges.iter().map(|e| 1.0 + e / sn).collect();
    if radii[0] < 0.0 {
        return Err(contract("edge window reaches past the origin"));
    }
    let bins = Binning::radial(radii)?;
    let (rows, _) = bins::per_sample_bins(&bins, spectra, None);
    let scale: Vec<f64> = (0..bins.len()).map(|k| 1.0 / (n as f64 * bins.measure(k))).collect();
    let (density, se) = bins::bin_means(&rows, &scale);
    let count: Vec<usize> = (0..bins.len()).map(|k| rows.iter().map(|r| r[k] as usize).sum()).collect();
    let total: usize = count.iter().sum();
    Ok(EdgeProfile { eta_edges: eta_edges.to_vec(), density, se, count, sparse: total < 500 })
}

/// Builds a batch of exact transition samples, one RNG stream per sample.
pub fn gue_batch(
    h0: &HermitianMatrix,
    tau: f64,
    params: &crate::types::OUParams,
    samples: usize,
    stream_tag: u16,
) -> Result<EnsembleBatch<HermitianMatrix>> {
    let draws: Vec<HermitianMatrix> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = crate::rng::rng_stream(params.seed, crate::rng::stream_key(stream_tag, s as u64));
            crate::diffusion::sample_gue_transition(h0, tau, params, &mut rng)
        })
        .collect::<Result<_>>()?;
    Ok(EnsembleBatch { params: *params, tau, initial: h0.clone(), samples: draws })
}

pub fn ginibre_batch(
    x0: &GinibreMatrix,
    tau: f64,
    params: &crate::types::OUParams,
    samples: usize,
    stream_tag: u16,
) -> Result<EnsembleBatch<GinibreMatrix>> {
    let draws: Vec<GinibreMatrix> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = crate::rng::rng_stream(params.seed, crate::rng::stream_key(stream_tag, s as u64));
            crate::diffusion::sample_ginibre_transition(x0, tau, params, &mut rng)
        })
        .collect::<Result<_>>()?;
    Ok(EnsembleBatch { params: *params, tau, initial: x0.clone(), samples: draws })
}

/// Stationary state of the OU process is reached from any start as τ → ∞;
/// this horizon puts the memory of the start below 1e-30.
pub fn stationary_tau(a: f64) -> f64 {
    35.0 / a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::OUParams;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn fixed_batch<M: Clone>(m: M, count: usize, n: usize) -> EnsembleBatch<M> {
        EnsembleBatch {
            params: OUParams::new(0.5, n, 1e-4, 0).unwrap(),
            tau: 0.0,
            initial: m.clone(),
            samples: vec![m; count],
        }
    }

    #[test]
    fn resolvent_of_zero_matrix() {
        let b = fixed_batch(HermitianMatrix::zeros(5), 3, 5);
        let e = resolvent_mc(c(2.0, 0.0), &b).unwrap();
        assert_eq!(e.value, c(0.5, 0.0));
        let e = resolvent_mc(c(0.0, 100.0), &b).unwrap();
        assert!((e.value * c(0.0, 100.0) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn resolvent_singular_samples_are_skipped() {
        let b = fixed_batch(HermitianMatrix::zeros(2), 2, 2);
        assert!(resolvent_mc(c(0.0, 0.0), &b).is_err());
    }

    #[test]
    fn acp_of_fixed_matrix() {
        let b = fixed_batch(HermitianMatrix::from_real_diagonal(&[1.0, -1.0]), 4, 2);
        let e = acp_mc(c(2.0, 0.0), &b).unwrap();
        assert_eq!(e.value, c(3.0, 0.0));
        assert_eq!(e.se, 0.0);
    }

    #[test]
    fn qdet_of_zero_matrix() {
        let n = 3;
        let b = fixed_batch(GinibreMatrix::zeros(n), 2, n);
        let q = QuaternionArgument::new(c(0.4, -0.2), c(0.3, 0.1));
        let expected = (q.z.norm_sqr() + q.w.norm_sqr()).powi(n as i32);
        let e = qdet_mc(&q, &b).unwrap();
        assert!((e.value - expected).norm() < 1e-14);
    }

    #[test]
    fn generalized_resolvent_of_zero_matrix() {
        let b = fixed_batch(GinibreMatrix::zeros(4), 2, 4);
        let q = QuaternionArgument::new(c(0.0, 0.0), c(1.0, 0.0));
        let g = generalized_resolvent_mc(&q, &b).unwrap().mean.as_mat2();
        let expected = Mat2([[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]]);
        assert!(g.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn generalized_resolvent_block_symmetry_per_sample() {
        let mut rng = crate::rng::rng_stream(2, 0);
        let x = crate::diffusion::standard_ginibre(6, &mut rng);
        let q = QuaternionArgument::new(c(0.3, 0.2), c(0.05, 0.02));
        let g = generalized_resolvent_sample(&q, x.matrix()).unwrap();
        assert!((g.g1bar1bar - g.g11.conj()).norm() < 1e-12);
        let prod = g.g11bar * g.g1bar1;
        assert!(prod.im.abs() < 1e-12 && prod.re <= 0.0);
    }

    #[test]
    fn gauss_law_of_simple_fields() {
        let h = 0.05;
        let grid = |f: &dyn Fn(C64) -> C64| -> Vec<Vec<C64>> {
            (0..10).map(|i| (0..10).map(|j| f(c(0.5 + i as f64 * h, 0.5 + j as f64 * h))).collect()).collect()
        };
        let holo = density_from_gauss_law(&grid(&|z| 1.0 / z), h).unwrap();
        for row in &holo.density[1..9] {
            for d in &row[1..9] {
                assert!(d.abs() < 1e-2);
            }
        }
        let anti = density_from_gauss_law(&grid(&|z| z.conj()), h).unwrap();
        for row in &anti.density {
            for d in row {
                assert!((d - 1.0 / std::f64::consts::PI).abs() < 1e-12);
            }
        }
        assert!(!anti.coarse);
    }

    #[test]
    fn correlator_of_hermitian_samples_is_density_over_n() {
        let s = OverlapSample { values: vec![c(0.1, 0.0), c(-0.3, 0.0)], diagonal: vec![1.0, 1.0] };
        let bins = Binning::equal_area(0.0, 1.0, 4).unwrap();
        let f = correlator_estimate(&[s.clone(), s], &bins).unwrap();
        assert!((f.integral() - 2.0 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn edge_profile_counts_shell() {
        let spectra = vec![vec![c(1.0, 0.0), c(0.0, 0.5)]];
        let p = edge_profile(&spectra, 4, &[-0.5, 0.5]).unwrap();
        assert_eq!(p.count, vec![1]);
        assert!(p.sparse);
    }
}
