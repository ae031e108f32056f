use std::f64::consts::PI;

use crate::error::{contract, Result};
use crate::stats::{jackknife_mean, pairwise_sum};
use crate::types::C64;

/// Where a point lands. Real bins use `Re z`, radial bins `|z|`, square
/// bins both coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Binning {
    Linear { lo: f64, hi: f64, count: usize },
    Radial { edges: Vec<f64> },
    Square { lo: f64, hi: f64, count: usize },
}

impl Binning {
    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(hi > lo) || count == 0 {
            return Err(contract("linear bins need lo < hi and count > 0"));
        }
        Ok(Binning::Linear { lo, hi, count })
    }

    pub fn radial(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 || edges[0] < 0.0 || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(contract("radial edges must be non-negative and increasing"));
        }
        Ok(Binning::Radial { edges })
    }

    /// `count` annuli of equal area covering `[r0, r1]`.
    pub fn equal_area(r0: f64, r1: f64, count: usize) -> Result<Self> {
        if !(r1 > r0 && r0 >= 0.0) || count == 0 {
            return Err(contract("equal-area bins need 0 <= r0 < r1"));
        }
        let (a0, a1) = (r0 * r0, r1 * r1);
        Self::radial((0..=count).map(|k| (a0 + (a1 - a0) * k as f64 / count as f64).sqrt()).collect())
    }

    pub fn square(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(hi > lo) || count == 0 {
            return Err(contract("square bins need lo < hi and count > 0"));
        }
        Ok(Binning::Square { lo, hi, count })
    }

    pub fn len(&self) -> usize {
        match self {
            Binning::Linear { count, .. } => *count,
            Binning::Radial { edges } => edges.len() - 1,
            Binning::Square { count, .. } => count * count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(lo: f64, hi: f64, count: usize, x: f64) -> Option<usize> {
        if !(x >= lo && x < hi) {
            return None;
        }
        Some((((x - lo) / (hi - lo)) * count as f64).floor().min((count - 1) as f64) as usize)
    }

    pub fn index(&self, z: C64) -> Option<usize> {
        match self {
            Binning::Linear { lo, hi, count } => Self::cell(*lo, *hi, *count, z.re),
            Binning::Radial { edges } => {
                let r = z.norm();
                if r < edges[0] || r >= *edges.last().unwrap() {
                    return None;
                }
                Some(edges.partition_point(|&e| e <= r) - 1)
            }
            Binning::Square { lo, hi, count } => {
                let ix = Self::cell(*lo, *hi, *count, z.re)?;
                let iy = Self::cell(*lo, *hi, *count, z.im)?;
                Some(ix * count + iy)
            }
        }
    }

    /// Length (real bins) or area (complex bins) of bin `k`.
    pub fn measure(&self, k: usize) -> f64 {
        match self {
            Binning::Linear { lo, hi, count } => (hi - lo) / *count as f64,
            Binning::Radial { edges } => PI * (edges[k + 1].powi(2) - edges[k].powi(2)),
            Binning::Square { lo, hi, count } => ((hi - lo) / *count as f64).powi(2),
        }
    }

    /// Representative coordinate of bin `k`: midpoint, mid-radius, or cell
    /// centre.
    pub fn center(&self, k: usize) -> C64 {
        match self {
            Binning::Linear { lo, hi, count } => {
                C64::new(lo + (k as f64 + 0.5) * (hi - lo) / *count as f64, 0.0)
            }
            Binning::Radial { edges } => C64::new(0.5 * (edges[k] + edges[k + 1]), 0.0),
            Binning::Square { lo, hi, count } => {
                let h = (hi - lo) / *count as f64;
                C64::new(lo + ((k / count) as f64 + 0.5) * h, lo + ((k % count) as f64 + 0.5) * h)
            }
        }
    }

    /// Inner and outer radius (or interval ends) of bin `k`, where that is
    /// meaningful.
    pub fn bounds(&self, k: usize) -> (f64, f64) {
        match self {
            Binning::Linear { lo, hi, count } => {
                let h = (hi - lo) / *count as f64;
                (lo + k as f64 * h, lo + (k + 1) as f64 * h)
            }
            Binning::Radial { edges } => (edges[k], edges[k + 1]),
            Binning::Square { .. } => {
                let c = self.center(k);
                (c.re, c.im)
            }
        }
    }
}

/// Binned density estimate with per-bin jackknife errors over samples.
#[derive(Clone, Debug)]
pub struct SpectralHistogram {
    pub binning: Binning,
    /// Total weight per bin.
    pub counts: Vec<f64>,
    /// Weight inside the binned domain.
    pub total: f64,
    /// Weight that fell outside every bin.
    pub outside: f64,
    /// Normalized so that `Σ density·measure = 1`.
    pub density: Vec<f64>,
    pub se: Vec<f64>,
    pub samples: usize,
}

impl SpectralHistogram {
    pub fn integral(&self) -> f64 {
        let parts: Vec<f64> = (0..self.binning.len()).map(|k| self.density[k] * self.binning.measure(k)).collect();
        pairwise_sum(&parts)
    }

    /// `Σ |ρ_k - f(c_k)|·measure_k` against a reference density.
    pub fn l1_distance(&self, reference: impl Fn(C64) -> f64) -> f64 {
        let parts: Vec<f64> = (0..self.binning.len())
            .map(|k| (self.density[k] - reference(self.binning.center(k))).abs() * self.binning.measure(k))
            .collect();
        pairwise_sum(&parts)
    }
}

/// Per-sample weighted bin sums: `out[s][k] = Σ_{p in sample s, p in bin k} w_p`.
pub(crate) fn per_sample_bins(
    binning: &Binning,
    points: &[Vec<C64>],
    weights: Option<&[Vec<f64>]>,
) -> (Vec<Vec<f64>>, f64) {
    let mut outside = 0.0;
    let rows = points
        .iter()
        .enumerate()
        .map(|(s, pts)| {
            let mut row = vec![0.0; binning.len()];
            for (i, z) in pts.iter().enumerate() {
                let w = weights.map_or(1.0, |ws| ws[s][i]);
                match binning.index(*z) {
                    Some(k) => row[k] += w,
                    None => outside += w,
                }
            }
            row
        })
        .collect();
    (rows, outside)
}

/// Bin-wise mean of `rows[s][k]·scale[k]` over samples with jackknife
/// errors.
pub(crate) fn bin_means(rows: &[Vec<f64>], scale: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let bins = scale.len();
    let mut means = Vec::with_capacity(bins);
    let mut ses = Vec::with_capacity(bins);
    for k in 0..bins {
        let col: Vec<f64> = rows.iter().map(|r| r[k] * scale[k]).collect();
        let e = jackknife_mean(&col);
        means.push(e.value);
        ses.push(e.se);
    }
    (means, ses)
}

/// Normalized histogram of the points of every sample.
pub fn histogram(binning: &Binning, points: &[Vec<C64>]) -> Result<SpectralHistogram> {
    if points.is_empty() {
        return Err(contract("histogram of an empty batch"));
    }
    let (rows, outside) = per_sample_bins(binning, points, None);
    let counts: Vec<f64> = (0..binning.len()).map(|k| pairwise_sum(&rows.iter().map(|r| r[k]).collect::<Vec<_>>())).collect();
    let total = pairwise_sum(&counts);
    let per_sample_total = total / points.len() as f64;
    let scale: Vec<f64> = (0..binning.len())
        .map(|k| if total > 0.0 { 1.0 / (per_sample_total * binning.measure(k)) } else { 0.0 })
        .collect();
    let (density, se) = bin_means(&rows, &scale);
    Ok(SpectralHistogram { binning: binning.clone(), counts, total, outside, density, se, samples: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_area_bins_have_equal_area() {
        let b = Binning::equal_area(0.0, 0.8, 8).unwrap();
        for k in 0..8 {
            assert!((b.measure(k) - PI * 0.64 / 8.0).abs() < 1e-14);
        }
        assert_eq!(b.index(C64::new(0.0, 0.0)), Some(0));
        assert_eq!(b.index(C64::new(0.0, 0.79)), Some(7));
        assert_eq!(b.index(C64::new(0.8, 0.0)), None);
    }

    #[test]
    fn histogram_integrates_to_one() {
        let pts: Vec<Vec<C64>> = (0..10)
            .map(|s| (0..37).map(|i| C64::new(((s * 37 + i) as f64 * 0.618).fract() * 2.0 - 1.0, 0.0)).collect())
            .collect();
        let h = histogram(&Binning::linear(-1.0, 1.0, 13).unwrap(), &pts).unwrap();
        assert!((h.integral() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn delta_histogram() {
        let pts = vec![vec![C64::new(1.0, 0.0); 4]; 3];
        let b = Binning::linear(0.0, 2.0, 4).unwrap();
        let h = histogram(&b, &pts).unwrap();
        assert_eq!(h.density[2], 1.0 / 0.5);
        assert!(h.density.iter().enumerate().all(|(k, d)| k == 2 || *d == 0.0));
    }

    #[test]
    fn square_bins_cover_the_plane_patch() {
        let b = Binning::square(-1.0, 1.0, 4).unwrap();
        assert_eq!(b.len(), 16);
        let k = b.index(C64::new(0.1, -0.9)).unwrap();
        let c = b.center(k);
        assert!((c - C64::new(0.25, -0.75)).norm() < 1e-15);
    }
}
