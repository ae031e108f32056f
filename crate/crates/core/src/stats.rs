//! Small statistics toolkit: deterministic summation, jackknife errors,
//! two-sample Kolmogorov-Smirnov, Pearson correlation.

use crate::types::C64;

/// Pairwise (cascade) summation. The result depends only on the order of
/// `xs`, never on thread scheduling.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_sum_complex(xs: &[C64]) -> C64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Mean with leave-one-out jackknife standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEstimate {
    pub value: C64,
    /// Jackknife error of the complex mean, `sqrt(E|θ_i - θ̄|²·(n-1))`.
    pub se: f64,
    pub count: usize,
    pub skipped: usize,
}

impl ComplexEstimate {
    /// `|value - target|` in units of `se`.
    pub fn deviation(&self, target: C64) -> f64 {
        (self.value - target).norm() / self.se
    }
}

pub fn jackknife_mean(xs: &[f64]) -> Estimate {
    let n = xs.len();
    let total = pairwise_sum(xs);
    let value = total / n as f64;
    if n < 2 {
        return Estimate { value, se: f64::NAN, count: n };
    }
    let loo: Vec<f64> = xs.iter().map(|x| ((total - x) / (n - 1) as f64 - value).powi(2)).collect();
    let se = (pairwise_sum(&loo) * (n - 1) as f64 / n as f64).sqrt();
    Estimate { value, se, count: n }
}

pub fn jackknife_mean_complex(xs: &[C64]) -> ComplexEstimate {
    let n = xs.len();
    let total = pairwise_sum_complex(xs);
    let value = total / n as f64;
    if n < 2 {
        return ComplexEstimate { value, se: f64::NAN, count: n, skipped: 0 };
    }
    let loo: Vec<f64> = xs.iter().map(|x| ((total - x) / (n - 1) as f64 - value).norm_sqr()).collect();
    let se = (pairwise_sum(&loo) * (n - 1) as f64 / n as f64).sqrt();
    ComplexEstimate { value, se, count: n, skipped: 0 }
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < na && j < nb {
        let x = a[i].min(b[j]);
        while i < na && a[i] <= x {
            i += 1;
        }
        while j < nb && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let ne = (na * nb) as f64 / (na + nb) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    (d, kolmogorov_q(lambda))
}

// Q_KS(λ) = 2 Σ (-1)^{k-1} exp(-2k²λ²)
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let term = sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let mx = mean(x);
    let my = mean(y);
    let sxy: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect();
    let sxx: Vec<f64> = x.iter().map(|a| (a - mx).powi(2)).collect();
    let syy: Vec<f64> = y.iter().map(|b| (b - my).powi(2)).collect();
    pairwise_sum(&sxy) / (pairwise_sum(&sxx) * pairwise_sum(&syy)).sqrt()
}
