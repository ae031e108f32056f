//! Closed-form large-N laws and the Ginibre edge profile.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use crate::error::{contract, Result};
use crate::types::C64;

fn upper_side(z: C64) -> C64 {
    // z = x + i0⁺ on the real axis, including a signed -0.0
    if z.im == 0.0 {
        C64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Stationary hermitian Green's function `G = a(z - √(z² - 2/a))`, with the
/// square root split as `√(z - r)·√(z + r)` so that `G ~ 1/z` everywhere off
/// the cut `[-r, r]`, `r = √(2/a)`.
pub fn wigner_green(z: C64, a: f64) -> Result<C64> {
    if !(a > 0.0) {
        return Err(contract(format!("wigner_green needs a > 0, got {a}")));
    }
    let z = upper_side(z);
    let r = (2.0 / a).sqrt();
    Ok(a * (z - (z - r).sqrt() * (z + r).sqrt()))
}

/// Root of `½G² - azG + c = 0` on the same branch as [`wigner_green`];
/// `c = a` gives the physical solution.
pub fn green_with_constant(z: C64, a: f64, c: f64) -> Result<C64> {
    if !(a > 0.0) {
        return Err(contract(format!("a must be > 0, got {a}")));
    }
    let z = upper_side(z);
    let r = (2.0 * c).sqrt() / a;
    Ok(a * (z - (z - r).sqrt() * (z + r).sqrt()))
}

/// `(a/π)√(2/a - x²)` on `|x| ≤ √(2/a)`, zero outside.
pub fn wigner_density(x: f64, a: f64) -> f64 {
    let r2 = 2.0 / a;
    if x * x >= r2 {
        0.0
    } else {
        a * FRAC_1_PI * (r2 - x * x).sqrt()
    }
}

/// Stationary Ginibre `(density, overlap)`: `(2a/π)θ(1/(2a) - |z|²)` and
/// `(4a²/π)(1/(2a) - |z|²)` inside the closed disc, zero outside.
pub fn ginibre_macroscopic(z: C64, a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(contract(format!("a must be > 0, got {a}")));
    }
    let r2 = 1.0 / (2.0 * a);
    let m = z.norm_sqr();
    if m > r2 {
        return Ok((0.0, 0.0));
    }
    Ok((2.0 * a * FRAC_1_PI, 4.0 * a * a * FRAC_1_PI * (r2 - m)))
}

/// Free Ginibre laws in primed variables: `(1/(πτ))θ(τ - |z|²)` and
/// `(1/(πτ²))(τ - |z|²)`.
pub fn free_ginibre_laws(z: C64, tau: f64) -> Result<(f64, f64)> {
    if !(tau > 0.0) {
        return Err(contract(format!("tau must be > 0, got {tau}")));
    }
    let m = z.norm_sqr();
    if m > tau {
        return Ok((0.0, 0.0));
    }
    Ok((FRAC_1_PI / tau, FRAC_1_PI * (tau - m) / (tau * tau)))
}

/// Edge profile `(1/2π) Erfc(√2 η)`.
pub fn erfc_edge(eta: f64) -> f64 {
    libm::erfc(SQRT_2 * eta) / (2.0 * PI)
}

/// Area-weighted average of [`erfc_edge`] over the annulus
/// `1 + η/√N` for `η ∈ [eta0, eta1]`, i.e. what a flat radial bin measures.
pub fn erfc_edge_bin_average(eta0: f64, eta1: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let steps = 400;
    let h = (eta1 - eta0) / steps as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..=steps {
        let w = if k == 0 || k == steps { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        let eta = eta0 + k as f64 * h;
        let r = 1.0 + eta / sn;
        num += w * erfc_edge(eta) * r;
        den += w * r;
    }
    num / den
}

/// Exact mean density of the stationary Ginibre ensemble at a = 1/2 and
/// finite N: `(1/π) Q(N, N|z|²)`, `Q` the regularized upper incomplete
/// gamma function.
pub fn ginibre_finite_n_density(z: C64, n: usize) -> f64 {
    let x = n as f64 * z.norm_sqr();
    // e^{-x} Σ_{k<N} x^k/k!, summed in log space
    let mut log_term = -x;
    let mut sum = 0.0;
    let mut max_log = f64::NEG_INFINITY;
    let mut logs = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            log_term += x.ln() - (k as f64).ln();
        }
        if x == 0.0 {
            logs.push(if k == 0 { 0.0 } else { f64::NEG_INFINITY });
        } else {
            logs.push(log_term);
        }
        max_log = max_log.max(*logs.last().unwrap());
    }
    for l in &logs {
        sum += (l - max_log).exp();
    }
    FRAC_1_PI * (max_log.exp() * sum).min(1.0)
}

/// Bin average of [`ginibre_finite_n_density`] over the same annulus as
/// [`erfc_edge_bin_average`].
pub fn ginibre_finite_n_bin_average(eta0: f64, eta1: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let steps = 400;
    let h = (eta1 - eta0) / steps as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..=steps {
        let w = if k == 0 || k == steps { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        let r = 1.0 + (eta0 + k as f64 * h) / sn;
        num += w * ginibre_finite_n_density(C64::new(r, 0.0), n) * r;
        den += w * r;
    }
    num / den
}

/// Large-N prediction for `-(1/π)𝒢_11̄𝒢_1̄1` at finite regulator `|w|`, for a
/// Ginibre ensemble with entry variance `v/N`.
///
/// The quaternionic self-consistency reduces to one real unknown
/// `t = |w| + vβ` solving `(t - |w|)(|z|² + t²) = v t`; the physical root is
/// the largest one, and the answer is `β²/π` with `β = t/(|z|² + t²)`.
pub fn regulated_overlap_density(z: C64, w_abs: f64, v: f64) -> f64 {
    let t = regulated_root(z.norm_sqr(), w_abs, v);
    let beta = t / (z.norm_sqr() + t * t);
    beta * beta * FRAC_1_PI
}

/// Matching `𝒢_11 = z̄/(|z|² + t²)`.
pub fn regulated_g11(z: C64, w_abs: f64, v: f64) -> C64 {
    let t = regulated_root(z.norm_sqr(), w_abs, v);
    z.conj() / (z.norm_sqr() + t * t)
}

fn regulated_root(m: f64, w: f64, v: f64) -> f64 {
    let f = |t: f64| (t - w) * (m + t * t) - v * t;
    let df = |t: f64| (m + t * t) + 2.0 * t * (t - w) - v;
    // Newton from the right of the largest root; the cubic is convex there
    let mut t = w + v.sqrt() + m.sqrt() + 1.0;
    while f(t) <= 0.0 {
        t *= 2.0;
    }
    for _ in 0..200 {
        let step = f(t) / df(t);
        t -= step;
        if step.abs() <= 1e-15 * t.max(1e-300) {
            break;
        }
    }
    t
}
