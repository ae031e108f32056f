//! Finite-difference residuals of the exact determinant equations and of
//! the stationary Burgers equation.

use crate::error::{Error, Result};
use crate::types::C64;

use super::laws::{green_with_constant, wigner_green};

const TINY: f64 = 1e-30;

/// `|∂_τU + (1/2N)∂_zzU - az∂_zU + aNU| / |U|` by fourth-order central
/// differences. `eval(z, τ)` must be holomorphic in `z`; `τ` must exceed
/// `2·h_tau`.
pub fn pde_residual_acp(
    eval: impl Fn(C64, f64) -> Result<C64>,
    z: C64,
    tau: f64,
    a: f64,
    n: usize,
    h_z: f64,
    h_tau: f64,
) -> Result<f64> {
    let nf = n as f64;
    let u = eval(z, tau)?;
    if u.norm() < TINY {
        return Err(Error::UndefinedResidual(u.norm()));
    }
    let along = |k: f64| eval(z + k * h_z, tau);
    let (dz, dzz) = stencil(u, [along(-2.0)?, along(-1.0)?, along(1.0)?, along(2.0)?], h_z);
    let dt = time_derivative(|t| eval(z, t), tau, h_tau)?;
    Ok((dt + dzz / (2.0 * nf) - a * z * dz + a * nf * u).norm() / u.norm())
}

// First and second derivatives from f(0) and f(-2h), f(-h), f(h), f(2h).
fn stencil(f0: C64, f: [C64; 4], h: f64) -> (C64, C64) {
    let [m2, m1, p1, p2] = f;
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * f0 + 16.0 * p1 - p2) / (12.0 * h * h);
    (d1, d2)
}

fn time_derivative(f: impl Fn(f64) -> Result<C64>, tau: f64, h: f64) -> Result<C64> {
    Ok((f(tau - 2.0 * h)? - 8.0 * f(tau - h)? + 8.0 * f(tau + h)? - f(tau + 2.0 * h)?) / (12.0 * h))
}

/// Residual of `∂_τD = (1/N)∂_ww̄D - 2NaD + a(z∂_z + z̄∂_z̄ + w∂_w + w̄∂_w̄)D`
/// divided by `|D|`. Derivatives are Cartesian differences in the real and
/// imaginary parts of `z` and `w` (fourth order, as for
/// [`pde_residual_acp`]); `∂_ww̄` is a quarter of the Laplacian.
#[allow(clippy::too_many_arguments)]
pub fn pde_residual_qdet(
    eval: impl Fn(C64, C64, f64) -> Result<C64>,
    z: C64,
    w: C64,
    tau: f64,
    a: f64,
    n: usize,
    h: f64,
    h_tau: f64,
) -> Result<f64> {
    let nf = n as f64;
    let d = eval(z, w, tau)?;
    if d.norm() < TINY {
        return Err(Error::UndefinedResidual(d.norm()));
    }
    let f = |dz: C64, dw: C64| eval(z + dz, w + dw, tau);
    let zero = C64::new(0.0, 0.0);
    let line = |dir: C64, on_w: bool| -> Result<[C64; 4]> {
        let g = |k: f64| if on_w { f(zero, dir * (k * h)) } else { f(dir * (k * h), zero) };
        Ok([g(-2.0)?, g(-1.0)?, g(1.0)?, g(2.0)?])
    };
    let re = C64::new(1.0, 0.0);
    let im = C64::new(0.0, 1.0);
    let (zx, _) = stencil(d, line(re, false)?, h);
    let (zy, _) = stencil(d, line(im, false)?, h);
    let (wu, wuu) = stencil(d, line(re, true)?, h);
    let (wv, wvv) = stencil(d, line(im, true)?, h);

    let euler = z.re * zx + z.im * zy + w.re * wu + w.im * wv;
    let lap_w = wuu + wvv;
    let dt = time_derivative(|t| eval(z, w, t), tau, h_tau)?;
    Ok((dt - lap_w / (4.0 * nf) + 2.0 * nf * a * d - a * euler).norm() / d.norm())
}

/// Stationary Burgers residuals at `z`: the algebraic one
/// `|½G² - azG + a|` and the differential one `|G∂_zG - a∂_z(zG)|` with a
/// central difference of step `h`.
pub fn stationary_burgers_residual(z: C64, a: f64, h: f64) -> Result<(f64, f64)> {
    stationary_burgers_residual_with_constant(z, a, a, h)
}

/// As [`stationary_burgers_residual`] for the root of `½G² - azG + c = 0`;
/// only `c = a` satisfies the physical equation.
pub fn stationary_burgers_residual_with_constant(z: C64, a: f64, c: f64, h: f64) -> Result<(f64, f64)> {
    let g = |z: C64| if c == a { wigner_green(z, a) } else { green_with_constant(z, a, c) };
    let gz = g(z)?;
    let algebraic = (0.5 * gz * gz - a * z * gz + a).norm();
    let dg = (g(z + h)? - g(z - h)?) / (2.0 * h);
    let differential = (gz * dg - a * (gz + z * dg)).norm();
    Ok((algebraic, differential))
}
