//! Matrix-level Ornstein-Uhlenbeck processes.
//!
//! Both ensembles relax as `<δM_ij> = -a M_ij δτ`. Hermitian matrices get
//! diagonal noise of variance `δτ/N` and off-diagonal real and imaginary
//! parts of variance `δτ/(2N)` each. Ginibre entries get `δτ/(2N)` on every
//! real coordinate. These match the Fokker-Planck coefficients `1/(2N)`
//! (hermitian diagonal) and `1/(4N)` (every other real coordinate).
//!
//! The Euler-Maruyama steppers are for trajectories. The exact transition
//! samplers draw from the Gaussian source solution directly.

use rand::Rng;

use crate::error::{contract, Error, Result};
use crate::rng::gaussian;
use crate::types::{ou_variance, GinibreMatrix, HermitianMatrix, OUParams, SquareComplexMatrix, C64};

#[derive(Clone, Debug)]
pub struct DiffusionState<M> {
    pub matrix: M,
    pub tau: f64,
    pub params: OUParams,
}

impl<M> DiffusionState<M> {
    pub fn new(matrix: M, params: OUParams) -> Self {
        Self { matrix, tau: 0.0, params }
    }
}

fn check_step(params: &OUParams) -> Result<()> {
    params.validate()?;
    if params.dt * params.a >= 1.0 {
        return Err(Error::Config(format!(
            "explicit drift is unstable: dt*a = {} >= 1",
            params.dt * params.a
        )));
    }
    Ok(())
}

/// Draws a hermitian matrix with `x_ii ~ N(0, 1/N)` and off-diagonal
/// `x_ij, y_ij ~ N(0, 1/(2N))`, i.e. `<|W_ij|²> = 1/N`.
pub fn standard_gue<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let mut w = HermitianMatrix::zeros(n);
    fill_gue_noise(&mut w, 1.0 / n as f64, rng);
    w
}

/// Draws a complex Ginibre matrix with `<|W_ij|²> = 1/N`.
pub fn standard_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GinibreMatrix {
    let s = (0.5 / n as f64).sqrt();
    GinibreMatrix::new(SquareComplexMatrix::from_fn(n, |_, _| C64::new(s * gaussian(rng), s * gaussian(rng))))
        .expect("gaussian entries are finite")
}

// Adds noise with diagonal variance `var` and off-diagonal real/imag
// variance `var/2`; upper triangle sampled row by row, lower mirrored.
fn fill_gue_noise<R: Rng + ?Sized>(h: &mut HermitianMatrix, var: f64, rng: &mut R) {
    let n = h.n();
    let sd_diag = var.sqrt();
    let sd_off = (0.5 * var).sqrt();
    for i in 0..n {
        for j in i..n {
            let cur = h.matrix()[(i, j)];
            let noise = if i == j {
                C64::new(sd_diag * gaussian(rng), 0.0)
            } else {
                C64::new(sd_off * gaussian(rng), sd_off * gaussian(rng))
            };
            h.set_pair(i, j, cur + noise);
        }
    }
}

/// One Euler-Maruyama step of the hermitian OU process.
pub fn step_gue<R: Rng + ?Sized>(
    state: &DiffusionState<HermitianMatrix>,
    rng: &mut R,
) -> Result<DiffusionState<HermitianMatrix>> {
    step_gue_scaled(state, 1.0, rng)
}

/// As [`step_gue`] with the noise amplitude multiplied by `noise_scale`.
pub fn step_gue_scaled<R: Rng + ?Sized>(
    state: &DiffusionState<HermitianMatrix>,
    noise_scale: f64,
    rng: &mut R,
) -> Result<DiffusionState<HermitianMatrix>> {
    let p = &state.params;
    check_step(p)?;
    if state.matrix.n() != p.n {
        return Err(contract("matrix dimension differs from params.n"));
    }
    let n = p.n;
    let shrink = 1.0 - p.a * p.dt;
    let mut next = state.matrix.clone();
    let var = noise_scale * noise_scale * p.dt / n as f64;
    let sd_diag = var.sqrt();
    let sd_off = (0.5 * var).sqrt();
    for i in 0..n {
        for j in i..n {
            let cur = state.matrix.matrix()[(i, j)];
            let noise = if i == j {
                C64::new(sd_diag * gaussian(rng), 0.0)
            } else {
                C64::new(sd_off * gaussian(rng), sd_off * gaussian(rng))
            };
            next.set_pair(i, j, cur * shrink + noise);
        }
    }
    Ok(DiffusionState { matrix: next, tau: state.tau + p.dt, params: *p })
}

/// One Euler-Maruyama step of the Ginibre OU process.
pub fn step_ginibre<R: Rng + ?Sized>(
    state: &DiffusionState<GinibreMatrix>,
    rng: &mut R,
) -> Result<DiffusionState<GinibreMatrix>> {
    step_ginibre_scaled(state, 1.0, rng)
}

pub fn step_ginibre_scaled<R: Rng + ?Sized>(
    state: &DiffusionState<GinibreMatrix>,
    noise_scale: f64,
    rng: &mut R,
) -> Result<DiffusionState<GinibreMatrix>> {
    let p = &state.params;
    check_step(p)?;
    if state.matrix.n() != p.n {
        return Err(contract("matrix dimension differs from params.n"));
    }
    let shrink = 1.0 - p.a * p.dt;
    let sd = noise_scale * (0.5 * p.dt / p.n as f64).sqrt();
    let mut next = state.matrix.clone();
    for x in next.matrix_mut().as_mut_slice() {
        let noise = C64::new(sd * gaussian(rng), sd * gaussian(rng));
        *x = *x * shrink + noise;
    }
    Ok(DiffusionState { matrix: next, tau: state.tau + p.dt, params: *p })
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(contract(format!("tau must be finite and >= 0, got {tau}")));
    }
    Ok(())
}

/// Exact draw of `H(τ)` given `H(0) = h0`:
/// `H = h0·e^{-aτ} + σ·W` with `σ² = (1 - e^{-2aτ})/(2a)` (`τ` when `a = 0`).
pub fn sample_gue_transition<R: Rng + ?Sized>(
    h0: &HermitianMatrix,
    tau: f64,
    params: &OUParams,
    rng: &mut R,
) -> Result<HermitianMatrix> {
    check_tau(tau)?;
    params.validate()?;
    if h0.n() != params.n {
        return Err(contract("initial matrix dimension differs from params.n"));
    }
    let decay = (-params.a * tau).exp();
    let var = ou_variance(params.a, tau);
    let mut h = HermitianMatrix::hermitian_part(&h0.matrix().scale_real(decay));
    if var > 0.0 {
        fill_gue_noise(&mut h, var / params.n as f64, rng);
    }
    Ok(h)
}

/// Exact draw of `X(τ)` given `X(0) = x0`.
pub fn sample_ginibre_transition<R: Rng + ?Sized>(
    x0: &GinibreMatrix,
    tau: f64,
    params: &OUParams,
    rng: &mut R,
) -> Result<GinibreMatrix> {
    check_tau(tau)?;
    params.validate()?;
    if x0.n() != params.n {
        return Err(contract("initial matrix dimension differs from params.n"));
    }
    let decay = (-params.a * tau).exp();
    let var = ou_variance(params.a, tau);
    let mut x = x0.matrix().scale_real(decay);
    if var > 0.0 {
        let sd = (0.5 * var / params.n as f64).sqrt();
        for e in x.as_mut_slice() {
            *e += C64::new(sd * gaussian(rng), sd * gaussian(rng));
        }
    }
    GinibreMatrix::new(x)
}
