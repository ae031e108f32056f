//! Exact solutions of the determinant diffusion equations.
//!
//! The OU drift is removed by the Lamperti change of variables, after which
//! both averaged determinants obey free heat equations. On polynomials the
//! heat operators are nilpotent, so their exponentials are finite sums.

use crate::eigen::hermitian_eigenvalues;
use crate::error::{contract, Result};
use crate::types::{GinibreMatrix, HermitianMatrix, QuaternionArgument, C64};

/// `Σ_k c_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialInZ {
    pub coeffs: Vec<C64>,
}

impl PolynomialInZ {
    /// `Π (z - r_i)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect() }
    }
}

/// `Σ_k d_k s^k` with `s = |w|²`, at a fixed probe `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialPolynomial {
    pub z: C64,
    pub coeffs: Vec<C64>,
}

impl RadialPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, s: f64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * s + c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LampertiVariant {
    Hermitian,
    Ginibre,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LampertiImage {
    pub z_prime: C64,
    pub tau_prime: f64,
    pub prefactor: f64,
}

/// `τ' = (e^{2aτ} - 1)/(2a)`, continuous at `a = 0`.
pub fn lamperti_time(tau: f64, a: f64) -> f64 {
    if a == 0.0 {
        tau
    } else {
        (2.0 * a * tau).exp_m1() / (2.0 * a)
    }
}

/// `z' = e^{aτ}z`, `τ'`, and the prefactor `(1 + 2aτ')^{-N/2}` (hermitian)
/// or `(1 + 2aτ')^{-N}` (Ginibre).
pub fn lamperti_map(z: C64, tau: f64, a: f64, n: usize, variant: LampertiVariant) -> Result<LampertiImage> {
    if !(a >= 0.0) {
        return Err(contract(format!("lamperti_map needs a >= 0, got {a}")));
    }
    let tau_prime = lamperti_time(tau, a);
    let exponent = match variant {
        LampertiVariant::Hermitian => -(n as f64) / 2.0,
        LampertiVariant::Ginibre => -(n as f64),
    };
    Ok(LampertiImage { z_prime: z * (a * tau).exp(), tau_prime, prefactor: (1.0 + 2.0 * a * tau_prime).powf(exponent) })
}

/// `exp(-(τ'/2N) d²/dz²) p0`.
pub fn heat_evolve_acp(p0: &PolynomialInZ, tau_prime: f64, n: usize) -> PolynomialInZ {
    heat_evolve_acp_signed(p0, tau_prime, n, 1.0)
}

fn heat_evolve_acp_signed(p0: &PolynomialInZ, tau_prime: f64, n: usize, viscosity: f64) -> PolynomialInZ {
    let c = &p0.coeffs;
    let deg = p0.degree();
    let x = -viscosity * tau_prime / (2.0 * n as f64);
    let coeffs = (0..=deg)
        .map(|j| {
            let mut acc = C64::new(0.0, 0.0);
            // term m: x^m/m! · (j+2m)!/j!
            let mut weight = 1.0;
            let mut m = 0;
            while j + 2 * m <= deg {
                acc += c[j + 2 * m] * weight;
                m += 1;
                let k = (j + 2 * m) as f64;
                weight *= x / m as f64 * k * (k - 1.0);
            }
            acc
        })
        .collect();
    PolynomialInZ { coeffs }
}

/// `exp((τ'/N) L) d0` with `L s^k = k² s^{k-1}`, the radial form of
/// `∂_w ∂_w̄`.
pub fn heat_evolve_qdet(d0: &RadialPolynomial, tau_prime: f64, n: usize) -> RadialPolynomial {
    heat_evolve_qdet_signed(d0, tau_prime, n, 1.0)
}

fn heat_evolve_qdet_signed(d0: &RadialPolynomial, tau_prime: f64, n: usize, viscosity: f64) -> RadialPolynomial {
    let d = &d0.coeffs;
    let deg = d0.degree();
    let x = viscosity * tau_prime / n as f64;
    let coeffs = (0..=deg)
        .map(|j| {
            let mut acc = C64::new(0.0, 0.0);
            // term m: x^m/m! · ((j+m)!/j!)²
            let mut weight = 1.0;
            for m in 0..=(deg - j) {
                if m > 0 {
                    let k = (j + m) as f64;
                    weight *= x / m as f64 * k * k;
                }
                acc += d[j + m] * weight;
            }
            acc
        })
        .collect();
    RadialPolynomial { z: d0.z, coeffs }
}

/// Characteristic polynomial `det(z - H0)`.
pub fn characteristic_polynomial(h0: &HermitianMatrix) -> Result<PolynomialInZ> {
    let ev = hermitian_eigenvalues(h0)?;
    Ok(PolynomialInZ::from_roots(&ev.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>()))
}

/// `det[(z - X0)(z - X0)† + s]` as a polynomial in `s`: the elementary
/// symmetric functions of the eigenvalues `μ_i ≥ 0` of `(z - X0)(z - X0)†`.
pub fn radial_polynomial(x0: &GinibreMatrix, z: C64) -> Result<RadialPolynomial> {
    let a = x0.matrix().shifted_negative(z);
    let aa = HermitianMatrix::hermitian_part(&a.matmul(&a.adjoint()));
    let mu = hermitian_eigenvalues(&aa)?;
    // Π (s + μ_i) = Π (s - (-μ_i))
    let neg: Vec<C64> = mu.iter().map(|&m| C64::new(-m.max(0.0), 0.0)).collect();
    Ok(RadialPolynomial { z, coeffs: PolynomialInZ::from_roots(&neg).coeffs })
}

/// `U(z, τ) = <det(z - H(τ))>` for `H(0) = h0`, exact for every N.
pub fn acp_from_initial(h0: &HermitianMatrix, z: C64, tau: f64, a: f64, n: usize) -> Result<C64> {
    acp_from_initial_with_viscosity(h0, z, tau, a, n, 1.0)
}

/// As [`acp_from_initial`] with the diffusion term scaled by `viscosity`;
/// `-1.0` gives a deliberately wrong solution for negative controls.
pub fn acp_from_initial_with_viscosity(
    h0: &HermitianMatrix,
    z: C64,
    tau: f64,
    a: f64,
    n: usize,
    viscosity: f64,
) -> Result<C64> {
    if h0.n() != n {
        return Err(contract("initial matrix dimension differs from n"));
    }
    let p0 = characteristic_polynomial(h0)?;
    let img = lamperti_map(z, tau, a, n, LampertiVariant::Hermitian)?;
    let p = heat_evolve_acp_signed(&p0, img.tau_prime, n, viscosity);
    Ok(p.eval(img.z_prime) * img.prefactor)
}

/// `D(z, w, τ) = <det(Q - 𝒳(τ))>` for `X(0) = x0`, exact for every N.
pub fn qdet_from_initial(x0: &GinibreMatrix, q: &QuaternionArgument, tau: f64, a: f64, n: usize) -> Result<C64> {
    qdet_from_initial_with_viscosity(x0, q, tau, a, n, 1.0)
}

pub fn qdet_from_initial_with_viscosity(
    x0: &GinibreMatrix,
    q: &QuaternionArgument,
    tau: f64,
    a: f64,
    n: usize,
    viscosity: f64,
) -> Result<C64> {
    if x0.n() != n {
        return Err(contract("initial matrix dimension differs from n"));
    }
    let img = lamperti_map(q.z, tau, a, n, LampertiVariant::Ginibre)?;
    let d0 = radial_polynomial(x0, img.z_prime)?;
    let d = heat_evolve_qdet_signed(&d0, img.tau_prime, n, viscosity);
    let s = q.w.norm_sqr() * (2.0 * a * tau).exp();
    Ok(d.eval(s) * img.prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::SquareComplexMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn acp_two_term_series() {
        let cst = c(0.7, 0.0);
        let p0 = PolynomialInZ { coeffs: vec![-cst, c(0.0, 0.0), c(1.0, 0.0)] };
        let tp = 0.9;
        let p = heat_evolve_acp(&p0, tp, 2);
        assert!((p.coeffs[0] - (-cst - tp / 2.0)).norm() < 1e-15);
        assert_eq!(p.coeffs[1], c(0.0, 0.0));
        assert_eq!(p.coeffs[2], c(1.0, 0.0));
        assert_eq!(heat_evolve_acp(&p0, 0.0, 2), p0);
    }

    #[test]
    fn qdet_series_examples() {
        let cst = c(0.4, 0.0);
        let d0 = RadialPolynomial { z: c(0.0, 0.0), coeffs: vec![cst, c(1.0, 0.0)] };
        let d = heat_evolve_qdet(&d0, 0.3, 1);
        assert!((d.coeffs[0] - (cst + 0.3)).norm() < 1e-15);

        let (alpha, beta, t) = (0.6, 0.2, 0.45);
        let d0 = RadialPolynomial { z: c(0.0, 0.0), coeffs: vec![c(beta, 0.0), c(alpha, 0.0), c(1.0, 0.0)] };
        let d = heat_evolve_qdet(&d0, t, 2);
        assert!((d.coeffs[2] - 1.0).norm() < 1e-15);
        assert!((d.coeffs[1] - (alpha + 2.0 * t)).norm() < 1e-15);
        assert!((d.coeffs[0] - (beta + alpha * t / 2.0 + t * t / 2.0)).norm() < 1e-15);
        assert_eq!(heat_evolve_qdet(&d0, 0.0, 2), d0);
    }

    #[test]
    fn lamperti_examples() {
        let z = c(0.3, -0.2);
        let img = lamperti_map(z, 0.0, 0.5, 4, LampertiVariant::Hermitian).unwrap();
        assert_eq!(img, LampertiImage { z_prime: z, tau_prime: 0.0, prefactor: 1.0 });
        let img = lamperti_map(z, 2f64.ln(), 0.5, 4, LampertiVariant::Hermitian).unwrap();
        assert!((img.z_prime - z * 2f64.sqrt()).norm() < 1e-15);
        assert!((img.tau_prime - 1.0).abs() < 1e-15);
        assert!((img.prefactor - 0.25).abs() < 1e-15);
        let g = lamperti_map(z, 2f64.ln(), 0.5, 4, LampertiVariant::Ginibre).unwrap();
        assert!((g.prefactor - 1.0 / 16.0).abs() < 1e-15);
        let small = lamperti_map(z, 0.8, 1e-8, 4, LampertiVariant::Hermitian).unwrap();
        assert!((small.tau_prime / 0.8 - 1.0).abs() < 1e-7);
    }

    #[test]
    fn acp_from_initial_examples() {
        let h0 = HermitianMatrix::from_real_diagonal(&[0.5, -0.2, 1.0]);
        let z = c(0.3, 0.4);
        let direct = (z - 0.5) * (z + 0.2) * (z - 1.0);
        assert!((acp_from_initial(&h0, z, 0.0, 0.5, 3).unwrap() - direct).norm() < 1e-14);
        let zero = HermitianMatrix::zeros(2);
        assert!((acp_from_initial(&zero, c(0.0, 0.0), 1.0, 0.0, 2).unwrap() + 0.5).norm() < 1e-15);
    }

    #[test]
    fn qdet_from_initial_examples() {
        let x0 = GinibreMatrix::new(SquareComplexMatrix::from_fn(2, |i, j| c(0.1 * (i + 2 * j) as f64, 0.3 - i as f64 * 0.2)))
            .unwrap();
        let q = QuaternionArgument::new(c(0.2, -0.5), c(0.3, 0.1));
        let direct = crate::linalg::det(&crate::types::quaternionic_block(x0.matrix(), &q)).unwrap();
        assert!((qdet_from_initial(&x0, &q, 0.0, 0.5, 2).unwrap() - direct).norm() < 1e-12);

        let zero = GinibreMatrix::zeros(1);
        let tau = 0.37;
        let v = qdet_from_initial(&zero, &q, tau, 0.0, 1).unwrap();
        assert!((v - (q.w.norm_sqr() + q.z.norm_sqr() + tau)).norm() < 1e-14);
    }

    #[test]
    fn radial_polynomial_is_monic_and_non_negative() {
        let x0 = GinibreMatrix::new(SquareComplexMatrix::from_fn(3, |i, j| c((i * j) as f64 * 0.2, j as f64 * 0.1))).unwrap();
        let d = radial_polynomial(&x0, c(0.4, 0.1)).unwrap();
        assert_eq!(d.degree(), 3);
        assert!((d.coeffs[3] - 1.0).norm() < 1e-15);
        assert!(d.coeffs.iter().all(|c| c.re >= -1e-14 && c.im.abs() < 1e-14));
    }

    #[test]
    fn from_roots_and_eval() {
        let p = PolynomialInZ::from_roots(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(p.coeffs, vec![c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.eval(c(2.0, 0.0)), c(4.0, 0.0));
        assert_eq!(p.derivative().coeffs, vec![c(1.0, 0.0), c(2.0, 0.0)]);
    }
}
