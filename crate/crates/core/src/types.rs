//! Shared numeric and ensemble types.
//!
//! Matrices are dense, row-major and square. Hermitian and Ginibre matrices
//! are thin wrappers around [`SquareComplexMatrix`] that expose the real
//! entry decomposition `X_ij = x_ij + i y_ij` used by the diffusion
//! operators.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{contract, Result};

pub type C64 = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SquareComplexMatrix {
    n: usize,
    data: Vec<C64>,
}

impl SquareComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(n: usize, data: Vec<C64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(contract(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `z·1 - self`.
    pub fn shifted_negative(&self, z: C64) -> Self {
        Self::from_fn(self.n, |i, j| if i == j { z - self[(i, j)] } else { -self[(i, j)] })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i..n).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }
}

impl Index<(usize, usize)> for SquareComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// A matrix with `H = H†` held exactly: `x_ij = x_ji`, `y_ij = -y_ji`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(SquareComplexMatrix);

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self(SquareComplexMatrix::zeros(n))
    }

    /// Wraps `m`, which must already be exactly hermitian.
    pub fn new(m: SquareComplexMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(contract("matrix is not exactly hermitian"));
        }
        Ok(Self(m))
    }

    /// `(M + M†)/2`, with the upper triangle computed once and mirrored.
    pub fn hermitian_part(m: &SquareComplexMatrix) -> Self {
        let n = m.n();
        let mut h = SquareComplexMatrix::zeros(n);
        for i in 0..n {
            h[(i, i)] = C64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                h[(i, j)] = v;
                h[(j, i)] = v.conj();
            }
        }
        Self(h)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(SquareComplexMatrix::from_real_diagonal(diag))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// Real part of entry `(i, j)`; symmetric.
    pub fn x(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)].re
    }

    /// Imaginary part of entry `(i, j)`; antisymmetric.
    pub fn y(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)].im
    }

    pub fn matrix(&self) -> &SquareComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SquareComplexMatrix {
        self.0
    }

    /// Writes `value` at `(i, j)` and its conjugate at `(j, i)`.
    pub(crate) fn set_pair(&mut self, i: usize, j: usize, value: C64) {
        if i == j {
            self.0[(i, i)] = C64::new(value.re, 0.0);
        } else {
            self.0[(i, j)] = value;
            self.0[(j, i)] = value.conj();
        }
    }
}

/// A complex matrix with independent entries and no symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct GinibreMatrix(SquareComplexMatrix);

impl GinibreMatrix {
    pub fn zeros(n: usize) -> Self {
        Self(SquareComplexMatrix::zeros(n))
    }

    pub fn new(m: SquareComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(contract("matrix has non-finite entries"));
        }
        Ok(Self(m))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn x(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)].re
    }

    pub fn y(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)].im
    }

    pub fn matrix(&self) -> &SquareComplexMatrix {
        &self.0
    }

    pub fn matrix_mut(&mut self) -> &mut SquareComplexMatrix {
        &mut self.0
    }

    pub fn into_matrix(self) -> SquareComplexMatrix {
        self.0
    }
}

/// A 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        let m = &self.0;
        Some(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

/// The pair `(z, w)` probing the generalized resolvent, embedded as
/// `Q = [[z, -w̄], [w, z̄]]`. Identifying `|w|² = ε²` recovers the usual
/// regulated hermitization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuaternionArgument {
    pub z: C64,
    pub w: C64,
}

impl QuaternionArgument {
    pub fn new(z: C64, w: C64) -> Self {
        Self { z, w }
    }

    /// Builds `Q = q0 + i σ_j q_j`, i.e. `z = q0 + i q3`, `w = -q2 + i q1`.
    pub fn from_components(q: [f64; 4]) -> Self {
        Self { z: C64::new(q[0], q[3]), w: C64::new(-q[2], q[1]) }
    }

    pub fn components(&self) -> [f64; 4] {
        [self.z.re, self.w.im, -self.w.re, self.z.im]
    }

    pub fn embed(&self) -> Mat2 {
        quaternion_embed(self)
    }
}

pub fn quaternion_embed(q: &QuaternionArgument) -> Mat2 {
    Mat2([[q.z, -q.w.conj()], [q.w, q.z.conj()]])
}

/// `bTr`: maps a `2n x 2n` matrix to the 2x2 matrix of traces of its
/// `n x n` blocks.
pub fn block_trace(m: &SquareComplexMatrix, n: usize) -> Result<Mat2> {
    if n == 0 || m.n() != 2 * n {
        return Err(contract(format!(
            "block_trace expects a {}x{} matrix, got {}x{}",
            2 * n,
            2 * n,
            m.n(),
            m.n()
        )));
    }
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (bi, row) in out.iter_mut().enumerate() {
        for (bj, cell) in row.iter_mut().enumerate() {
            *cell = (0..n).map(|k| m[(bi * n + k, bj * n + k)]).sum();
        }
    }
    Ok(Mat2(out))
}

/// `[[z - X, -w̄], [w, z̄ - X†]]` for the quaternion probe `q`.
pub fn quaternionic_block(x: &SquareComplexMatrix, q: &QuaternionArgument) -> SquareComplexMatrix {
    let n = x.n();
    let mut m = SquareComplexMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = -x[(i, j)];
            m[(n + i, n + j)] = -x[(j, i)].conj();
        }
        m[(i, i)] += q.z;
        m[(n + i, n + i)] += q.z.conj();
        m[(i, n + i)] = -q.w.conj();
        m[(n + i, i)] = q.w;
    }
    m
}

/// Parameters shared by the matrix and eigenvalue Ornstein-Uhlenbeck
/// processes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OUParams {
    /// Harmonic confinement strength; `0` is free diffusion.
    pub a: f64,
    /// Matrix dimension.
    pub n: usize,
    /// Integrator step.
    pub dt: f64,
    /// Root of all RNG streams.
    pub seed: u64,
}

impl OUParams {
    pub fn new(a: f64, n: usize, dt: f64, seed: u64) -> Result<Self> {
        let p = Self { a, n, dt, seed };
        p.validate()?;
        Ok(p)
    }

    /// Default trajectory step: `1e-4/a`, or `1e-4` for free diffusion.
    pub fn default_dt(a: f64) -> f64 {
        if a > 0.0 {
            1e-4 / a
        } else {
            1e-4
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0 && self.a.is_finite()) {
            return Err(contract(format!("a must be finite and >= 0, got {}", self.a)));
        }
        if self.n == 0 {
            return Err(contract("n must be positive"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(contract(format!("dt must be > 0, got {}", self.dt)));
        }
        Ok(())
    }

    /// Variance accumulated by a unit-rate OU coordinate over `tau`:
    /// `(1 - e^{-2 a tau}) / (2a)`, and `tau` itself when `a = 0`.
    pub fn transition_variance(&self, tau: f64) -> f64 {
        ou_variance(self.a, tau)
    }
}

pub(crate) fn ou_variance(a: f64, tau: f64) -> f64 {
    if a == 0.0 {
        tau
    } else {
        -(-2.0 * a * tau).exp_m1() / (2.0 * a)
    }
}

/// Samples drawn at a common elapsed time from a common initial matrix.
#[derive(Clone, Debug)]
pub struct EnsembleBatch<M> {
    pub params: OUParams,
    pub tau: f64,
    pub initial: M,
    pub samples: Vec<M>,
}

impl<M> EnsembleBatch<M> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}
