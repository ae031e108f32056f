//! Eigen-decomposition with bi-orthonormal left/right eigenvectors and the
//! diagonal and off-diagonal overlaps `O_ij = <L_i|L_j><R_j|R_i>`.
//!
//! Right eigenvectors come from the backend solver; left eigenvectors are
//! the rows of the inverse of the right-eigenvector matrix, which makes
//! `<L_i|R_j> = δ_ij` hold up to linear-solve error.

use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::{Lu, SINGULAR_TOL};
use crate::types::{HermitianMatrix, SquareComplexMatrix, C64};

/// Bi-orthonormal eigen-system. Column `i` of `right` is `|R_i>`, row `i` of
/// `left` is `<L_i|`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<C64>,
    pub right: SquareComplexMatrix,
    pub left: SquareComplexMatrix,
}

impl EigenSystem {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn right_vector(&self, i: usize) -> Vec<C64> {
        self.right.column(i)
    }

    /// Components of the row vector `<L_i|`.
    pub fn left_vector(&self, i: usize) -> Vec<C64> {
        self.left.row(i).to_vec()
    }

    /// `max_ij |<L_i|R_j> - δ_ij|`.
    pub fn biorthogonality_residual(&self) -> f64 {
        let prod = self.left.matmul(&self.right);
        prod.max_abs_diff(&SquareComplexMatrix::identity(self.n()))
    }

    /// `Σ_i z_i |R_i><L_i|`.
    pub fn reconstruct(&self) -> SquareComplexMatrix {
        let n = self.n();
        let scaled = SquareComplexMatrix::from_fn(n, |i, j| self.right[(i, j)] * self.values[j]);
        scaled.matmul(&self.left)
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}

/// Overlap matrix `O_ij = <L_i|L_j><R_j|R_i>`.
#[derive(Clone, Debug)]
pub struct OverlapMatrix {
    pub o: SquareComplexMatrix,
}

impl OverlapMatrix {
    pub fn n(&self) -> usize {
        self.o.n()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.o[(i, i)].re).collect()
    }

    pub fn row_sums(&self) -> Vec<C64> {
        (0..self.n()).map(|i| self.o.row(i).iter().sum()).collect()
    }
}

fn to_faer(m: &SquareComplexMatrix) -> Mat<faer::c64> {
    Mat::from_fn(m.n(), m.n(), |i, j| m[(i, j)])
}

/// Real eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    to_faer(h.matrix())
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::Decomposition { reason: format!("{e:?}"), condition: f64::NAN })
}

/// Eigenvalues only, in backend order.
pub fn eigenvalues(m: &SquareComplexMatrix) -> Result<Vec<C64>> {
    if !m.is_finite() {
        return Err(Error::Decomposition { reason: "non-finite input".into(), condition: f64::INFINITY });
    }
    to_faer(m)
        .eigenvalues()
        .map_err(|e| Error::Decomposition { reason: format!("{e:?}"), condition: f64::NAN })
}

pub fn eigen_decompose_hermitian(h: &HermitianMatrix) -> Result<EigenSystem> {
    let n = h.n();
    let evd = to_faer(h.matrix())
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Decomposition { reason: format!("{e:?}"), condition: f64::NAN })?;
    let u = evd.U();
    let s = evd.S();
    let values = (0..n).map(|i| C64::new(s[i].re, 0.0)).collect();
    let right = SquareComplexMatrix::from_fn(n, |i, j| u[(i, j)]);
    let left = right.adjoint();
    Ok(EigenSystem { values, right, left })
}

/// General (non-normal) eigen-decomposition. Exactly hermitian input is
/// routed to the self-adjoint solver so left and right vectors coincide.
pub fn eigen_decompose(m: &SquareComplexMatrix) -> Result<EigenSystem> {
    if !m.is_finite() {
        return Err(Error::Decomposition { reason: "non-finite input".into(), condition: f64::INFINITY });
    }
    if m.is_hermitian() {
        return eigen_decompose_hermitian(&HermitianMatrix::new(m.clone())?);
    }
    let n = m.n();
    let evd = to_faer(m)
        .eigen()
        .map_err(|e| Error::Decomposition { reason: format!("{e:?}"), condition: f64::NAN })?;
    let u = evd.U();
    let s = evd.S();
    let values: Vec<C64> = (0..n).map(|i| s[i]).collect();
    let right = SquareComplexMatrix::from_fn(n, |i, j| u[(i, j)]);

    let lu = Lu::new(&right);
    let condition = 1.0 / lu.relative_min_pivot();
    let left = lu.inverse(SINGULAR_TOL).map_err(|_| Error::Decomposition {
        reason: "eigenvector matrix is singular (defective input)".into(),
        condition,
    })?;
    if !left.is_finite() {
        return Err(Error::Decomposition { reason: "non-finite left eigenvectors".into(), condition });
    }
    let sys = EigenSystem { values, right, left };
    let resid = sys.biorthogonality_residual();
    if resid > 1e-6 {
        return Err(Error::Decomposition {
            reason: format!("bi-orthogonality residual {resid:e}"),
            condition,
        });
    }
    Ok(sys)
}

pub fn overlaps(system: &EigenSystem) -> OverlapMatrix {
    let n = system.n();
    // <L_i|L_j> = Σ_k L[i,k] conj(L[j,k]);  <R_j|R_i> = Σ_k conj(R[k,j]) R[k,i]
    let ll = SquareComplexMatrix::from_fn(n, |i, j| {
        system.left.row(i).iter().zip(system.left.row(j)).map(|(a, b)| a * b.conj()).sum()
    });
    let rr = system.right.adjoint().matmul(&system.right);
    OverlapMatrix { o: SquareComplexMatrix::from_fn(n, |i, j| ll[(i, j)] * rr[(j, i)]) }
}

/// Diagonal overlaps `O_ii = <L_i|L_i><R_i|R_i>` without forming the full
/// matrix.
pub fn diagonal_overlaps(system: &EigenSystem) -> Vec<f64> {
    let n = system.n();
    (0..n)
        .map(|i| {
            let l: f64 = system.left.row(i).iter().map(|x| x.norm_sqr()).sum();
            let r: f64 = (0..n).map(|k| system.right[(k, i)].norm_sqr()).sum();
            l * r
        })
        .collect()
}
