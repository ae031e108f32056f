//! Pivoted LU for small dense complex systems, with determinants kept as
//! log-magnitude plus unit phase so that products of many pivots neither
//! overflow nor underflow.

use crate::error::{Error, Result};
use crate::types::{SquareComplexMatrix, C64};

/// Determinant `exp(log_abs) * phase`, or exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet {
    pub log_abs: f64,
    pub phase: C64,
    pub is_zero: bool,
}

impl LogDet {
    pub fn value(&self) -> Result<C64> {
        if self.is_zero {
            return Ok(C64::new(0.0, 0.0));
        }
        if self.log_abs > f64::MAX.ln() {
            return Err(Error::NotRepresentable { log_abs: self.log_abs });
        }
        Ok(self.phase * self.log_abs.exp())
    }
}

pub struct Lu {
    n: usize,
    lu: Vec<C64>,
    perm: Vec<usize>,
    swaps: usize,
    min_pivot: f64,
    scale: f64,
}

impl Lu {
    pub fn new(m: &SquareComplexMatrix) -> Self {
        let n = m.n();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let mut min_pivot = f64::INFINITY;
        let scale = lu.iter().map(|x| x.norm()).fold(0.0, f64::max);

        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(pmax);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            if pivot.norm() == 0.0 {
                continue;
            }
            let inv = pivot.inv();
            for i in k + 1..n {
                let f = lu[i * n + k] * inv;
                lu[i * n + k] = f;
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Self { n, lu, perm, swaps, min_pivot, scale }
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    /// Smallest pivot relative to the largest input entry.
    pub fn relative_min_pivot(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.min_pivot / self.scale
        }
    }

    pub fn log_det(&self) -> LogDet {
        let n = self.n;
        let mut log_abs = 0.0;
        let mut phase = if self.swaps.is_multiple_of(2) { C64::new(1.0, 0.0) } else { C64::new(-1.0, 0.0) };
        for k in 0..n {
            let d = self.lu[k * n + k];
            let r = d.norm();
            if r == 0.0 {
                return LogDet { log_abs: f64::NEG_INFINITY, phase: C64::new(0.0, 0.0), is_zero: true };
            }
            log_abs += r.ln();
            phase *= d / r;
            // renormalize to stop the unit phase drifting in magnitude
            phase /= phase.norm();
        }
        LogDet { log_abs, phase, is_zero: false }
    }

    /// Determinant as a plain product of pivots when that cannot overflow or
    /// underflow, otherwise via [`Lu::log_det`].
    pub fn det(&self) -> Result<C64> {
        let ld = self.log_det();
        if ld.is_zero {
            return Ok(C64::new(0.0, 0.0));
        }
        if ld.log_abs.abs() < 600.0 {
            let n = self.n;
            let mut d = if self.swaps.is_multiple_of(2) { C64::new(1.0, 0.0) } else { C64::new(-1.0, 0.0) };
            for k in 0..n {
                d *= self.lu[k * n + k];
            }
            return Ok(d);
        }
        ld.value()
    }

    fn check_regular(&self, tol: f64) -> Result<()> {
        if !(self.relative_min_pivot() > tol) {
            return Err(Error::Singular { pivot: self.min_pivot });
        }
        Ok(())
    }

    /// Solves `A x = b` in place. Fails when the relative pivot drops below
    /// `tol`.
    pub fn solve_in_place(&self, b: &mut [C64], tol: f64) -> Result<()> {
        self.check_regular(tol)?;
        let n = self.n;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        b.copy_from_slice(&x);
        Ok(())
    }

    pub fn inverse(&self, tol: f64) -> Result<SquareComplexMatrix> {
        self.check_regular(tol)?;
        let n = self.n;
        let mut inv = SquareComplexMatrix::zeros(n);
        let mut col = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            col.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
            col[j] = C64::new(1.0, 0.0);
            self.solve_in_place(&mut col, tol)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }
}

/// Default relative pivot threshold for solves and inverses.
pub const SINGULAR_TOL: f64 = 1e-13;

pub fn log_det(m: &SquareComplexMatrix) -> LogDet {
    Lu::new(m).log_det()
}

pub fn det(m: &SquareComplexMatrix) -> Result<C64> {
    Lu::new(m).det()
}

pub fn inverse(m: &SquareComplexMatrix) -> Result<SquareComplexMatrix> {
    Lu::new(m).inverse(SINGULAR_TOL)
}
