//! Eigenvalues of complex Hermitian matrices via cyclic Jacobi rotations.
//!
//! Each rotation phases one off-diagonal pivot to a real value and then
//! annihilates it with a plane rotation, sweeping pivots in a fixed
//! row-major order until the off-diagonal Frobenius norm drops below the
//! requested tolerance. The fixed order makes results reproducible
//! bit-for-bit. Eigenvectors are never accumulated; only the spectrum is
//! needed here.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

/// Default off-diagonal Frobenius-norm tolerance.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;

/// Sweep budget before the solver reports non-convergence.
pub const MAX_SWEEPS: usize = 100;

/// Full real spectrum of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
    off_diag_residual: T,
}

impl<T: Scalar> Spectrum<T> {
    /// Eigenvalues sorted ascending; length equals the input dimension.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Off-diagonal Frobenius norm at convergence.
    pub fn off_diag_residual(&self) -> T {
        self.off_diag_residual
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sum of eigenvalues (the matrix trace, up to rounding).
    pub fn sum(&self) -> T {
        self.eigenvalues.iter().copied().sum()
    }

    /// Sum of absolute eigenvalues (the trace norm).
    pub fn abs_sum(&self) -> T {
        self.eigenvalues.iter().map(|v| v.abs()).sum()
    }

    pub fn min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> T {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }
}

/// Computes all eigenvalues of a Hermitian matrix.
///
/// Iterates similarity transforms until the off-diagonal Frobenius norm is
/// below `tol`, or fails with the residual attached after [`MAX_SWEEPS`]
/// full sweeps. Rejects non-Hermitian input and non-positive tolerances.
pub fn eigenvalues_hermitian<T: Scalar>(m: &HermitianMatrix<T>, tol: T) -> Result<Spectrum<T>> {
    eigenvalues_hermitian_bounded(m, tol, MAX_SWEEPS)
}

/// [`eigenvalues_hermitian`] with an explicit sweep budget.
pub fn eigenvalues_hermitian_bounded<T: Scalar>(
    m: &HermitianMatrix<T>,
    tol: T,
    max_sweeps: usize,
) -> Result<Spectrum<T>> {
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::NonPositiveTolerance { tol: tol.as_f64() });
    }
    m.check_hermitian()?;

    let n = m.dim();
    let mut a: Vec<Complex<T>> = m.entries().to_vec();

    let mut sweeps = 0usize;
    let mut off = off_diagonal_norm(&a, n);
    while off >= tol {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off.as_f64(),
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a, n);
    }

    let mut eigenvalues: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(Spectrum {
        eigenvalues,
        off_diag_residual: off,
    })
}

/// Trace norm `Tr|M| = sum |lambda_j|`.
///
/// Non-negative, and zero only for the zero matrix (within `tol`).
pub fn trace_norm<T: Scalar>(m: &HermitianMatrix<T>, tol: T) -> Result<T> {
    Ok(eigenvalues_hermitian(m, tol)?.abs_sum())
}

fn off_diagonal_norm<T: Scalar>(a: &[Complex<T>], n: usize) -> T {
    let mut sum = T::zero();
    for r in 0..n {
        for c in (r + 1)..n {
            sum += a[r * n + c].norm_sqr();
        }
    }
    (sum + sum).sqrt()
}

/// Annihilates the pivot `a[p][q]` with a unitary plane rotation.
///
/// The pivot is first phased real (`e^{-i arg} a[p][q] = r`), then the
/// classical symmetric Jacobi rotation with `tau = (a_qq - a_pp) / 2r` is
/// applied. Diagonal updates run in real arithmetic so the diagonal stays
/// exactly real.
fn rotate<T: Scalar>(a: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == T::zero() {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let one = T::one();

    let tau = (aqq - app) / (r + r);
    let hyp = one.hypot(tau);
    let t = if tau >= T::zero() {
        one / (tau + hyp)
    } else {
        one / (tau - hyp)
    };
    let c = one / one.hypot(t);
    let s = t * c;
    // e^{-i arg(apq)}; multiplying the q column by this makes the pivot real.
    let phase = apq.conj().unscale(r);

    a[p * n + p] = Complex::new(app - t * r, T::zero());
    a[q * n + q] = Complex::new(aqq + t * r, T::zero());
    a[p * n + q] = Complex::new(T::zero(), T::zero());
    a[q * n + p] = Complex::new(T::zero(), T::zero());

    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = a[i * n + p];
        let aiq = phase * a[i * n + q];
        let new_ip = aip.scale(c) - aiq.scale(s);
        let new_iq = aip.scale(s) + aiq.scale(c);
        a[i * n + p] = new_ip;
        a[p * n + i] = new_ip.conj();
        a[i * n + q] = new_iq;
        a[q * n + i] = new_iq.conj();
    }
}
