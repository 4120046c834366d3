//! Dense complex Hermitian matrices in the truncated Fock basis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Absolute elementwise tolerance for the conjugate-symmetry invariant.
pub const HERMITICITY_TOL: f64 = 1e-14;

/// Dense square matrix of complex entries, Hermitian by construction.
///
/// Stores the full `dim x dim` matrix row-major. Every constructor and
/// mutator either validates or preserves `a[j][k] == conj(a[k][j])`, so
/// downstream consumers (the eigensolver in particular) may rely on a real
/// spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> HermitianMatrix<T> {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        })
    }

    /// Builds a matrix from row-major entries, validating the Hermitian
    /// invariant within [`HERMITICITY_TOL`] elementwise.
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCountMismatch {
                dim,
                len: entries.len(),
            });
        }
        let m = Self { dim, entries };
        m.check_hermitian()?;
        Ok(m)
    }

    /// Builds a matrix without validating conjugate symmetry.
    ///
    /// The caller is responsible for the invariant; the eigensolver
    /// re-validates and rejects violations.
    pub fn from_entries_unchecked(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCountMismatch {
                dim,
                len: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Sets `a[row][col] = value` and `a[col][row] = conj(value)`.
    ///
    /// Diagonal writes keep only the real part, so the invariant holds for
    /// any input.
    pub fn set_conjugate_pair(&mut self, row: usize, col: usize, value: Complex<T>) {
        if row == col {
            self.entries[row * self.dim + col] = Complex::new(value.re, T::zero());
        } else {
            self.entries[row * self.dim + col] = value;
            self.entries[col * self.dim + row] = value.conj();
        }
    }

    /// Accumulates `weight * v v^dagger` into the matrix.
    ///
    /// `entry[r][c] += weight * v[r] * conj(v[c])`; conjugate symmetry is
    /// preserved exactly because IEEE products commute.
    pub fn add_scaled_outer(&mut self, weight: T, v: &[Complex<T>]) {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dim");
        for r in 0..self.dim {
            let vr = v[r].scale(weight);
            let row = &mut self.entries[r * self.dim..(r + 1) * self.dim];
            for (slot, vc) in row.iter_mut().zip(v.iter()) {
                *slot += vr * vc.conj();
            }
        }
    }

    /// Entrywise difference; both operands must share a dimension.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Entrywise scaling by a real factor.
    pub fn scale(&self, factor: T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.scale(factor)).collect(),
        }
    }

    /// Sum of diagonal entries (real by the invariant).
    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    /// Squared Frobenius norm, `sum |a_ij|^2`.
    pub fn frobenius_norm_sqr(&self) -> T {
        self.entries.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest elementwise deviation from conjugate symmetry.
    pub fn max_conjugate_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in r..self.dim {
                let dev = (self.get(r, c) - self.get(c, r).conj()).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    pub(crate) fn check_hermitian(&self) -> Result<()> {
        let tol = T::from_f64_lossy(HERMITICITY_TOL);
        for r in 0..self.dim {
            for c in r..self.dim {
                let dev = (self.get(r, c) - self.get(c, r).conj()).norm();
                if dev > tol {
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation: dev.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }
}
