//! Coherent states in a truncated Fock (number) basis.
//!
//! A coherent state with complex amplitude `alpha = x + i p` has number-basis
//! amplitudes `<n|alpha> = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!)`. Everything
//! here is built from that expansion: amplitude vectors, density matrices of
//! weighted coherent mixtures, and the difference matrix whose spectrum feeds
//! the error-probability calculation.
//!
//! Factorials are never formed explicitly; amplitudes follow the recurrence
//! `a[n+1] = a[n] * alpha / sqrt(n+1)`, which stays in range far beyond the
//! point where `n!` overflows.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

/// Default number of retained Fock states.
pub const DEFAULT_DIM: usize = 50;

/// [`suggest_dim`] never proposes less than this.
pub const MIN_SUGGESTED_DIM: usize = DEFAULT_DIM;

/// Absolute tolerance on the ensemble weight sum.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A point `(x, p)` in quadrature phase space identifying one coherent state.
///
/// `x` displaces the amplitude quadrature, `p` the phase quadrature; the
/// state's complex amplitude is `alpha = x + i p`. Both coordinates are
/// dimensionless and validated finite at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement<T> {
    x: T,
    p: T,
}

impl<T: Scalar> Displacement<T> {
    pub fn new(x: T, p: T) -> Result<Self> {
        if !x.is_finite() || !p.is_finite() {
            return Err(Error::NonFiniteDisplacement {
                x: x.as_f64(),
                p: p.as_f64(),
            });
        }
        Ok(Self { x, p })
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// Complex amplitude `alpha = x + i p`.
    pub fn alpha(&self) -> Complex<T> {
        Complex::new(self.x, self.p)
    }

    /// `|alpha|^2 = x^2 + p^2`, the mean photon number.
    pub fn norm_sqr(&self) -> T {
        self.x * self.x + self.p * self.p
    }

    /// Squared phase-space distance to another displacement.
    pub fn distance_sqr(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dp = self.p - other.p;
        dx * dx + dp * dp
    }
}

/// Weighted list of displacements: the universal representation of both pure
/// states (one component, weight 1) and mixed states.
///
/// Weights are strictly positive and sum to 1 within [`WEIGHT_SUM_TOL`];
/// zero-weight components must be removed by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentEnsemble<T> {
    components: Vec<(T, Displacement<T>)>,
}

impl<T: Scalar> CoherentEnsemble<T> {
    pub fn new(components: Vec<(T, Displacement<T>)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        for (index, (weight, _)) in components.iter().enumerate() {
            if !weight.is_finite() || *weight <= T::zero() {
                return Err(Error::NonPositiveWeight {
                    index,
                    weight: weight.as_f64(),
                });
            }
        }
        let sum: T = components.iter().map(|(w, _)| *w).sum();
        if (sum - T::one()).abs() > T::from_f64_lossy(WEIGHT_SUM_TOL) {
            return Err(Error::WeightSumNotOne {
                sum: sum.as_f64(),
                tol: WEIGHT_SUM_TOL,
            });
        }
        Ok(Self { components })
    }

    /// Single pure coherent state.
    pub fn pure(d: Displacement<T>) -> Self {
        Self {
            components: vec![(T::one(), d)],
        }
    }

    /// Equally weighted two-component mixture.
    pub fn balanced_pair(a: Displacement<T>, b: Displacement<T>) -> Self {
        let half = T::from_f64_lossy(0.5);
        Self {
            components: vec![(half, a), (half, b)],
        }
    }

    pub fn components(&self) -> &[(T, Displacement<T>)] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Truncated coherent-state amplitude vector.
///
/// `norm_deficit` is `1 - sum |amplitude|^2`, the weight lost to truncation;
/// it is clamped at zero when rounding pushes the sum a hair past one.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T> {
    amplitudes: Vec<Complex<T>>,
    norm_deficit: T,
}

impl<T: Scalar> FockVector<T> {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_deficit(&self) -> T {
        self.norm_deficit
    }

    /// Inner product `<self|other>` of two truncated vectors.
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
    }
}

/// Expands a coherent state over the first `dim` Fock states.
///
/// `amplitude[n] = exp(-(x^2+p^2)/2) (x+ip)^n / sqrt(n!)`, computed by the
/// stable recurrence `amplitude[n+1] = amplitude[n] * alpha / sqrt(n+1)`.
pub fn coherent_fock_vector<T: Scalar>(d: Displacement<T>, dim: usize) -> Result<FockVector<T>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mu = d.norm_sqr();
    let vacuum = (-mu * T::from_f64_lossy(0.5)).exp();
    if vacuum == T::zero() {
        return Err(Error::DisplacementTooLarge {
            norm_sqr: mu.as_f64(),
        });
    }
    let alpha = d.alpha();
    let mut amplitudes = Vec::with_capacity(dim);
    let mut a = Complex::new(vacuum, T::zero());
    amplitudes.push(a);
    for n in 1..dim {
        a = (a * alpha).unscale(T::from_count(n).sqrt());
        amplitudes.push(a);
    }
    let captured: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    let norm_deficit = (T::one() - captured).max(T::zero());
    Ok(FockVector {
        amplitudes,
        norm_deficit,
    })
}

/// Exact overlap `<alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta)`.
///
/// Its squared magnitude is `exp(-|alpha - beta|^2)`: coherent states only
/// approach orthogonality as they separate in phase space.
pub fn overlap<T: Scalar>(a: Displacement<T>, b: Displacement<T>) -> Complex<T> {
    let half = T::from_f64_lossy(0.5);
    let shift = -(a.norm_sqr() * half) - (b.norm_sqr() * half);
    let z = Complex::new(shift, T::zero()) + a.alpha().conj() * b.alpha();
    z.exp()
}

/// Density matrix `sum_j w_j |alpha_j><alpha_j|` in the truncated basis.
///
/// The trace equals `sum_j w_j (1 - norm_deficit_j)`, at most 1; the deficit
/// measures how much of the state the truncation dropped.
pub fn ensemble_density_matrix<T: Scalar>(
    ensemble: &CoherentEnsemble<T>,
    dim: usize,
) -> Result<HermitianMatrix<T>> {
    let mut rho = HermitianMatrix::zeros(dim)?;
    for (weight, d) in ensemble.components() {
        let v = coherent_fock_vector(*d, dim)?;
        rho.add_scaled_outer(*weight, v.amplitudes());
    }
    Ok(rho)
}

/// Difference matrix `rho_0 - rho_1` whose eigenvalues give the trace norm.
pub fn difference_matrix<T: Scalar>(
    e0: &CoherentEnsemble<T>,
    e1: &CoherentEnsemble<T>,
    dim: usize,
) -> Result<HermitianMatrix<T>> {
    let rho0 = ensemble_density_matrix(e0, dim)?;
    let rho1 = ensemble_density_matrix(e1, dim)?;
    rho0.sub(&rho1)
}

/// Smallest truncation dimension keeping every component's norm deficit below
/// `tail_tol`, floored at [`MIN_SUGGESTED_DIM`].
///
/// The floor matches the default expansion depth of 50 number states; large
/// displacements raise the suggestion above it.
pub fn suggest_dim<T: Scalar>(ensembles: &[&CoherentEnsemble<T>], tail_tol: T) -> Result<usize> {
    if !(tail_tol > T::zero() && tail_tol < T::one()) {
        return Err(Error::TailToleranceOutOfRange {
            tol: tail_tol.as_f64(),
        });
    }
    let mut needed = MIN_SUGGESTED_DIM;
    for ensemble in ensembles {
        for (_, d) in ensemble.components() {
            needed = needed.max(dim_for_deficit(*d, tail_tol)?);
        }
    }
    Ok(needed)
}

/// Smallest dim with `1 - sum_{n<dim} |a_n|^2 < tail_tol` for one component.
fn dim_for_deficit<T: Scalar>(d: Displacement<T>, tail_tol: T) -> Result<usize> {
    let mu = d.norm_sqr();
    let mag_alpha = mu.sqrt();
    let mut a = (-mu * T::from_f64_lossy(0.5)).exp();
    if a == T::zero() {
        return Err(Error::DisplacementTooLarge {
            norm_sqr: mu.as_f64(),
        });
    }
    let mut captured = T::zero();
    let mut n = 0usize;
    loop {
        captured += a * a;
        n += 1;
        let deficit = T::one() - captured;
        if deficit < tail_tol {
            return Ok(n);
        }
        a = a * mag_alpha / T::from_count(n).sqrt();
        if a == T::zero() {
            // Amplitudes underflowed before the target was met; the deficit
            // cannot improve past this floor.
            return Err(Error::TailToleranceUnreachable {
                tol: tail_tol.as_f64(),
                floor: deficit.as_f64(),
            });
        }
    }
}
