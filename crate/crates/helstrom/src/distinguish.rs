//! Minimum-error discrimination of coherent ensembles and the information
//! it yields.
//!
//! The probability of error for two equiprobable states is
//! `PE = 1/2 - 1/4 Tr|rho_0 - rho_1|`, taken over the spectrum of the
//! difference matrix in the truncated basis. Two independent routes check
//! the truncated computation: a closed form for pure pairs, and an exact
//! low-rank Gram-matrix reduction for small ensembles that needs no
//! truncation at all. The Shannon information of a binary symmetric channel
//! converts error rates into bits.

use num_complex::Complex;

use crate::eig::{eigenvalues_hermitian, DEFAULT_EIG_TOL};
use crate::error::{Error, Result};
use crate::fock::{coherent_fock_vector, difference_matrix, overlap, CoherentEnsemble, Displacement};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

/// Largest tolerated component norm deficit before a truncated PE is
/// rejected as unsound.
pub const MAX_NORM_DEFICIT: f64 = 0.01;

/// Component-count cap for the Gram oracle.
pub const MAX_GRAM_COMPONENTS: usize = 16;

/// Smallest Gram eigenvalue accepted before the oracle refuses to answer.
pub const GRAM_MIN_EIGENVALUE: f64 = 1e-10;

/// Slack inside which out-of-range error probabilities are clamped rather
/// than rejected.
pub const SHANNON_SLACK: f64 = 1e-12;

/// Outcome of one truncated discrimination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinguishabilityResult<T> {
    /// Helstrom probability of error, clamped to `[0, 1/2]`.
    pub pe: T,
    /// Raw `sum |lambda_j|` before clamping entered the PE.
    pub trace_distance_sum: T,
    /// Binary-symmetric-channel information at this error rate, in bits.
    pub shannon_bits: T,
    /// Fock truncation the spectrum was computed at.
    pub dim_used: usize,
    /// Worst component norm deficit across both ensembles.
    pub max_norm_deficit: T,
}

/// One cell of the pure-versus-mixed information-gain surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainRecord<T> {
    pub x: T,
    pub p: T,
    pub pe_pure: T,
    pub pe_mixed: T,
    pub i_pure: T,
    pub i_mixed: T,
    /// `i_pure - i_mixed`; never meaningfully negative.
    pub i_gain: T,
}

/// Truncated Helstrom probability of error between two ensembles.
///
/// Builds the difference matrix at `dim`, solves for its spectrum at `tol`,
/// and maps `1/2 - 1/4 sum|lambda|` through the channel information. Fails
/// if any component's norm deficit exceeds [`MAX_NORM_DEFICIT`], since the
/// truncation would no longer represent the states faithfully.
pub fn probability_of_error<T: Scalar>(
    e0: &CoherentEnsemble<T>,
    e1: &CoherentEnsemble<T>,
    dim: usize,
    tol: T,
) -> Result<DistinguishabilityResult<T>> {
    let mut max_norm_deficit = T::zero();
    for ensemble in [e0, e1] {
        for (_, d) in ensemble.components() {
            let deficit = coherent_fock_vector(*d, dim)?.norm_deficit();
            max_norm_deficit = max_norm_deficit.max(deficit);
        }
    }
    let limit = T::from_f64_lossy(MAX_NORM_DEFICIT);
    if max_norm_deficit > limit {
        return Err(Error::TruncationUnsound {
            dim,
            deficit: max_norm_deficit.as_f64(),
            limit: MAX_NORM_DEFICIT,
        });
    }

    let diff = difference_matrix(e0, e1, dim)?;
    let spectrum = eigenvalues_hermitian(&diff, tol)?;
    let trace_distance_sum = spectrum.abs_sum();

    let half = T::from_f64_lossy(0.5);
    let quarter = T::from_f64_lossy(0.25);
    let raw = half - quarter * trace_distance_sum;
    let pe = raw.max(T::zero()).min(half);
    let shannon_bits = shannon_information(pe)?;

    Ok(DistinguishabilityResult {
        pe,
        trace_distance_sum,
        shannon_bits,
        dim_used: dim,
        max_norm_deficit,
    })
}

/// Exact Helstrom PE for two equiprobable pure coherent states.
///
/// The trace norm of a difference of two unit-rank projectors is
/// `2 sqrt(1 - |<alpha|beta>|^2)`, so
/// `PE = (1 - sqrt(1 - exp(-|alpha-beta|^2))) / 2`.
pub fn pure_pe_analytic<T: Scalar>(a: Displacement<T>, b: Displacement<T>) -> T {
    let overlap_sqr = (-a.distance_sqr(&b)).exp();
    let half = T::from_f64_lossy(0.5);
    half * (T::one() - (T::one() - overlap_sqr).sqrt())
}

/// Exact PE from the Gram matrix of the component states; no truncation.
///
/// All components are collected with signed coefficients (`+w` for `e0`,
/// `-w` for `e1`); exact duplicates cancel, so identical ensembles yield
/// `1/2` outright. For the rest, the operator `rho_0 - rho_1` restricted to
/// the component span has the spectrum of `L^dagger C L`, with `G = L
/// L^dagger` the Cholesky factor of the Gram matrix and `C` the signed
/// coefficient diagonal; that matrix is Hermitian and small, so the
/// ordinary eigensolver finishes the job. Nearly coincident (but not
/// identical) components make `G` ill-conditioned and are reported as an
/// error rather than silently regularized.
pub fn gram_subspace_pe<T: Scalar>(
    e0: &CoherentEnsemble<T>,
    e1: &CoherentEnsemble<T>,
) -> Result<T> {
    let count = e0.len() + e1.len();
    if count > MAX_GRAM_COMPONENTS {
        return Err(Error::TooManyComponents {
            count,
            max: MAX_GRAM_COMPONENTS,
        });
    }

    let half = T::from_f64_lossy(0.5);
    let quarter = T::from_f64_lossy(0.25);

    // Signed coefficients, merging components at exactly equal displacements.
    let mut components: Vec<(T, Displacement<T>)> = Vec::with_capacity(count);
    let signed = e0
        .components()
        .iter()
        .map(|(w, d)| (*w, *d))
        .chain(e1.components().iter().map(|(w, d)| (-*w, *d)));
    for (coeff, d) in signed {
        match components.iter_mut().find(|(_, existing)| *existing == d) {
            Some((existing_coeff, _)) => *existing_coeff += coeff,
            None => components.push((coeff, d)),
        }
    }
    components.retain(|(coeff, _)| *coeff != T::zero());
    if components.is_empty() {
        return Ok(half);
    }

    let k = components.len();
    let mut gram = HermitianMatrix::zeros(k)?;
    for i in 0..k {
        for j in i..k {
            gram.set_conjugate_pair(i, j, overlap(components[i].1, components[j].1));
        }
    }

    let eig_tol = T::from_f64_lossy(DEFAULT_EIG_TOL);
    let gram_spectrum = eigenvalues_hermitian(&gram, eig_tol)?;
    let min_eigenvalue = gram_spectrum.min();
    if min_eigenvalue <= T::from_f64_lossy(GRAM_MIN_EIGENVALUE) {
        return Err(Error::GramIllConditioned {
            min_eigenvalue: min_eigenvalue.as_f64(),
            limit: GRAM_MIN_EIGENVALUE,
        });
    }

    let l = cholesky_lower(&gram)?;
    let mut reduced = HermitianMatrix::zeros(k)?;
    let mut row = vec![Complex::new(T::zero(), T::zero()); k];
    for (idx, (coeff, _)) in components.iter().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // conj(row) as the outer-product vector gives L^dagger C L.
            *slot = l[idx * k + j].conj();
        }
        reduced.add_scaled_outer(*coeff, &row);
    }

    let spectrum = eigenvalues_hermitian(&reduced, eig_tol)?;
    Ok(half - quarter * spectrum.abs_sum())
}

/// Lower-triangular Cholesky factor of a Hermitian positive-definite matrix.
fn cholesky_lower<T: Scalar>(m: &HermitianMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = m.dim();
    let zero = Complex::new(T::zero(), T::zero());
    let mut l = vec![zero; n * n];
    for j in 0..n {
        let mut diag = m.get(j, j).re;
        for col in 0..j {
            diag -= l[j * n + col].norm_sqr();
        }
        if diag.is_nan() || diag <= T::zero() {
            return Err(Error::GramIllConditioned {
                min_eigenvalue: diag.as_f64(),
                limit: 0.0,
            });
        }
        let pivot = diag.sqrt();
        l[j * n + j] = Complex::new(pivot, T::zero());
        for i in (j + 1)..n {
            let mut acc = m.get(i, j);
            for col in 0..j {
                acc -= l[i * n + col] * l[j * n + col].conj();
            }
            l[i * n + j] = acc.unscale(pivot);
        }
    }
    Ok(l)
}

/// Shannon information of a binary symmetric channel at error rate `pe`,
/// in bits: `1 + pe log2 pe + (1-pe) log2 (1-pe)` with `0 log2 0 = 0`.
///
/// Monotone decreasing on `[0, 1/2]`; rates outside the interval beyond
/// [`SHANNON_SLACK`] are rejected, inside it they are clamped.
pub fn shannon_information<T: Scalar>(pe: T) -> Result<T> {
    let half = T::from_f64_lossy(0.5);
    let slack = T::from_f64_lossy(SHANNON_SLACK);
    if !pe.is_finite() || pe < -slack || pe > half + slack {
        return Err(Error::ProbabilityOutOfRange { pe: pe.as_f64() });
    }
    let pe = pe.max(T::zero()).min(half);
    let plogp = |q: T| {
        if q == T::zero() {
            T::zero()
        } else {
            q * q.log2()
        }
    };
    Ok(T::one() + plogp(pe) + plogp(T::one() - pe))
}

/// Evaluates one `(x, p)` cell of the information-gain surface.
///
/// The pure pair puts single states at `(x, p)` and `(-x, p)`; the mixed
/// pair replaces each with an equal mixture of its phase-mirrored partners
/// `(+-x, +-p)`. Both error probabilities use the same truncation, so their
/// informations are directly comparable. The surface is invariant under
/// sign flips of either quadrature (the flipped ensembles are permutations
/// or swaps of the originals), so inputs are folded into the positive
/// quadrant and the results are exactly symmetric.
pub fn information_gain<T: Scalar>(
    x: T,
    p: T,
    dim: usize,
    tol: T,
) -> Result<GainRecord<T>> {
    let xm = x.abs();
    let pm = p.abs();
    let d_pp = Displacement::new(xm, pm)?;
    let d_pm = Displacement::new(xm, -pm)?;
    let d_mp = Displacement::new(-xm, pm)?;
    let d_mm = Displacement::new(-xm, -pm)?;

    let pure0 = CoherentEnsemble::pure(d_pp);
    let pure1 = CoherentEnsemble::pure(d_mp);
    let mixed0 = CoherentEnsemble::balanced_pair(d_pp, d_pm);
    let mixed1 = CoherentEnsemble::balanced_pair(d_mp, d_mm);

    let pure = probability_of_error(&pure0, &pure1, dim, tol)?;
    let mixed = probability_of_error(&mixed0, &mixed1, dim, tol)?;

    Ok(GainRecord {
        x,
        p,
        pe_pure: pure.pe,
        pe_mixed: mixed.pe,
        i_pure: pure.shannon_bits,
        i_mixed: mixed.shannon_bits,
        i_gain: pure.shannon_bits - mixed.shannon_bits,
    })
}

/// The four ensembles of one surface cell: `(pure0, pure1, mixed0, mixed1)`.
///
/// Exposed so callers sizing a truncation can hand all of them to
/// `suggest_dim` at once.
pub fn cell_ensembles<T: Scalar>(
    x: T,
    p: T,
) -> Result<[CoherentEnsemble<T>; 4]> {
    let xm = x.abs();
    let pm = p.abs();
    let d_pp = Displacement::new(xm, pm)?;
    let d_pm = Displacement::new(xm, -pm)?;
    let d_mp = Displacement::new(-xm, pm)?;
    let d_mm = Displacement::new(-xm, -pm)?;
    Ok([
        CoherentEnsemble::pure(d_pp),
        CoherentEnsemble::pure(d_mp),
        CoherentEnsemble::balanced_pair(d_pp, d_pm),
        CoherentEnsemble::balanced_pair(d_mp, d_mm),
    ])
}
