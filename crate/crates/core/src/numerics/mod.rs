//! Dense complex linear algebra at the sizes ETF work needs (d, n ≤ a few
//! hundred), density matrices and seeded random states.

mod eigen;
mod matrix;
mod random;
mod vector;

pub use eigen::hermitian_eigenvalues;
pub use matrix::{kron, ComplexMatrix};
pub(crate) use random::random_density_with;
pub use random::{complex_gaussian, random_density, random_ket, seeded_rng, SeededRng};
pub use vector::{conjugate_ket, inner, ComplexVector};

use num_complex::Complex;
use rand::Rng;

use crate::{Error, Real, Result};

/// Hermitian, positive-semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates `matrix` at the scalar's default validation tolerance.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tol(matrix, T::lit(T::VALIDATION_TOL))
    }

    pub fn with_tol(matrix: ComplexMatrix<T>, tol: T) -> Result<Self> {
        validate_density(&matrix, tol)?;
        Ok(Self { matrix })
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = T::one() / T::from_usize_lossy(dim);
        Self { matrix: ComplexMatrix::identity(dim).scale(scale) }
    }

    /// `|ψ⟩⟨ψ|` for a ket normalized on the fly.
    pub fn pure(ket: &ComplexVector<T>) -> Result<Self> {
        let norm = ket.norm();
        if norm <= T::zero() {
            return Err(Error::InvalidDensity("zero ket".into()));
        }
        let ket = ket.scale(T::one() / norm);
        Ok(Self { matrix: ComplexMatrix::outer(&ket, &ket) })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// `⟨v|ρ|v⟩`, real for Hermitian ρ.
    pub fn expectation(&self, v: &ComplexVector<T>) -> Result<T> {
        Ok(self.matrix.quadratic_form(v)?.re)
    }

    pub fn purity(&self) -> T {
        purity(self)
    }

    /// Convex combination `Σ w_m ρ_m`. Weights must be nonnegative and sum to one.
    pub fn mixture(weights: &[T], states: &[DensityMatrix<T>]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::Invalid("mixture needs one weight per state"));
        }
        let dim = states[0].dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            acc = acc.add(&s.matrix.scale(*w))?;
        }
        Self::new(acc)
    }
}

/// `tr(ρ²)`, computed as the squared Frobenius norm of the Hermitian ρ.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.matrix.data().iter().map(|z| z.norm_sqr()).sum()
}

/// Checks Hermiticity, unit trace and the smallest eigenvalue of the
/// Hermitized matrix against `tol`.
pub fn validate_density<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidDensity(format!("not square ({}x{})", m.rows(), m.cols())));
    }
    if m.rows() == 0 {
        return Err(Error::InvalidDensity("empty matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::InvalidDensity("non-finite entry".into()));
    }
    let herm = m.hermiticity_residual();
    if herm > tol {
        return Err(Error::InvalidDensity(format!("hermiticity residual {herm}")));
    }
    let tr = m.trace();
    if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    let evals = hermitian_eigenvalues(&m.hermitized())?;
    let min = evals[0];
    if min < -tol {
        return Err(Error::InvalidDensity(format!("negative eigenvalue {min}")));
    }
    Ok(())
}

/// Extends `rows` (d×n, orthonormal rows, d < n) by `n − d` further rows so
/// that the stacked n×n matrix is unitary. Returns only the added rows.
///
/// Candidates are seeded Gaussian vectors, projected off the current span
/// twice (classical Gram–Schmidt with one re-orthogonalization pass).
pub fn complete_to_unitary<T: Real>(rows: &ComplexMatrix<T>, tol: T) -> Result<ComplexMatrix<T>> {
    let (d, n) = (rows.rows(), rows.cols());
    if d >= n {
        return Err(Error::Invalid("unitary completion needs fewer rows than columns"));
    }
    let residual = rows.matmul(&rows.adjoint())?.identity_residual();
    if residual > tol {
        return Err(Error::NotOrthonormal { residual: residual.to_f64_lossy() });
    }

    let mut span: Vec<Vec<Complex<T>>> = (0..d).map(|i| rows.row(i).to_vec()).collect();
    let mut added = Vec::with_capacity((n - d) * n);
    let mut rng = seeded_rng(0x5eed_cafe_u64 ^ ((d as u64) << 32) ^ n as u64);
    let keep = T::lit(1e-3);
    while span.len() < n {
        let mut v: Vec<Complex<T>> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
        let start = l2(&v);
        for _ in 0..2 {
            for b in &span {
                let proj: Complex<T> = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi - proj * bi;
                }
            }
        }
        let norm = l2(&v);
        // Candidate almost inside the span; draw another.
        if norm <= keep * start {
            continue;
        }
        let inv = T::one() / norm;
        v.iter_mut().for_each(|z| *z = z.scale(inv));
        added.extend_from_slice(&v);
        span.push(v);
    }
    ComplexMatrix::new(n - d, n, added)
}

fn l2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Draws a real sample from `dist` and converts it to `T`.
pub(crate) fn sample_real<T: Real, R: Rng + ?Sized, D: rand_distr::Distribution<f64>>(rng: &mut R, dist: D) -> T {
    T::lit(rng.sample(dist))
}
