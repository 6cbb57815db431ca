use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{sample_real, ComplexMatrix, ComplexVector, DensityMatrix};
use crate::{Error, Real, Result};

/// Deterministic generator used for every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian `(x + iy)/√2`.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let x: T = sample_real(rng, StandardNormal);
    let y: T = sample_real(rng, StandardNormal);
    Complex::new(x, y).scale(T::FRAC_1_SQRT_2())
}

/// Haar-random unit ket (normalized complex Gaussian vector).
pub fn random_ket<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexVector<T> {
    loop {
        let v = ComplexVector::new((0..dim).map(|_| complex_gaussian(rng)).collect()).expect("finite Gaussian draw");
        if let Ok(ket) = v.normalized() {
            return ket;
        }
    }
}

/// Ginibre-ensemble state `GG†/tr(GG†)` with `G` a `d × rank` complex Gaussian matrix.
pub fn random_density<T: Real>(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    let mut rng = seeded_rng(seed);
    random_density_with(d, rank, &mut rng)
}

pub(crate) fn random_density_with<T: Real, R: Rng + ?Sized>(
    d: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be positive"));
    }
    if rank == 0 || rank > d {
        return Err(Error::OutOfRange { name: "rank", value: rank as f64, range: "[1, d]" });
    }
    let g = ComplexMatrix::from_fn(d, rank, |_, _| complex_gaussian(rng));
    let ggh = g.matmul(&g.adjoint())?;
    let tr = ggh.trace().re;
    // Exact Hermiticity so that downstream checks see only trace rounding.
    let rho = ggh.hermitized().scale(T::one() / tr);
    DensityMatrix::with_tol(rho, T::lit(T::VALIDATION_TOL))
}
