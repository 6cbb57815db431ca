use std::ops::Index;

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Finite complex amplitudes, a ket when normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("vector must have positive dimension"));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("vector has non-finite entries"));
        }
        Ok(Self { entries })
    }

    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// Standard basis vector `e_k` in `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut entries = vec![Complex::new(T::zero(), T::zero()); dim];
        entries[k] = Complex::new(T::one(), T::zero());
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.entries.iter()
    }

    pub fn norm_sqr(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Self { entries: self.entries.iter().map(|z| z.scale(s)).collect() }
    }

    pub fn mul_complex(&self, s: Complex<T>) -> Self {
        Self { entries: self.entries.iter().map(|z| z * s).collect() }
    }

    /// Returns `v/‖v‖`; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::zero() {
            return Err(Error::Invalid("cannot normalize the zero vector"));
        }
        Ok(self.scale(T::one() / n))
    }

    /// `|u⟩ ⊗ |v⟩` with composite index `i·dim(v) + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let entries = self.entries.iter().flat_map(|a| other.entries.iter().map(move |b| a * b)).collect();
        Self { entries }
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }
}

impl<T> Index<usize> for ComplexVector<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner<T: Real>(u: &ComplexVector<T>, v: &ComplexVector<T>) -> Result<Complex<T>> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    Ok(u.entries.iter().zip(&v.entries).map(|(a, b)| a.conj() * b).sum())
}

/// The ket with conjugated components, `|v^*⟩`.
pub fn conjugate_ket<T: Real>(v: &ComplexVector<T>) -> ComplexVector<T> {
    ComplexVector { entries: v.entries.iter().map(|z| z.conj()).collect() }
}
