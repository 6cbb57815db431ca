use std::ops::{Index, IndexMut};

use num_complex::Complex;

use super::ComplexVector;
use crate::{Error, Real, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) },
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[ComplexVector<T>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map(ComplexVector::dim).ok_or(Error::Invalid("no columns"))?;
        if let Some(bad) = columns.iter().find(|c| c.dim() != rows) {
            return Err(Error::DimensionMismatch { expected: rows, found: bad.dim() });
        }
        Ok(Self::from_fn(rows, cols, |i, j| columns[j][i]))
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &ComplexVector<T>, v: &ComplexVector<T>) -> Self {
        Self::from_fn(u.dim(), v.dim(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector<T> {
        ComplexVector::new((0..self.rows).map(|i| self[(i, j)]).collect()).expect("column of a finite matrix")
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.scale(s)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        let out = (0..self.rows).map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect();
        ComplexVector::new(out)
    }

    /// `⟨v|A|v⟩`.
    pub fn quadratic_form(&self, v: &ComplexVector<T>) -> Result<Complex<T>> {
        let av = self.mul_vec(v)?;
        Ok(v.iter().zip(av.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `max |A − I|` entrywise (square matrices).
    pub fn identity_residual(&self) -> T {
        self.scaled_identity_residual(T::one())
    }

    /// `max |A − s·I|` entrywise.
    pub fn scaled_identity_residual(&self, s: T) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut z = self[(i, j)];
                if i == j {
                    z.re = z.re - s;
                }
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    /// `max |A − A†|` entrywise.
    pub fn hermiticity_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A†)/2`.
    pub fn hermitized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()).scale(half))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product `A ⊗ B`, row index `i_A·r_B + i_B`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (rb, cb) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * rb, a.cols * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{complex_gaussian, seeded_rng};
    use approx::assert_abs_diff_eq;

    type C = Complex<f64>;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix<f64> {
        let mut rng = seeded_rng(seed);
        ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(&mut rng))
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_kets_multiplies_norms() {
        let u = ComplexVector::new(vec![C::new(1.0, 2.0), C::new(0.5, 0.0)]).unwrap();
        let v = ComplexVector::new(vec![C::new(0.0, 3.0), C::new(-1.0, 1.0), C::new(0.2, 0.0)]).unwrap();
        assert_abs_diff_eq!(u.kron(&v).norm(), u.norm() * v.norm(), epsilon = 1e-12);
    }

    #[test]
    fn kron_trace_factorizes() {
        for seed in 0..10 {
            let a = random_matrix(2, 2, seed);
            let b = random_matrix(2, 2, seed + 100);
            let lhs = kron(&a, &b).trace();
            // direct expansion: Σ_i Σ_k a_ii b_kk
            let mut rhs = C::new(0.0, 0.0);
            for i in 0..2 {
                for k in 0..2 {
                    rhs += a[(i, i)] * b[(k, k)];
                }
            }
            assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn kron_matches_index_expansion_and_mixed_product() {
        for (seed, (ra, ca, rb, cb)) in [(2, 2, 3, 3), (3, 3, 2, 2), (2, 3, 3, 2)].into_iter().enumerate() {
            let a = random_matrix(ra, ca, seed as u64);
            let b = random_matrix(rb, cb, seed as u64 + 50);
            let k = kron(&a, &b);
            for i in 0..ra {
                for j in 0..ca {
                    for p in 0..rb {
                        for q in 0..cb {
                            assert_eq!(k[(i * rb + p, j * cb + q)], a[(i, j)] * b[(p, q)]);
                        }
                    }
                }
            }
            let mut rng = seeded_rng(seed as u64 + 7);
            let u = ComplexVector::new((0..ca).map(|_| complex_gaussian(&mut rng)).collect()).unwrap();
            let v = ComplexVector::new((0..cb).map(|_| complex_gaussian(&mut rng)).collect()).unwrap();
            let lhs = k.mul_vec(&u.kron(&v)).unwrap();
            let rhs = a.mul_vec(&u).unwrap().kron(&b.mul_vec(&v).unwrap());
            for (x, y) in lhs.iter().zip(rhs.iter()) {
                assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn matmul_and_adjoint() {
        let a = random_matrix(3, 2, 1);
        let b = random_matrix(2, 4, 2);
        let ab = a.matmul(&b).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                let direct: C = (0..2).map(|k| a[(i, k)] * b[(k, j)]).sum();
                assert_abs_diff_eq!((ab[(i, j)] - direct).norm(), 0.0, epsilon = 1e-14);
            }
        }
        let lhs = ab.adjoint();
        let rhs = b.adjoint().matmul(&a.adjoint()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-14);
        assert!(a.matmul(&a).is_err());
    }
}
