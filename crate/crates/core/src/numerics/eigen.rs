use num_complex::Complex;

use super::ComplexMatrix;
use crate::{Error, Real, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic complex Jacobi).
///
/// Only the Hermitian part of `m` is used.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::Invalid("eigenvalues need a square matrix"));
    }
    let n = m.rows();
    let h = m.hermitized();
    let mut a: Vec<Vec<Complex<T>>> = (0..n).map(|i| h.row(i).to_vec()).collect();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        let mut total = T::zero();
        for (i, row) in a.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let s = z.norm_sqr();
                total = total + s;
                if i != j {
                    off = off + s;
                }
            }
        }
        if off <= eps * eps * total || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut evals: Vec<T> = (0..n).map(|i| a[i][i].re).collect();
    evals.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(evals)
}

/// Annihilates `a[p][q]` with the unitary whose (p, q) block is
/// `[[c, s], [−s·ē, c·ē]]`, where `e` is the phase of `a[p][q]`.
// rows p and q are updated together, so the index loop stays
#[allow(clippy::needless_range_loop)]
fn rotate<T: Real>(a: &mut [Vec<Complex<T>>], p: usize, q: usize) {
    let apq = a[p][q];
    let g = apq.norm();
    if g == T::zero() {
        return;
    }
    let e = apq.unscale(g);
    let theta = (a[q][q].re - a[p][p].re) / (g + g);
    let root = (T::one() + theta * theta).sqrt();
    let t = if theta >= T::zero() { T::one() / (theta + root) } else { -T::one() / (-theta + root) };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let (ce, se) = (e.conj().scale(c), e.conj().scale(s));
    for row in a.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = akp.scale(c) - akq * se;
        row[q] = akp.scale(s) + akq * ce;
    }
    let (ec, es) = (e.scale(c), e.scale(s));
    for k in 0..a.len() {
        let (apk, aqk) = (a[p][k], a[q][k]);
        a[p][k] = apk.scale(c) - aqk * es;
        a[q][k] = apk.scale(s) + aqk * ec;
    }
    let zero = Complex::new(T::zero(), T::zero());
    a[p][q] = zero;
    a[q][p] = zero;
    a[p][p].im = T::zero();
    a[q][q].im = T::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{complete_to_unitary, complex_gaussian, seeded_rng, ComplexVector};
    use approx::assert_abs_diff_eq;

    type C = Complex<f64>;

    fn random_unitary(n: usize, seed: u64) -> ComplexMatrix<f64> {
        let mut rng = seeded_rng(seed);
        let v = ComplexVector::new((0..n).map(|_| complex_gaussian(&mut rng)).collect()).unwrap().normalized().unwrap();
        let first = ComplexMatrix::new(1, n, v.entries().to_vec()).unwrap();
        let rest = complete_to_unitary(&first, 1e-12).unwrap();
        let mut data = first.data().to_vec();
        data.extend_from_slice(rest.data());
        ComplexMatrix::new(n, n, data).unwrap()
    }

    #[test]
    fn recovers_prescribed_spectrum() {
        for (seed, spectrum) in
            [vec![-1.0, 0.5, 2.0], vec![0.0, 0.0, 1.0, 3.0, 3.0], vec![1e-3, 2.0, -4.0, 7.5, 0.25, 0.25, 9.0]]
                .into_iter()
                .enumerate()
        {
            let n = spectrum.len();
            let u = random_unitary(n, seed as u64 + 3);
            let d =
                ComplexMatrix::from_fn(n, n, |i, j| if i == j { C::new(spectrum[i], 0.0) } else { C::new(0.0, 0.0) });
            let h = u.matmul(&d).unwrap().matmul(&u.adjoint()).unwrap();
            let evals = hermitian_eigenvalues(&h).unwrap();
            let mut expected = spectrum.clone();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (got, want) in evals.iter().zip(&expected) {
                assert_abs_diff_eq!(got, want, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b], [b̄, c]] has eigenvalues (a+c)/2 ± sqrt(((a−c)/2)² + |b|²)
        let (a, c, b) = (0.3, -1.2, C::new(0.4, -0.7));
        let m = ComplexMatrix::new(2, 2, vec![C::new(a, 0.0), b, b.conj(), C::new(c, 0.0)]).unwrap();
        let r = (((a - c) / 2.0f64).powi(2) + b.norm_sqr()).sqrt();
        let evals = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(evals[0], (a + c) / 2.0 - r, epsilon = 1e-14);
        assert_abs_diff_eq!(evals[1], (a + c) / 2.0 + r, epsilon = 1e-14);
    }

    #[test]
    fn works_in_single_precision() {
        let m = ComplexMatrix::<f32>::from_fn(3, 3, |i, j| {
            if i == j {
                Complex::new(i as f32, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let evals = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(evals, vec![0.0, 1.0, 2.0]);
    }
}
