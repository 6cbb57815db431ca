//! Construction, validation and transformation of equiangular tight frames.

mod params;
mod search;

pub(crate) use params::ratio_as;
pub use params::{etf_parameters, FrameParameters};
pub use search::{optimize_etf, OptimizeOptions, OptimizedFrame};

use num_complex::Complex;

use crate::numerics::{complete_to_unitary, conjugate_ket, hermitian_eigenvalues, inner, ComplexMatrix, ComplexVector};
use crate::{Error, Real, Result};

/// `n` unit vectors in `C^d` with constant squared overlap `c` and frame
/// operator `(n/d)·I`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiangularTightFrame<T> {
    params: FrameParameters,
    vectors: Vec<ComplexVector<T>>,
}

/// Residuals of the three ETF conditions plus the extreme frame bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameReport<T> {
    pub d: usize,
    pub n: usize,
    pub tol: T,
    /// `max_j |‖φ_j‖ − 1|`
    pub unit_norm_residual: T,
    /// `max_{i≠j} ||⟨φ_i|φ_j⟩|² − c|` with `c = (n − d)/((n − 1)d)`
    pub equiangularity_residual: T,
    /// `max |Σ_j |φ_j⟩⟨φ_j| − (n/d)·I|`
    pub tightness_residual: T,
    /// Smallest and largest eigenvalue of the frame operator.
    pub lower_frame_bound: T,
    pub upper_frame_bound: T,
}

impl<T: Real> FrameReport<T> {
    pub fn unit_norm_pass(&self) -> bool {
        self.unit_norm_residual <= self.tol
    }

    pub fn equiangular_pass(&self) -> bool {
        self.equiangularity_residual <= self.tol
    }

    pub fn tight_pass(&self) -> bool {
        self.tightness_residual <= self.tol
    }

    pub fn passed(&self) -> bool {
        self.unit_norm_pass() && self.equiangular_pass() && self.tight_pass()
    }

    pub fn max_residual(&self) -> T {
        self.unit_norm_residual.max(self.equiangularity_residual).max(self.tightness_residual)
    }

    fn verdict(ok: bool) -> &'static str {
        if ok {
            "pass"
        } else {
            "FAIL"
        }
    }
}

impl<T: Real> std::fmt::Display for FrameReport<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "frame d={} n={} tol={:e}", self.d, self.n, self.tol.to_f64_lossy())?;
        writeln!(
            f,
            "  unit norm      {:.3e}  {}",
            self.unit_norm_residual.to_f64_lossy(),
            Self::verdict(self.unit_norm_pass())
        )?;
        writeln!(
            f,
            "  equiangularity {:.3e}  {}",
            self.equiangularity_residual.to_f64_lossy(),
            Self::verdict(self.equiangular_pass())
        )?;
        writeln!(
            f,
            "  tightness      {:.3e}  {}",
            self.tightness_residual.to_f64_lossy(),
            Self::verdict(self.tight_pass())
        )?;
        write!(
            f,
            "  frame bounds   S0={:.12} S1={:.12}",
            self.lower_frame_bound.to_f64_lossy(),
            self.upper_frame_bound.to_f64_lossy()
        )
    }
}

/// Measures how far `vectors` are from an ETF in their common dimension.
pub fn validate_frame<T: Real>(vectors: &[ComplexVector<T>], tol: T) -> Result<FrameReport<T>> {
    let n = vectors.len();
    let d = vectors.first().map(ComplexVector::dim).ok_or(Error::Invalid("empty frame"))?;
    if let Some(bad) = vectors.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
    }
    if n < d {
        return Err(Error::InvalidParameters { d, n, reason: "fewer vectors than the dimension" });
    }

    let unit_norm_residual = vectors.iter().map(|v| (v.norm() - T::one()).abs()).fold(T::zero(), T::max);

    let c = if n == d {
        T::zero()
    } else {
        T::from_usize_lossy(n - d) / (T::from_usize_lossy(n - 1) * T::from_usize_lossy(d))
    };
    let mut equiangularity_residual = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let g = inner(&vectors[i], &vectors[j])?.norm_sqr();
            equiangularity_residual = equiangularity_residual.max((g - c).abs());
        }
    }

    let op = frame_operator(vectors)?;
    let s = T::from_usize_lossy(n) / T::from_usize_lossy(d);
    let tightness_residual = op.scaled_identity_residual(s);
    let evals = hermitian_eigenvalues(&op)?;

    Ok(FrameReport {
        d,
        n,
        tol,
        unit_norm_residual,
        equiangularity_residual,
        tightness_residual,
        lower_frame_bound: evals[0],
        upper_frame_bound: evals[d - 1],
    })
}

/// `Σ_j |φ_j⟩⟨φ_j|`.
pub fn frame_operator<T: Real>(vectors: &[ComplexVector<T>]) -> Result<ComplexMatrix<T>> {
    let phi = ComplexMatrix::from_columns(vectors)?;
    phi.matmul(&phi.adjoint())
}

impl<T: Real> EquiangularTightFrame<T> {
    /// Validates at the scalar's default tolerance.
    pub fn new(vectors: Vec<ComplexVector<T>>) -> Result<Self> {
        Self::with_tol(vectors, T::lit(T::VALIDATION_TOL))
    }

    pub fn with_tol(vectors: Vec<ComplexVector<T>>, tol: T) -> Result<Self> {
        let report = validate_frame(&vectors, tol)?;
        if !report.passed() {
            return Err(Error::InvalidFrame(format!(
                "residuals norm={:e} equiangularity={:e} tightness={:e} exceed tol={:e}",
                report.unit_norm_residual.to_f64_lossy(),
                report.equiangularity_residual.to_f64_lossy(),
                report.tightness_residual.to_f64_lossy(),
                tol.to_f64_lossy()
            )));
        }
        let params = etf_parameters(report.d, report.n)?;
        Ok(Self { params, vectors })
    }

    pub fn params(&self) -> &FrameParameters {
        &self.params
    }

    pub fn d(&self) -> usize {
        self.params.d()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<ComplexVector<T>> {
        self.vectors
    }

    /// `d × n` matrix with the frame vectors as columns.
    pub fn frame_matrix(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_columns(&self.vectors).expect("frame vectors share a dimension")
    }

    pub fn report(&self, tol: T) -> FrameReport<T> {
        validate_frame(&self.vectors, tol).expect("frame shape checked on construction")
    }

    /// The frame `{|φ_j^*⟩}`, again an ETF with the same parameters.
    pub fn conjugate(&self) -> Self {
        Self { params: self.params, vectors: self.vectors.iter().map(conjugate_ket).collect() }
    }

    /// Multiplies each vector by a phase so that its first entry with modulus
    /// above the validation tolerance is real and nonnegative.
    pub fn canonicalize_phases(&mut self) {
        let threshold = T::lit(T::VALIDATION_TOL);
        for v in &mut self.vectors {
            if let Some(pivot) = v.iter().copied().find(|z| z.norm() > threshold) {
                let phase = pivot.conj().unscale(pivot.norm());
                let pos = v.iter().position(|z| z.norm() > threshold).expect("pivot exists");
                let mut entries: Vec<Complex<T>> = v.iter().map(|z| z * phase).collect();
                entries[pos] = Complex::new(pivot.norm(), T::zero());
                *v = ComplexVector::new(entries).expect("finite after phase rotation");
            }
        }
    }

    pub fn canonicalized(mut self) -> Self {
        self.canonicalize_phases();
        self
    }
}

/// The standard basis of `C^d`: the `n = d`, `c = 0` frame.
pub fn orthonormal_basis_frame<T: Real>(d: usize) -> Result<EquiangularTightFrame<T>> {
    if d == 0 {
        return Err(Error::InvalidParameters { d, n: d, reason: "dimension must be positive" });
    }
    let params = etf_parameters(d, d)?;
    Ok(EquiangularTightFrame { params, vectors: (0..d).map(|k| ComplexVector::basis(d, k)).collect() })
}

/// The ETF of `n` vectors in dimension `n − d` obtained by completing the
/// rows of `√(d/n)·Φ` to a unitary and normalizing the columns of the added block.
pub fn naimark_complement<T: Real>(frame: &EquiangularTightFrame<T>) -> Result<EquiangularTightFrame<T>> {
    let params = frame.params.complement()?;
    let vectors = complement_columns(&frame.frame_matrix())?;
    let out = EquiangularTightFrame::new(vectors)?;
    debug_assert_eq!(out.params, params);
    Ok(out)
}

/// Complement of a `d × n` matrix of unit columns whose rows, scaled by
/// `√(d/n)`, are orthonormal. Returns the `n` normalized columns in `C^{n−d}`.
fn complement_columns<T: Real>(phi: &ComplexMatrix<T>) -> Result<Vec<ComplexVector<T>>> {
    let (d, n) = (phi.rows(), phi.cols());
    let (dt, nt) = (T::from_usize_lossy(d), T::from_usize_lossy(n));
    let rows = phi.scale((dt / nt).sqrt());
    let extra = complete_to_unitary(&rows, T::lit(T::VALIDATION_TOL))?;
    let exact = T::one() / ((nt - dt) / nt).sqrt();
    (0..n)
        .map(|j| {
            // Exact factor first, then a numerical renormalization for drift.
            let col = extra.column(j).scale(exact);
            col.normalized()
        })
        .collect()
}

/// Regular simplex ETF: `d + 1` vectors in `C^d`, built as the complement of
/// the one-dimensional frame of `(d + 1)`-th roots of unity.
pub fn simplex_etf<T: Real>(d: usize) -> Result<EquiangularTightFrame<T>> {
    if d == 0 {
        return Err(Error::InvalidParameters { d, n: 1, reason: "dimension must be positive" });
    }
    let n = d + 1;
    let step = T::TAU() / T::from_usize_lossy(n);
    let roots = ComplexMatrix::from_fn(1, n, |_, j| Complex::from_polar(T::one(), step * T::from_usize_lossy(j)));
    let vectors = complement_columns(&roots)?;
    EquiangularTightFrame::new(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_rational::Ratio;

    type C = Complex<f64>;

    #[test]
    fn basis_frame_validates_exactly() {
        let f = orthonormal_basis_frame::<f64>(4).unwrap();
        let r = f.report(1e-12);
        assert!(r.passed());
        assert_eq!(r.max_residual(), 0.0);
        assert_eq!((r.lower_frame_bound, r.upper_frame_bound), (1.0, 1.0));

        let one = orthonormal_basis_frame::<f64>(1).unwrap();
        assert_eq!(one.vectors()[0].entries(), &[C::new(1.0, 0.0)]);
    }

    #[test]
    fn standard_basis_of_c3_passes() {
        let vs: Vec<_> = (0..3).map(|k| ComplexVector::<f64>::basis(3, k)).collect();
        let r = validate_frame(&vs, 1e-12).unwrap();
        assert!(r.passed());
        assert_eq!((r.lower_frame_bound, r.upper_frame_bound), (1.0, 1.0));
    }

    #[test]
    fn scaled_basis_vector_fails_unit_norm() {
        let mut vs: Vec<_> = (0..3).map(|k| ComplexVector::<f64>::basis(3, k)).collect();
        vs[1] = vs[1].scale(0.9);
        let r = validate_frame(&vs, 1e-8).unwrap();
        assert!(!r.unit_norm_pass());
        assert!(!r.passed());
        assert!(matches!(EquiangularTightFrame::new(vs), Err(Error::InvalidFrame(_))));
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let vs = vec![ComplexVector::<f64>::basis(3, 0), ComplexVector::basis(3, 1)];
        assert!(matches!(validate_frame(&vs, 1e-8), Err(Error::InvalidParameters { .. })));
        let vs = vec![ComplexVector::<f64>::basis(2, 0), ComplexVector::basis(3, 1)];
        assert!(matches!(validate_frame(&vs, 1e-8), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn simplex_overlaps() {
        let f = simplex_etf::<f64>(2).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.params().overlap(), Ratio::new(1, 4));
        let f = simplex_etf::<f64>(3).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.params().overlap(), Ratio::new(1, 9));
    }

    #[test]
    fn simplex_validates_up_to_16() {
        for d in 1..=16 {
            let f = simplex_etf::<f64>(d).unwrap();
            let r = f.report(1e-9);
            assert!(r.passed(), "d={d}: {r}");
            assert_abs_diff_eq!(r.lower_frame_bound, (d as f64 + 1.0) / d as f64, epsilon = 1e-9);
            assert_abs_diff_eq!(r.upper_frame_bound, (d as f64 + 1.0) / d as f64, epsilon = 1e-9);
        }
    }

    #[test]
    fn complement_of_trine_is_three_unimodular_scalars() {
        let trine = simplex_etf::<f64>(2).unwrap();
        let comp = naimark_complement(&trine).unwrap();
        assert_eq!((comp.d(), comp.n()), (1, 3));
        for v in comp.vectors() {
            assert_abs_diff_eq!(v[0].norm(), 1.0, epsilon = 1e-12);
        }
        assert!(validate_frame(comp.vectors(), 1e-10).unwrap().passed());
    }

    #[test]
    fn complement_of_basis_is_rejected() {
        let basis = orthonormal_basis_frame::<f64>(3).unwrap();
        assert!(matches!(naimark_complement(&basis), Err(Error::InvalidParameters { .. })));
    }

    #[test]
    fn double_complement_restores_shape() {
        let f = simplex_etf::<f64>(4).unwrap();
        let once = naimark_complement(&f).unwrap();
        assert_eq!((once.d(), once.n()), (1, 5));
        let twice = naimark_complement(&once).unwrap();
        assert_eq!((twice.d(), twice.n()), (4, 5));
        assert!(twice.report(1e-9).passed());
    }

    #[test]
    fn canonicalization_fixes_leading_phase_and_keeps_frame() {
        let f = simplex_etf::<f64>(3).unwrap().canonicalized();
        for v in f.vectors() {
            let lead = v.iter().find(|z| z.norm() > 1e-8).unwrap();
            assert_eq!(lead.im, 0.0);
            assert!(lead.re > 0.0);
        }
        assert!(f.report(1e-10).passed());
        let again = f.clone().canonicalized();
        for (a, b) in f.vectors().iter().zip(again.vectors()) {
            for (x, y) in a.iter().zip(b.iter()) {
                assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn conjugate_frame_is_an_etf() {
        let f = simplex_etf::<f64>(3).unwrap();
        assert!(f.conjugate().report(1e-10).passed());
    }

    #[test]
    fn single_precision_simplex() {
        let f = simplex_etf::<f32>(3).unwrap();
        assert!(f.report(1e-5).passed());
    }
}
