//! The POVM assigned to an ETF, its outcome statistics, and the orthonormal
//! family `Ψ_0 … Ψ_{n−1}` in `C^d ⊗ C^d` built from `|φ_j⟩ ⊗ |φ_j^*⟩`.

use num_complex::Complex;

use crate::frames::EquiangularTightFrame;
use crate::numerics::{conjugate_ket, inner, ComplexMatrix, ComplexVector, DensityMatrix};
use crate::{Error, Real, Result};

/// A finite POVM: positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm<T> {
    elements: Vec<ComplexMatrix<T>>,
}

impl<T: Real> Povm<T> {
    /// Checks square shape and completeness `‖Σ E_k − I‖_max ≤ tol`.
    pub fn new(elements: Vec<ComplexMatrix<T>>, tol: T) -> Result<Self> {
        let dim = elements.first().map(ComplexMatrix::rows).ok_or(Error::Invalid("POVM without elements"))?;
        for e in &elements {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.rows().max(e.cols()) });
            }
        }
        let povm = Self { elements };
        let residual = povm.completeness_residual();
        if residual > tol {
            return Err(Error::Invalid("POVM elements do not sum to the identity"));
        }
        Ok(povm)
    }

    pub fn elements(&self) -> &[ComplexMatrix<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    /// `max |Σ_k E_k − I|`.
    pub fn completeness_residual(&self) -> T {
        let dim = self.dim();
        let sum = self.elements.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, e| acc.add(e).expect("same shape"));
        sum.identity_residual()
    }

    /// `p_k = tr(E_k ρ)`.
    pub fn distribution(&self, rho: &DensityMatrix<T>) -> Result<OutcomeDistribution<T>> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rho.dim() });
        }
        let raw = self.elements.iter().map(|e| trace_product(e, rho.matrix()).re).collect();
        OutcomeDistribution::from_raw(raw)
    }
}

/// `tr(AB)` without forming the product.
pub(crate) fn trace_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    let n = a.rows();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..n {
        for k in 0..a.cols() {
            acc = acc + a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// The POVM `E_j = (d/n)|φ_j⟩⟨φ_j|` of an ETF.
#[derive(Debug, Clone, PartialEq)]
pub struct EtfPovm<T> {
    frame: EquiangularTightFrame<T>,
    elements: Vec<ComplexMatrix<T>>,
}

pub fn povm_from_frame<T: Real>(frame: &EquiangularTightFrame<T>) -> Result<EtfPovm<T>> {
    let weight = T::from_usize_lossy(frame.d()) / T::from_usize_lossy(frame.n());
    let elements = frame.vectors().iter().map(|v| ComplexMatrix::outer(v, v).scale(weight)).collect();
    let povm = EtfPovm { frame: frame.clone(), elements };
    let residual = povm.completeness_residual();
    if residual > T::lit(T::VALIDATION_TOL) {
        return Err(Error::InvalidFrame(format!("POVM completeness residual {residual}")));
    }
    Ok(povm)
}

impl<T: Real> EtfPovm<T> {
    pub fn frame(&self) -> &EquiangularTightFrame<T> {
        &self.frame
    }

    pub fn elements(&self) -> &[ComplexMatrix<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn completeness_residual(&self) -> T {
        let d = self.frame.d();
        let sum = self.elements.iter().fold(ComplexMatrix::zeros(d, d), |acc, e| acc.add(e).expect("same shape"));
        sum.identity_residual()
    }

    pub fn to_povm(&self) -> Povm<T> {
        Povm { elements: self.elements.clone() }
    }
}

/// Outcome probabilities of a measurement, clamped into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution<T> {
    probs: Vec<T>,
    clamp_deviation: T,
    pub frame_tag: Option<String>,
    pub state_tag: Option<String>,
}

impl<T: Real> OutcomeDistribution<T> {
    /// Validates a probability vector: entries in `[−tol, 1 + tol]` and
    /// `|Σ p − 1| ≤ tol` with the scalar's distribution tolerance.
    pub fn new(probs: Vec<T>) -> Result<Self> {
        Self::from_raw(probs)
    }

    fn from_raw(raw: Vec<T>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        if raw.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidDistribution("non-finite probability".into()));
        }
        let tol = T::lit(T::DISTRIBUTION_TOL);
        let sum: T = raw.iter().copied().sum();
        if (sum - T::one()).abs() > tol {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        let clamp_deviation = raw.iter().map(|&p| (-p).max(p - T::one()).max(T::zero())).fold(T::zero(), T::max);
        if clamp_deviation > tol {
            return Err(Error::InvalidDistribution(format!("probability outside [0, 1] by {clamp_deviation}")));
        }
        let probs = raw.into_iter().map(|p| p.max(T::zero()).min(T::one())).collect();
        Ok(Self { probs, clamp_deviation, frame_tag: None, state_tag: None })
    }

    pub fn with_tags(mut self, frame: impl Into<String>, state: impl Into<String>) -> Self {
        self.frame_tag = Some(frame.into());
        self.state_tag = Some(state.into());
        self
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Largest amount by which a raw probability left `[0, 1]` before clamping.
    pub fn clamp_deviation(&self) -> T {
        self.clamp_deviation
    }

    pub fn max_probability(&self) -> T {
        self.probs.iter().copied().fold(T::zero(), T::max)
    }

    pub fn index_of_coincidence(&self) -> T {
        index_of_coincidence(self)
    }
}

/// `p_j = (d/n)⟨φ_j|ρ|φ_j⟩`.
pub fn outcome_distribution<T: Real>(povm: &EtfPovm<T>, rho: &DensityMatrix<T>) -> Result<OutcomeDistribution<T>> {
    let frame = povm.frame();
    if rho.dim() != frame.d() {
        return Err(Error::DimensionMismatch { expected: frame.d(), found: rho.dim() });
    }
    let weight = T::from_usize_lossy(frame.d()) / T::from_usize_lossy(frame.n());
    let raw = frame.vectors().iter().map(|v| rho.expectation(v).map(|e| weight * e)).collect::<Result<Vec<T>>>()?;
    OutcomeDistribution::from_raw(raw)
}

/// `I(p) = Σ_j p_j²`.
pub fn index_of_coincidence<T: Real>(dist: &OutcomeDistribution<T>) -> T {
    dist.probs.iter().map(|&p| p * p).sum()
}

/// `Σ_{i,j} |⟨φ_i|φ_j⟩|²`, equal to `nS` for an ETF.
pub fn overlap_sum<T: Real>(frame: &EquiangularTightFrame<T>) -> T {
    let vs = frame.vectors();
    let mut acc = T::zero();
    for a in vs {
        for b in vs {
            acc = acc + inner(a, b).expect("shared dimension").norm_sqr();
        }
    }
    acc
}

/// `Ψ_0 = (nS)^{-1/2} Σ_j |φ_j⟩⊗|φ_j^*⟩` and
/// `Ψ_k = (n − nc)^{-1/2} Σ_j ω^{kj} |φ_j⟩⊗|φ_j^*⟩` for `k = 1 … n−1`,
/// with `ω = exp(2πi/n)` and `j` counted from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiFamily<T> {
    vectors: Vec<ComplexVector<T>>,
    omega: Complex<T>,
}

pub fn psi_family<T: Real>(frame: &EquiangularTightFrame<T>) -> Result<PsiFamily<T>> {
    let params = frame.params();
    let n = params.n();
    let (nt, s, c) = (T::from_usize_lossy(n), params.tightness_as::<T>(), params.overlap_as::<T>());
    if n > 1 && c >= T::one() {
        return Err(Error::InvalidParameters { d: params.d(), n, reason: "family needs overlap c < 1" });
    }
    let products: Vec<ComplexVector<T>> = frame.vectors().iter().map(|v| v.kron(&conjugate_ket(v))).collect();
    let omega = Complex::from_polar(T::one(), T::TAU() / nt);
    let dim = products[0].dim();

    let mut vectors = Vec::with_capacity(n);
    for k in 0..n {
        let norm = if k == 0 { (nt * s).sqrt() } else { (nt - nt * c).sqrt() };
        let mut acc = vec![Complex::new(T::zero(), T::zero()); dim];
        for (j, prod) in products.iter().enumerate() {
            let phase = Complex::from_polar(T::one(), T::TAU() * T::from_usize_lossy((k * j) % n) / nt);
            for (a, x) in acc.iter_mut().zip(prod.iter()) {
                *a = *a + phase * x;
            }
        }
        vectors.push(ComplexVector::new(acc)?.scale(T::one() / norm));
    }
    Ok(PsiFamily { vectors, omega })
}

impl<T: Real> PsiFamily<T> {
    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn omega(&self) -> Complex<T> {
        self.omega
    }

    /// Gram matrix `⟨Ψ_q|Ψ_k⟩`.
    pub fn gram(&self) -> ComplexMatrix<T> {
        let n = self.vectors.len();
        ComplexMatrix::from_fn(n, n, |q, k| inner(&self.vectors[q], &self.vectors[k]).expect("shared dimension"))
    }

    /// `max |Gram − I|`.
    pub fn gram_residual(&self) -> T {
        self.gram().identity_residual()
    }
}
