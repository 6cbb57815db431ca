//! Entanglement and steering tests on bipartite states measured with ETF
//! POVMs: the convolution measurement, the correlation measure `G` and the
//! Tsallis steering inequality.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use rand_distr::Exp1;

use crate::bounds::{ic_bound, tsallis_bound_si, SLACK_TOL};
use crate::entropy::{check_distribution, tsallis_entropy, SHANNON_WINDOW};
use crate::frames::{ratio_as, EquiangularTightFrame, FrameParameters};
use crate::measurement::Povm;
use crate::numerics::{
    conjugate_ket, kron, random_density_with, seeded_rng, ComplexMatrix, ComplexVector, DensityMatrix,
};
use crate::{Error, Real, Result};

/// Density matrix on `C^{dA} ⊗ C^{dB}`; composite index `a·dB + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDensityMatrix<T> {
    d_a: usize,
    d_b: usize,
    rho: DensityMatrix<T>,
}

impl<T: Real> BipartiteDensityMatrix<T> {
    pub fn new(d_a: usize, d_b: usize, rho: DensityMatrix<T>) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::Invalid("subsystem dimensions must be positive"));
        }
        if rho.dim() != d_a * d_b {
            return Err(Error::DimensionMismatch { expected: d_a * d_b, found: rho.dim() });
        }
        Ok(Self { d_a, d_b, rho })
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<Self> {
        let rho = DensityMatrix::new(kron(a.matrix(), b.matrix()))?;
        Self::new(a.dim(), b.dim(), rho)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn density(&self) -> &DensityMatrix<T> {
        &self.rho
    }

    pub fn into_density(self) -> DensityMatrix<T> {
        self.rho
    }

    pub fn purity(&self) -> T {
        self.rho.purity()
    }

    /// `tr_B ρ`.
    pub fn reduced_a(&self) -> Result<DensityMatrix<T>> {
        let (da, db) = (self.d_a, self.d_b);
        let m = self.rho.matrix();
        let reduced = ComplexMatrix::from_fn(da, da, |a, a2| (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum());
        DensityMatrix::new(reduced)
    }

    /// `tr_A ρ`.
    pub fn reduced_b(&self) -> Result<DensityMatrix<T>> {
        let (da, db) = (self.d_a, self.d_b);
        let m = self.rho.matrix();
        let reduced = ComplexMatrix::from_fn(db, db, |b, b2| (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum());
        DensityMatrix::new(reduced)
    }
}

/// `|Φ+⟩ = Σ_ν |ν⟩|ν⟩/√d` as a density matrix.
pub fn max_entangled_state<T: Real>(d: usize) -> Result<BipartiteDensityMatrix<T>> {
    if d < 2 {
        return Err(Error::OutOfRange { name: "d", value: d as f64, range: "d ≥ 2" });
    }
    let amp = T::one() / T::from_usize_lossy(d).sqrt();
    let mut entries = vec![Complex::new(T::zero(), T::zero()); d * d];
    for nu in 0..d {
        entries[nu * d + nu] = Complex::new(amp, T::zero());
    }
    let ket = ComplexVector::new(entries)?;
    BipartiteDensityMatrix::new(d, d, DensityMatrix::pure(&ket)?)
}

/// `Σ_m w_m ρ_A^{(m)} ⊗ ρ_B^{(m)}` with `k` terms, flat-Dirichlet weights and
/// Ginibre factors of uniformly drawn rank.
pub fn random_separable_state<T: Real>(d: usize, k: usize, seed: u64) -> Result<BipartiteDensityMatrix<T>> {
    random_separable_state_dims(d, d, k, seed)
}

pub fn random_separable_state_dims<T: Real>(
    d_a: usize,
    d_b: usize,
    k: usize,
    seed: u64,
) -> Result<BipartiteDensityMatrix<T>> {
    if k == 0 {
        return Err(Error::OutOfRange { name: "components", value: 0.0, range: "k ≥ 1" });
    }
    if d_a == 0 || d_b == 0 {
        return Err(Error::Invalid("subsystem dimensions must be positive"));
    }
    let mut rng = seeded_rng(seed);
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let dim = d_a * d_b;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for w in raw {
        let rank_a = rng.random_range(1..=d_a);
        let a: DensityMatrix<T> = random_density_with(d_a, rank_a, &mut rng)?;
        let rank_b = rng.random_range(1..=d_b);
        let b: DensityMatrix<T> = random_density_with(d_b, rank_b, &mut rng)?;
        acc = acc.add(&kron(a.matrix(), b.matrix()).scale(T::lit(w / total)))?;
    }
    BipartiteDensityMatrix::new(d_a, d_b, DensityMatrix::new(acc.hermitized())?)
}

/// `M_k = Σ_j N_{A,j} ⊗ N_{B,(k − j) mod n}`.
pub fn convolution_povm<T: Real>(povm_a: &Povm<T>, povm_b: &Povm<T>) -> Result<Povm<T>> {
    let n = povm_a.len();
    if povm_b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: povm_b.len() });
    }
    let (na, nb) = (povm_a.elements(), povm_b.elements());
    let dim = povm_a.dim() * povm_b.dim();
    let elements = (0..n)
        .map(|k| (0..n).try_fold(ComplexMatrix::zeros(dim, dim), |acc, j| acc.add(&kron(&na[j], &nb[(k + n - j) % n]))))
        .collect::<Result<Vec<_>>>()?;
    Povm::new(elements, T::lit(T::VALIDATION_TOL))
}

/// `(p * r)_k = Σ_j p_j r_{(k − j) mod n}`.
pub fn circular_convolution<T: Real>(p: &[T], r: &[T]) -> Result<Vec<T>> {
    let n = p.len();
    if r.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    Ok((0..n).map(|k| (0..n).map(|j| p[j] * r[(k + n - j) % n]).sum()).collect())
}

/// How a verdict bears on the tested state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    Entangled,
    Steerable,
    /// The criterion did not fire; nothing follows about the state.
    Inconclusive,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Entangled => "entangled",
            Self::Steerable => "steerable",
            Self::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Separable states keep the statistic at or above the threshold.
    AtLeast,
    /// Separable states keep the statistic at or below the threshold.
    AtMost,
}

/// Outcome of one separability or steering criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessVerdict<T> {
    pub criterion: &'static str,
    pub alpha: Option<T>,
    pub statistic: T,
    pub threshold: T,
    pub violated: bool,
    pub interpretation: Interpretation,
}

impl<T: Real> WitnessVerdict<T> {
    fn decide(
        criterion: &'static str,
        alpha: Option<T>,
        statistic: T,
        threshold: T,
        side: Side,
        positive: Interpretation,
    ) -> Self {
        let tol = T::lit(SLACK_TOL);
        let violated = match side {
            Side::AtLeast => statistic < threshold - tol,
            Side::AtMost => statistic > threshold + tol,
        };
        let interpretation = if violated { positive } else { Interpretation::Inconclusive };
        Self { criterion, alpha, statistic, threshold, violated, interpretation }
    }
}

/// Violated when `H_α(p(M)) < ln_α((n² − n)/(d² − 2d + n)) − tol`; `params`
/// are those of the ETF assigned to party A.
pub fn separability_tsallis_test<T: Real>(dist: &[T], alpha: T, params: &FrameParameters) -> Result<WitnessVerdict<T>> {
    check_outcomes(dist.len(), params)?;
    let threshold = tsallis_bound_si(params, alpha)?;
    let h = tsallis_entropy(dist, alpha)?;
    Ok(WitnessVerdict::decide(
        "convolution_tsallis",
        Some(alpha),
        h,
        threshold,
        Side::AtLeast,
        Interpretation::Entangled,
    ))
}

/// Violated when `max_k p_k(M) > d/n + tol`.
pub fn separability_maxprob_test<T: Real>(dist: &[T], params: &FrameParameters) -> Result<WitnessVerdict<T>> {
    check_outcomes(dist.len(), params)?;
    check_distribution(dist)?;
    let max = dist.iter().copied().fold(T::zero(), T::max);
    let threshold = T::from_usize_lossy(params.d()) / T::from_usize_lossy(params.n());
    Ok(WitnessVerdict::decide("convolution_maxprob", None, max, threshold, Side::AtMost, Interpretation::Entangled))
}

fn check_outcomes(len: usize, params: &FrameParameters) -> Result<()> {
    if len != params.n() {
        return Err(Error::DimensionMismatch { expected: params.n(), found: len });
    }
    Ok(())
}

/// Square table `p_ij` (A outcome `i`, B outcome `j`) with row marginals `q_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    n: usize,
    table: Vec<T>,
    marginals: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    /// Validates a row-major `n × n` table: entries within tolerance of
    /// `[0, 1]` (then clamped) and total mass one.
    pub fn new(n: usize, table: Vec<T>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: table.len() });
        }
        if table.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidDistribution("non-finite joint probability".into()));
        }
        let tol = T::lit(T::DISTRIBUTION_TOL);
        let total: T = table.iter().copied().sum();
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidDistribution(format!("joint probabilities sum to {total}")));
        }
        if table.iter().any(|&p| p < -tol || p > T::one() + tol) {
            return Err(Error::InvalidDistribution("joint probability outside [0, 1]".into()));
        }
        let table: Vec<T> = table.into_iter().map(|p| p.max(T::zero()).min(T::one())).collect();
        let marginals = table.chunks(n).map(|row| row.iter().copied().sum()).collect();
        Ok(Self { n, table, marginals })
    }

    /// `p_ij = q_i r_j`.
    pub fn product(q: &[T], r: &[T]) -> Result<Self> {
        if q.len() != r.len() {
            return Err(Error::DimensionMismatch { expected: q.len(), found: r.len() });
        }
        let table = q.iter().flat_map(|&qi| r.iter().map(move |&rj| qi * rj)).collect();
        Self::new(q.len(), table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.table[i * self.n + j]
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.table[i * self.n..(i + 1) * self.n]
    }

    /// `q_i = Σ_j p_ij`.
    pub fn marginals(&self) -> &[T] {
        &self.marginals
    }

    /// `r_j = Σ_i p_ij`.
    pub fn column_marginals(&self) -> Vec<T> {
        (0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect()
    }
}

/// `p_jk = (d²/n²)⟨φ_j φ_k^*|ρ_AB|φ_j φ_k^*⟩`, the same frame on both sides
/// with conjugated vectors for B.
pub fn joint_etf_distribution<T: Real>(
    frame: &EquiangularTightFrame<T>,
    rho: &BipartiteDensityMatrix<T>,
) -> Result<JointDistribution<T>> {
    joint_distribution_two_frames(frame, frame, rho)
}

/// `p_jk = (dA dB/(nA nB))⟨φ_j ψ_k^*|ρ_AB|φ_j ψ_k^*⟩` for a frame `φ` on A and
/// `ψ` on B; both frames must have the same number of vectors.
pub fn joint_distribution_two_frames<T: Real>(
    frame_a: &EquiangularTightFrame<T>,
    frame_b: &EquiangularTightFrame<T>,
    rho: &BipartiteDensityMatrix<T>,
) -> Result<JointDistribution<T>> {
    if frame_a.d() != rho.d_a() {
        return Err(Error::DimensionMismatch { expected: rho.d_a(), found: frame_a.d() });
    }
    if frame_b.d() != rho.d_b() {
        return Err(Error::DimensionMismatch { expected: rho.d_b(), found: frame_b.d() });
    }
    if frame_a.n() != frame_b.n() {
        return Err(Error::DimensionMismatch { expected: frame_a.n(), found: frame_b.n() });
    }
    let weight = T::from_usize_lossy(frame_a.d() * frame_b.d()) / T::from_usize_lossy(frame_a.n() * frame_b.n());
    let conj_b: Vec<_> = frame_b.vectors().iter().map(conjugate_ket).collect();
    let mut table = Vec::with_capacity(frame_a.n() * frame_b.n());
    for phi in frame_a.vectors() {
        for psi in &conj_b {
            table.push(weight * rho.density().expectation(&phi.kron(psi))?);
        }
    }
    JointDistribution::new(frame_a.n(), table)
}

/// `G = Σ_j p_jj`.
pub fn correlation_g<T: Real>(joint: &JointDistribution<T>) -> T {
    (0..joint.n()).map(|j| joint.get(j, j)).sum()
}

/// `√(Sc + (1 − c) tr ρ_A²)·√(Sc + (1 − c) tr ρ_B²)/S²`, valid for product states.
pub fn g_separability_bound<T: Real>(params: &FrameParameters, purity_a: T, purity_b: T) -> Result<T> {
    let ia = ic_bound(params, purity_a)?;
    let ib = ic_bound(params, purity_b)?;
    Ok(ia.sqrt() * ib.sqrt())
}

/// `(d² − 2d + n)/(n² − n)`, valid for every separable state.
pub fn g_bound_si<T: Real>(params: &FrameParameters) -> T {
    ratio_as(params.frame_state_coincidence())
}

/// Violated when `G > (d² − 2d + n)/(n² − n) + tol`.
pub fn correlation_test<T: Real>(joint: &JointDistribution<T>, params: &FrameParameters) -> Result<WitnessVerdict<T>> {
    check_outcomes(joint.n(), params)?;
    let g = correlation_g(joint);
    Ok(WitnessVerdict::decide("correlation_g", None, g, g_bound_si(params), Side::AtMost, Interpretation::Entangled))
}

/// `g_bound_si / G(Φ+) = (d − 2 + n/d)/(n − 1)`; below one whenever `n > d`.
pub fn detectability_ratio(d: usize, n: usize) -> Result<f64> {
    if d == 0 || n < d || n > d * d {
        return Err(Error::InvalidParameters { d, n, reason: "need d ≤ n ≤ d²" });
    }
    if n == 1 {
        return Ok(1.0);
    }
    let (df, nf) = (d as f64, n as f64);
    Ok((df - 2.0 + nf / df) / (nf - 1.0))
}

/// `(1 − Σ_ij p_ij^α q_i^{1−α})/(α − 1)`, i.e. `Σ_i q_i H_α(p_{·|i})`; rows
/// with `q_i = 0` are skipped and the conditional Shannon entropy is used
/// for `α` within the Shannon window of one.
pub fn steering_statistic<T: Real>(joint: &JointDistribution<T>, alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha <= T::lit(2.0)) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha.to_f64_lossy(), range: "(0, 2]" });
    }
    let rows = (0..joint.n()).map(|i| (joint.marginals()[i], joint.row(i))).filter(|(q, _)| *q > T::zero());
    if (alpha - T::one()).abs() <= T::lit(SHANNON_WINDOW) {
        let h = rows.flat_map(|(q, row)| row.iter().filter(|&&p| p > T::zero()).map(move |&p| -p * (p / q).ln())).sum();
        return Ok(h);
    }
    let power: T = rows.flat_map(|(q, row)| row.iter().map(move |&p| p.powf(alpha) * q.powf(T::one() - alpha))).sum();
    Ok((T::one() - power) / (alpha - T::one()))
}

/// Violated when the steering statistic falls below
/// `ln_α((n² − n)/(d² − 2d + n)) − tol`.
pub fn steering_test<T: Real>(
    joint: &JointDistribution<T>,
    alpha: T,
    params: &FrameParameters,
) -> Result<WitnessVerdict<T>> {
    check_outcomes(joint.n(), params)?;
    let threshold = tsallis_bound_si(params, alpha)?;
    let lhs = steering_statistic(joint, alpha)?;
    Ok(WitnessVerdict::decide(
        "steering_tsallis",
        Some(alpha),
        lhs,
        threshold,
        Side::AtLeast,
        Interpretation::Steerable,
    ))
}
