//! Uncertainty bounds for ETF measurements and their certification against
//! measured distributions.
//!
//! Every bound is a function of the exact frame parameters `(d, n, S, c)`
//! and, for state-dependent forms, of the purity `tr(ρ²)`. State-independent
//! forms (suffix `_si`) are computed from exact integer ratios.

use std::fmt;
use std::str::FromStr;

use crate::entropy::{
    alpha_log, binary_tsallis, distorted_distribution, renyi_entropy, tsallis_entropy, DetectionEfficiency, OrderAlpha,
};
use crate::frames::ratio_as;
use crate::frames::{EquiangularTightFrame, FrameParameters};
use crate::measurement::{outcome_distribution, povm_from_frame};
use crate::numerics::DensityMatrix;
use crate::{Error, Real, Result};

/// Certified inequalities may fail by at most this much before counting as violated.
pub const SLACK_TOL: f64 = 1e-9;
/// `|slack|` at or below this marks a bound as saturated.
pub const SATURATION_TOL: f64 = 1e-8;
/// Purity (and coincidence) inputs this close outside their range are clamped.
pub const CLAMP_TOL: f64 = 1e-12;
/// Inputs within this many machine epsilons above the lower end are taken as
/// exactly the lower end.
pub const LOWER_SNAP_ULPS: f64 = 16.0;

/// Direction of a certified inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSense {
    /// `achieved ≥ bound` (entropies); slack = achieved − bound.
    Lower,
    /// `achieved ≤ bound` (probabilities); slack = bound − achieved.
    Upper,
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub bound_name: &'static str,
    pub alpha: Option<OrderAlpha<T>>,
    pub eta: Option<T>,
    pub sense: BoundSense,
    pub bound_value: T,
    pub achieved_value: T,
    pub slack: T,
    pub saturated: bool,
}

impl<T: Real> BoundReport<T> {
    pub fn new(bound_name: &'static str, sense: BoundSense, bound_value: T, achieved_value: T) -> Self {
        let slack = match sense {
            BoundSense::Lower => achieved_value - bound_value,
            BoundSense::Upper => bound_value - achieved_value,
        };
        let saturated = slack.abs() <= T::lit(SATURATION_TOL);
        Self { bound_name, alpha: None, eta: None, sense, bound_value, achieved_value, slack, saturated }
    }

    fn with_alpha(mut self, alpha: OrderAlpha<T>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    fn with_eta(mut self, eta: T) -> Self {
        self.eta = Some(eta);
        self
    }

    /// `slack < −SLACK_TOL`.
    pub fn violated(&self) -> bool {
        self.slack < -T::lit(SLACK_TOL)
    }
}

fn clamp_into<T: Real>(name: &'static str, value: T, lo: T, hi: T, range: &'static str) -> Result<T> {
    let tol = T::lit(CLAMP_TOL);
    if !(value >= lo - tol && value <= hi + tol) {
        return Err(Error::OutOfRange { name, value: value.to_f64_lossy(), range });
    }
    // The caps grow like the square root of (value − lo); rounding noise of a
    // few ulps at the lower end would otherwise show up at the 1e-8 level.
    if value - lo <= T::lit(LOWER_SNAP_ULPS) * T::epsilon() {
        return Ok(lo);
    }
    Ok(value.min(hi))
}

fn clamp_purity<T: Real>(params: &FrameParameters, purity: T) -> Result<T> {
    let lo = T::one() / T::from_usize_lossy(params.d());
    clamp_into("purity", purity, lo, T::one(), "[1/d, 1]")
}

fn st<T: Real>(params: &FrameParameters) -> (T, T, T) {
    (params.tightness_as(), params.overlap_as(), T::from_usize_lossy(params.n()))
}

/// `Sc + (1 − c)·tr(ρ²)`.
fn coincidence_numerator<T: Real>(params: &FrameParameters, purity: T) -> T {
    let (s, c, _) = st::<T>(params);
    s * c + (T::one() - c) * purity
}

/// `S + √((n − 1)(1 − c))·√(n·tr(ρ²) − S)`.
fn max_prob_numerator<T: Real>(params: &FrameParameters, purity: T) -> T {
    let (s, c, n) = st::<T>(params);
    // n·tr ρ² − S = n·(tr ρ² − 1/d), written so that purity = 1/d gives exactly 0
    let radicand = (n * (purity - T::one() / T::from_usize_lossy(params.d()))).max(T::zero());
    s + ((n - T::one()) * (T::one() - c)).sqrt() * radicand.sqrt()
}

/// Upper bound on the index of coincidence, `(Sc + (1 − c)·tr ρ²)/S²`.
pub fn ic_bound<T: Real>(params: &FrameParameters, purity: T) -> Result<T> {
    let purity = clamp_purity(params, purity)?;
    let s = params.tightness_as::<T>();
    Ok(coincidence_numerator(params, purity) / (s * s))
}

/// Largest probability compatible with index of coincidence `ic` over `n` outcomes:
/// `(1 + √(n − 1)·√(n·ic − 1))/n`.
pub fn max_prob_bound_ic<T: Real>(ic: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::Invalid("no outcomes"));
    }
    let nt = T::from_usize_lossy(n);
    let ic = clamp_into("index of coincidence", ic, T::one() / nt, T::one(), "[1/n, 1]")?;
    let radicand = (nt * ic - T::one()).max(T::zero());
    Ok((T::one() + (nt - T::one()).sqrt() * radicand.sqrt()) / nt)
}

/// `min((S + √((n − 1)(1 − c))·√(n·tr ρ² − S))/(nS), d/n)`.
pub fn max_prob_bound_purity<T: Real>(params: &FrameParameters, purity: T) -> Result<T> {
    let purity = clamp_purity(params, purity)?;
    let (s, _, n) = st::<T>(params);
    let cap = T::from_usize_lossy(params.d()) / n;
    Ok((max_prob_numerator(params, purity) / (n * s)).min(cap))
}

/// Min-entropy bound `ln(nS) − ln(S + √((n − 1)(1 − c))·√(n·tr ρ² − S))`.
pub fn min_entropy_bound<T: Real>(params: &FrameParameters, purity: T) -> Result<T> {
    let purity = clamp_purity(params, purity)?;
    let (s, _, n) = st::<T>(params);
    Ok((n * s).ln() - max_prob_numerator(params, purity).ln())
}

/// Collision-entropy bound `2 ln S − ln(Sc + (1 − c)·tr ρ²)`.
pub fn collision_bound<T: Real>(params: &FrameParameters, purity: T) -> Result<T> {
    let purity = clamp_purity(params, purity)?;
    let s = params.tightness_as::<T>();
    Ok(T::lit(2.0) * s.ln() - coincidence_numerator(params, purity).ln())
}

/// `ln((n² − n)/(d² − 2d + n))`.
pub fn collision_bound_si<T: Real>(params: &FrameParameters) -> T {
    ratio_as::<T>(params.coincidence_reciprocal()).ln()
}

fn renyi_alpha<T: Real>(alpha: OrderAlpha<T>) -> Result<OrderAlpha<T>> {
    if let OrderAlpha::Finite(a) = alpha {
        if !(a >= T::lit(2.0)) {
            return Err(Error::OutOfRange { name: "alpha", value: a.to_f64_lossy(), range: "[2, ∞]" });
        }
    }
    Ok(alpha)
}

/// Rényi bound for `α ∈ [2, ∞]`:
/// `[α ln S + (α − 2) ln n − ln(Sc + (1 − c) tr ρ²)]/(α − 1)
///   − (α − 2)/(α − 1)·ln(S + √((n − 1)(1 − c))·√(n tr ρ² − S))`.
pub fn renyi_bound<T: Real>(params: &FrameParameters, purity: T, alpha: OrderAlpha<T>) -> Result<T> {
    let a = match renyi_alpha(alpha)? {
        OrderAlpha::Infinity => return min_entropy_bound(params, purity),
        OrderAlpha::Finite(a) => a,
    };
    let purity = clamp_purity(params, purity)?;
    let (s, _, n) = st::<T>(params);
    let two = T::lit(2.0);
    let am1 = a - T::one();
    let first = (a * s.ln() + (a - two) * n.ln() - coincidence_numerator(params, purity).ln()) / am1;
    Ok(first - (a - two) / am1 * max_prob_numerator(params, purity).ln())
}

/// State-independent Rényi bound
/// `ln n − (α − 2) ln d/(α − 1) + ln((n − 1)/(d² − 2d + n))/(α − 1)`; `ln(n/d)` at `α = ∞`.
pub fn renyi_bound_si<T: Real>(params: &FrameParameters, alpha: OrderAlpha<T>) -> Result<T> {
    let n = T::from_usize_lossy(params.n());
    let d = T::from_usize_lossy(params.d());
    let a = match renyi_alpha(alpha)? {
        OrderAlpha::Infinity => return Ok((n / d).ln()),
        OrderAlpha::Finite(a) => a,
    };
    let am1 = a - T::one();
    // (n − 1)/(d² − 2d + n) = n·(d² − 2d + n)/(n² − n) inverted, kept exact
    let ratio = ratio_as::<T>(params.coincidence_reciprocal()) / n;
    Ok(n.ln() - (a - T::lit(2.0)) * d.ln() / am1 + ratio.ln() / am1)
}

fn tsallis_alpha<T: Real>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha <= T::lit(2.0)) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha.to_f64_lossy(), range: "(0, 2]" });
    }
    Ok(alpha)
}

/// Tsallis bound `ln_α(S²/(Sc + (1 − c) tr ρ²))` for `α ∈ (0, 2]`.
pub fn tsallis_bound<T: Real>(params: &FrameParameters, purity: T, alpha: T) -> Result<T> {
    let alpha = tsallis_alpha(alpha)?;
    let purity = clamp_purity(params, purity)?;
    let s = params.tightness_as::<T>();
    alpha_log(s * s / coincidence_numerator(params, purity), alpha)
}

/// `ln_α((n² − n)/(d² − 2d + n))` for `α ∈ (0, 2]`.
pub fn tsallis_bound_si<T: Real>(params: &FrameParameters, alpha: T) -> Result<T> {
    let alpha = tsallis_alpha(alpha)?;
    alpha_log(ratio_as::<T>(params.coincidence_reciprocal()), alpha)
}

/// `η^α·tsallis_bound + h_α(η)`, the bound on the Tsallis entropy of the
/// distribution with an added no-click outcome.
pub fn inefficiency_tsallis_bound<T: Real>(
    params: &FrameParameters,
    purity: T,
    alpha: T,
    eta: DetectionEfficiency<T>,
) -> Result<T> {
    let e = eta.value();
    Ok(e.powf(alpha) * tsallis_bound(params, purity, alpha)? + binary_tsallis(e, alpha)?)
}

/// Groups of bounds evaluated by [`certify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    Coincidence,
    MaxProbability,
    MinEntropy,
    Collision,
    Renyi,
    Tsallis,
    Inefficiency,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 7] = [
        Self::Coincidence,
        Self::MaxProbability,
        Self::MinEntropy,
        Self::Collision,
        Self::Renyi,
        Self::Tsallis,
        Self::Inefficiency,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Coincidence => "coincidence",
            Self::MaxProbability => "maxprob",
            Self::MinEntropy => "min-entropy",
            Self::Collision => "collision",
            Self::Renyi => "renyi",
            Self::Tsallis => "tsallis",
            Self::Inefficiency => "inefficiency",
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or(Error::Invalid("unknown bound family"))
    }
}

/// Evaluates the requested families on the distribution of `rho` measured
/// with the POVM of `frame`.
///
/// Rényi rows use the orders of `alphas` in `[2, ∞]`, Tsallis rows those in
/// `(0, 2]`; inefficiency rows need `eta` and reuse the Tsallis orders.
pub fn certify<T: Real>(
    frame: &EquiangularTightFrame<T>,
    rho: &DensityMatrix<T>,
    alphas: &[OrderAlpha<T>],
    families: &[BoundFamily],
    eta: Option<DetectionEfficiency<T>>,
) -> Result<Vec<BoundReport<T>>> {
    let params = frame.params();
    let povm = povm_from_frame(frame)?;
    let dist = outcome_distribution(&povm, rho)?;
    let p = dist.probs();
    let purity = rho.purity();
    let ic = dist.index_of_coincidence();
    let pmax = dist.max_probability();
    let two = T::lit(2.0);

    let renyi_orders: Vec<_> = alphas.iter().copied().filter(|a| a.as_float() >= two).collect();
    let tsallis_orders: Vec<T> =
        alphas.iter().filter_map(|a| a.finite()).filter(|&a| a > T::zero() && a <= two).collect();

    let mut out = Vec::new();
    for family in families {
        match family {
            BoundFamily::Coincidence => {
                out.push(BoundReport::new("index_of_coincidence", BoundSense::Upper, ic_bound(params, purity)?, ic));
            }
            BoundFamily::MaxProbability => {
                out.push(BoundReport::new(
                    "max_prob_coincidence",
                    BoundSense::Upper,
                    max_prob_bound_ic(ic, params.n())?,
                    pmax,
                ));
                out.push(BoundReport::new("max_prob", BoundSense::Upper, max_prob_bound_purity(params, purity)?, pmax));
                let cap = T::from_usize_lossy(params.d()) / T::from_usize_lossy(params.n());
                out.push(BoundReport::new("max_prob_si", BoundSense::Upper, cap, pmax));
            }
            BoundFamily::MinEntropy => {
                let r = renyi_entropy(p, OrderAlpha::Infinity)?;
                out.push(BoundReport::new("min_entropy", BoundSense::Lower, min_entropy_bound(params, purity)?, r));
                out.push(BoundReport::new(
                    "min_entropy_si",
                    BoundSense::Lower,
                    renyi_bound_si(params, OrderAlpha::Infinity)?,
                    r,
                ));
            }
            BoundFamily::Collision => {
                let r = renyi_entropy(p, OrderAlpha::Finite(two))?;
                out.push(BoundReport::new("collision", BoundSense::Lower, collision_bound(params, purity)?, r));
                out.push(BoundReport::new("collision_si", BoundSense::Lower, collision_bound_si(params), r));
            }
            BoundFamily::Renyi => {
                for &a in &renyi_orders {
                    let r = renyi_entropy(p, a)?;
                    out.push(
                        BoundReport::new("renyi", BoundSense::Lower, renyi_bound(params, purity, a)?, r).with_alpha(a),
                    );
                    out.push(
                        BoundReport::new("renyi_si", BoundSense::Lower, renyi_bound_si(params, a)?, r).with_alpha(a),
                    );
                }
            }
            BoundFamily::Tsallis => {
                for &a in &tsallis_orders {
                    let h = tsallis_entropy(p, a)?;
                    let order = OrderAlpha::Finite(a);
                    out.push(
                        BoundReport::new("tsallis", BoundSense::Lower, tsallis_bound(params, purity, a)?, h)
                            .with_alpha(order),
                    );
                    out.push(
                        BoundReport::new("tsallis_si", BoundSense::Lower, tsallis_bound_si(params, a)?, h)
                            .with_alpha(order),
                    );
                }
            }
            BoundFamily::Inefficiency => {
                let Some(eta) = eta else { continue };
                let distorted = distorted_distribution(p, eta)?;
                for &a in &tsallis_orders {
                    let h = tsallis_entropy(&distorted, a)?;
                    let bound = inefficiency_tsallis_bound(params, purity, a, eta)?;
                    out.push(
                        BoundReport::new("tsallis_inefficiency", BoundSense::Lower, bound, h)
                            .with_alpha(OrderAlpha::Finite(a))
                            .with_eta(eta.value()),
                    );
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{etf_parameters, optimize_etf, orthonormal_basis_frame, simplex_etf, OptimizeOptions};
    use crate::measurement::index_of_coincidence;
    use crate::numerics::{random_density, ComplexVector};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn tetrahedron() -> EquiangularTightFrame<f64> {
        let a = (1.0f64 / 3.0).sqrt();
        let b = (2.0f64 / 3.0).sqrt();
        let mut vectors = vec![ComplexVector::new(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]).unwrap()];
        for k in 0..3 {
            let phase = Complex::from_polar(b, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            vectors.push(ComplexVector::new(vec![Complex::new(a, 0.0), phase]).unwrap());
        }
        EquiangularTightFrame::new(vectors).unwrap()
    }

    fn frames() -> Vec<EquiangularTightFrame<f64>> {
        let mut out = vec![orthonormal_basis_frame(3).unwrap(), tetrahedron()];
        out.extend((2..=5).map(|d| simplex_etf(d).unwrap()));
        out
    }

    #[test]
    fn ic_bound_examples() {
        let p = etf_parameters(2, 4).unwrap();
        assert_abs_diff_eq!(ic_bound(&p, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(ic_bound(&p, 1.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        let p = etf_parameters(3, 5).unwrap();
        assert_abs_diff_eq!(ic_bound(&p, 1.0).unwrap(), 8.0 / 20.0, epsilon = 1e-15);
        let sic = etf_parameters(3, 9).unwrap();
        for purity in [1.0 / 3.0, 0.5, 0.8, 1.0] {
            assert_abs_diff_eq!(ic_bound(&sic, purity).unwrap(), (1.0 + purity) / 12.0, epsilon = 1e-15);
        }
        assert!(ic_bound(&p, 0.2).is_err());
        assert!(ic_bound(&p, 1.01).is_err());
        assert_abs_diff_eq!(ic_bound(&p, 1.0 + 1e-13).unwrap(), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn max_prob_examples() {
        assert_abs_diff_eq!(max_prob_bound_ic(0.25, 4).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(max_prob_bound_ic(1.0 / 3.0, 4).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(max_prob_bound_ic(1.0, 4).unwrap(), 1.0, epsilon = 1e-15);
        assert!(max_prob_bound_ic(0.2, 4).is_err());
        assert!(max_prob_bound_ic(0.5, 0).is_err());

        let p = etf_parameters(2, 4).unwrap();
        assert_abs_diff_eq!(max_prob_bound_purity(&p, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(max_prob_bound_purity(&p, 1.0).unwrap(), 0.5, epsilon = 1e-15);
        let basis = etf_parameters(3, 3).unwrap();
        assert_abs_diff_eq!(max_prob_bound_purity(&basis, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        // uncapped branch agrees with d/n on pure states for every ETF shape
        for (d, n) in [(2, 3), (3, 7), (3, 9), (4, 7), (5, 11)] {
            let p = etf_parameters(d, n).unwrap();
            let (s, _, nt) = st::<f64>(&p);
            assert_abs_diff_eq!(max_prob_numerator(&p, 1.0) / (nt * s), d as f64 / n as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn min_entropy_and_collision_examples() {
        let p = etf_parameters(2, 4).unwrap();
        assert_abs_diff_eq!(min_entropy_bound(&p, 0.5).unwrap(), 4f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(min_entropy_bound(&p, 1.0).unwrap(), 2f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(collision_bound_si::<f64>(&p), 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(collision_bound(&p, 0.5).unwrap(), 4f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(collision_bound(&p, 1.0).unwrap(), 3f64.ln(), epsilon = 1e-14);
        assert_eq!(collision_bound_si::<f64>(&etf_parameters(4, 4).unwrap()), 0.0);
    }

    #[test]
    fn renyi_examples() {
        let p = etf_parameters(2, 4).unwrap();
        // S = 2, Sc + (1 − c) = 2/3 + 2/3, S + √(3·2/3)·√(4 − 2) = 4
        let direct = 0.5 * (3.0 * 2f64.ln() + 4f64.ln() - (4.0f64 / 3.0).ln()) - 0.5 * 4f64.ln();
        assert_abs_diff_eq!(renyi_bound(&p, 1.0, OrderAlpha::Finite(3.0)).unwrap(), direct, epsilon = 1e-14);
        assert_abs_diff_eq!(direct, 6f64.ln() / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(renyi_bound_si::<f64>(&p, OrderAlpha::Infinity).unwrap(), 2f64.ln(), epsilon = 1e-15);
        assert!(renyi_bound(&p, 1.0, OrderAlpha::Finite(1.5)).is_err());
        assert!(renyi_bound_si::<f64>(&p, OrderAlpha::Finite(1.9)).is_err());
    }

    #[test]
    fn renyi_reductions() {
        for (d, n) in [(2, 3), (2, 4), (3, 3), (3, 7), (3, 9), (4, 13), (5, 11)] {
            let p = etf_parameters(d, n).unwrap();
            for purity in [1.0 / d as f64, 0.6, 0.9, 1.0] {
                let purity = purity.max(1.0 / d as f64);
                let two = renyi_bound(&p, purity, OrderAlpha::Finite(2.0)).unwrap();
                assert_abs_diff_eq!(two, collision_bound(&p, purity).unwrap(), epsilon = 1e-12);
                let inf = renyi_bound(&p, purity, OrderAlpha::Infinity).unwrap();
                assert_abs_diff_eq!(inf, min_entropy_bound(&p, purity).unwrap(), epsilon = 1e-12);
                let far = renyi_bound(&p, purity, OrderAlpha::Finite(1e9)).unwrap();
                assert_abs_diff_eq!(far, inf, epsilon = 1e-6);
            }
            let si2 = renyi_bound_si::<f64>(&p, OrderAlpha::Finite(2.0)).unwrap();
            assert_abs_diff_eq!(si2, collision_bound_si::<f64>(&p), epsilon = 1e-12);
            let far = renyi_bound_si::<f64>(&p, OrderAlpha::Finite(1e9)).unwrap();
            assert_abs_diff_eq!(far, renyi_bound_si::<f64>(&p, OrderAlpha::Infinity).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn tsallis_examples() {
        let p = etf_parameters(2, 4).unwrap();
        assert_abs_diff_eq!(tsallis_bound_si::<f64>(&p, 1.0).unwrap(), 3f64.ln(), epsilon = 1e-15);
        assert_eq!(tsallis_bound_si::<f64>(&etf_parameters(3, 3).unwrap(), 0.5).unwrap(), 0.0);
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let expected = alpha_log(4.0, alpha).unwrap();
            assert_abs_diff_eq!(tsallis_bound(&p, 0.5, alpha).unwrap(), expected, epsilon = 1e-14);
        }
        assert!(tsallis_bound(&p, 1.0, 0.0).is_err());
        assert!(tsallis_bound_si::<f64>(&p, 2.5).is_err());
    }

    #[test]
    fn inefficiency_examples() {
        let p = etf_parameters(2, 4).unwrap();
        for alpha in [0.5, 1.0, 2.0] {
            let one = DetectionEfficiency::new(1.0).unwrap();
            let zero = DetectionEfficiency::new(0.0).unwrap();
            assert_abs_diff_eq!(
                inefficiency_tsallis_bound(&p, 0.8, alpha, one).unwrap(),
                tsallis_bound(&p, 0.8, alpha).unwrap(),
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(inefficiency_tsallis_bound(&p, 0.8, alpha, zero).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn family_parsing() {
        for f in BoundFamily::ALL {
            assert_eq!(f.name().parse::<BoundFamily>().unwrap(), f);
        }
        assert!("nope".parse::<BoundFamily>().is_err());
    }

    fn alpha_grid() -> Vec<OrderAlpha<f64>> {
        [0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0].into_iter().map(OrderAlpha::Finite).chain([OrderAlpha::Infinity]).collect()
    }

    #[test]
    fn maximally_mixed_saturates_state_dependent_bounds() {
        let eta = DetectionEfficiency::new(0.8).unwrap();
        for frame in frames() {
            let rho = DensityMatrix::maximally_mixed(frame.d());
            let rows = certify(&frame, &rho, &alpha_grid(), &BoundFamily::ALL, Some(eta)).unwrap();
            assert!(rows.len() > 20);
            for row in rows.iter().filter(|r| !r.bound_name.ends_with("_si")) {
                assert!(row.slack.abs() <= 1e-9, "{} {:?}: {}", row.bound_name, row.alpha, row.slack);
                assert!(row.saturated);
            }
        }
    }

    #[test]
    fn frame_states_saturate_the_four_relations() {
        for frame in frames() {
            for v in frame.vectors() {
                let rho = DensityMatrix::pure(v).unwrap();
                let rows = certify(&frame, &rho, &[], &BoundFamily::ALL, None).unwrap();
                for name in ["index_of_coincidence", "max_prob", "min_entropy", "collision"] {
                    let row = rows.iter().find(|r| r.bound_name == name).unwrap();
                    assert!(row.saturated, "{name} (d={}, n={}): slack {}", frame.d(), frame.n(), row.slack);
                }
                assert!(rows.iter().all(|r| !r.violated()));
            }
        }
    }

    #[test]
    fn random_states_never_violate() {
        let grid = alpha_grid();
        let eta = DetectionEfficiency::new(0.3).unwrap();
        for frame in frames() {
            let d = frame.d();
            for seed in 0..60u64 {
                let rank = 1 + (seed as usize) % d;
                let rho = random_density::<f64>(d, rank, seed).unwrap();
                for row in certify(&frame, &rho, &grid, &BoundFamily::ALL, Some(eta)).unwrap() {
                    assert!(!row.violated(), "{} {:?}: {}", row.bound_name, row.alpha, row.slack);
                }
            }
        }
    }

    #[test]
    fn sic_equality_holds_for_all_states() {
        let frame = tetrahedron();
        let povm = povm_from_frame(&frame).unwrap();
        for seed in 0..50u64 {
            let rho = random_density::<f64>(2, 1 + seed as usize % 2, seed).unwrap();
            let ic = index_of_coincidence(&outcome_distribution(&povm, &rho).unwrap());
            assert_abs_diff_eq!(ic, (1.0 + rho.purity()) / 6.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn optimized_sic_sweep() {
        let found = optimize_etf::<f64>(3, 9, 7, &OptimizeOptions::default()).unwrap();
        let grid = alpha_grid();
        for seed in 0..40u64 {
            let rho = random_density::<f64>(3, 1 + seed as usize % 3, seed).unwrap();
            for row in certify(&found.frame, &rho, &grid, &BoundFamily::ALL, None).unwrap() {
                assert!(!row.violated(), "{} {:?}: {}", row.bound_name, row.alpha, row.slack);
            }
        }
    }

    #[test]
    fn inefficiency_slack_scales_with_eta() {
        let frame = simplex_etf::<f64>(3).unwrap();
        let povm = povm_from_frame(&frame).unwrap();
        for seed in 0..20u64 {
            let rho = random_density::<f64>(3, 2, seed).unwrap();
            let dist = outcome_distribution(&povm, &rho).unwrap();
            for alpha in [0.5, 1.0, 1.5, 2.0] {
                let original = tsallis_entropy(dist.probs(), alpha).unwrap()
                    - tsallis_bound(frame.params(), rho.purity(), alpha).unwrap();
                for eta in [0.0, 0.3, 0.8, 1.0] {
                    let e = DetectionEfficiency::new(eta).unwrap();
                    let distorted = distorted_distribution(dist.probs(), e).unwrap();
                    let slack = tsallis_entropy(&distorted, alpha).unwrap()
                        - inefficiency_tsallis_bound(frame.params(), rho.purity(), alpha, e).unwrap();
                    assert_abs_diff_eq!(slack, eta.powf(alpha) * original, epsilon = 1e-10);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn chain_of_probability_caps(seed in 0u64..10_000, which in 0usize..6) {
            let frame = &frames()[which];
            let d = frame.d();
            let rho = random_density::<f64>(d, 1 + seed as usize % d, seed).unwrap();
            let dist = outcome_distribution(&povm_from_frame(frame).unwrap(), &rho).unwrap();
            let ic = dist.index_of_coincidence();
            let via_ic = max_prob_bound_ic(ic, frame.n()).unwrap();
            prop_assert!(ic <= ic_bound(frame.params(), rho.purity()).unwrap() + 1e-9);
            prop_assert!(dist.max_probability() <= via_ic + 1e-9);
            prop_assert!(via_ic <= max_prob_bound_purity(frame.params(), rho.purity()).unwrap() + 1e-9);
        }

        #[test]
        fn bounds_decrease_with_purity(lo in 0.0f64..1.0, hi in 0.0f64..1.0, which in 0usize..5) {
            let shapes = [(2, 3), (2, 4), (3, 7), (3, 9), (4, 13)];
            let (d, n) = shapes[which];
            let p = etf_parameters(d, n).unwrap();
            let base = 1.0 / d as f64;
            let (a, b) = (base + (1.0 - base) * lo.min(hi), base + (1.0 - base) * lo.max(hi));
            prop_assert!(min_entropy_bound(&p, a).unwrap() >= min_entropy_bound(&p, b).unwrap() - 1e-12);
            prop_assert!(collision_bound(&p, a).unwrap() >= collision_bound(&p, b).unwrap() - 1e-12);
            prop_assert!(collision_bound(&p, b).unwrap() >= collision_bound_si::<f64>(&p) - 1e-12);
            prop_assert!(tsallis_bound(&p, b, 0.7).unwrap() >= tsallis_bound_si::<f64>(&p, 0.7).unwrap() - 1e-12);
        }
    }
}
