//! Rényi and Tsallis entropies (in nats), the α-logarithm, and the
//! no-click distortion of a distribution under finite detection efficiency.

use std::fmt;

use crate::{Error, Real, Result};

/// Orders within this distance of 1 are evaluated by the Shannon branch.
pub const SHANNON_WINDOW: f64 = 1e-6;

/// Entropic order `α > 0`, or `∞` as a distinguished value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderAlpha<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> OrderAlpha<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_infinite() && value > T::zero() {
            return Ok(Self::Infinity);
        }
        if !(value > T::zero()) || !value.is_finite() {
            return Err(Error::OutOfRange { name: "alpha", value: value.to_f64_lossy(), range: "(0, ∞]" });
        }
        Ok(Self::Finite(value))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            Self::Finite(a) => Some(a),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// `α` as a float, `+∞` for the distinguished order.
    pub fn as_float(&self) -> T {
        self.finite().unwrap_or_else(T::infinity)
    }
}

impl<T: Real> fmt::Display for OrderAlpha<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(a) => write!(f, "{a}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl<T: Real> std::str::FromStr for OrderAlpha<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            other => {
                let v: f64 = other.parse().map_err(|_| Error::Invalid("alpha must be a positive number or 'inf'"))?;
                Self::new(T::lit(v))
            }
        }
    }
}

/// Detection efficiency `η ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DetectionEfficiency<T>(T);

impl<T: Real> DetectionEfficiency<T> {
    pub fn new(eta: T) -> Result<Self> {
        if !(eta >= T::zero() && eta <= T::one()) {
            return Err(Error::OutOfRange { name: "eta", value: eta.to_f64_lossy(), range: "[0, 1]" });
        }
        Ok(Self(eta))
    }

    pub fn value(&self) -> T {
        self.0
    }
}

fn near_one<T: Real>(alpha: T) -> bool {
    (alpha - T::one()).abs() <= T::lit(SHANNON_WINDOW)
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::OutOfRange { name: "alpha", value: alpha.to_f64_lossy(), range: "(0, ∞)" });
    }
    Ok(())
}

pub(crate) fn check_distribution<T: Real>(p: &[T]) -> Result<()> {
    let tol = T::lit(T::DISTRIBUTION_TOL);
    if p.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < -tol) {
        return Err(Error::InvalidDistribution(format!("entry {bad}")));
    }
    let sum: T = p.iter().copied().sum();
    if (sum - T::one()).abs() > tol {
        return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// `ln_α(ξ) = (ξ^{1−α} − 1)/(1 − α)`, `ln ξ` at `α = 1`.
pub fn alpha_log<T: Real>(xi: T, alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    if !(xi > T::zero()) {
        return Err(Error::OutOfRange { name: "xi", value: xi.to_f64_lossy(), range: "(0, ∞)" });
    }
    if near_one(alpha) {
        return Ok(xi.ln());
    }
    let k = T::one() - alpha;
    Ok((xi.powf(k) - T::one()) / k)
}

/// `−Σ p ln p` with `0 ln 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &[T]) -> Result<T> {
    check_distribution(p)?;
    Ok(shannon_unchecked(p))
}

fn shannon_unchecked<T: Real>(p: &[T]) -> T {
    p.iter().filter(|&&x| x > T::zero()).map(|&x| -x * x.ln()).sum()
}

fn power_sum<T: Real>(p: &[T], alpha: T) -> T {
    p.iter().filter(|&&x| x > T::zero()).map(|&x| x.powf(alpha)).sum()
}

/// `R_α(p) = ln(Σ p^α)/(1 − α)`; Shannon at `α = 1`, `−ln max p` at `α = ∞`.
pub fn renyi_entropy<T: Real>(p: &[T], alpha: OrderAlpha<T>) -> Result<T> {
    check_distribution(p)?;
    match alpha {
        OrderAlpha::Infinity => {
            let max = p.iter().copied().fold(T::zero(), T::max);
            Ok(-max.ln())
        }
        OrderAlpha::Finite(a) => {
            check_alpha(a)?;
            if near_one(a) {
                return Ok(shannon_unchecked(p));
            }
            Ok(power_sum(p, a).ln() / (T::one() - a))
        }
    }
}

/// `H_α(p) = (Σ p^α − 1)/(1 − α)`; Shannon at `α = 1`.
pub fn tsallis_entropy<T: Real>(p: &[T], alpha: T) -> Result<T> {
    check_distribution(p)?;
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(shannon_unchecked(p));
    }
    Ok((power_sum(p, alpha) - T::one()) / (T::one() - alpha))
}

/// `(η p_1, …, η p_n, 1 − η)`: the last entry is the no-click outcome.
pub fn distorted_distribution<T: Real>(p: &[T], eta: DetectionEfficiency<T>) -> Result<Vec<T>> {
    check_distribution(p)?;
    let e = eta.value();
    let mut out: Vec<T> = p.iter().map(|&x| e * x).collect();
    out.push(T::one() - e);
    Ok(out)
}

/// `h_α(η) = (η^α + (1 − η)^α − 1)/(1 − α)`, binary Shannon entropy at `α = 1`.
pub fn binary_tsallis<T: Real>(eta: T, alpha: T) -> Result<T> {
    let eta = DetectionEfficiency::new(eta)?.value();
    tsallis_entropy(&[eta, T::one() - eta], alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn random_distribution(weights: &[f64]) -> Vec<f64> {
        let total: f64 = weights.iter().sum();
        weights.iter().map(|w| w / total).collect()
    }

    fn alphas() -> Vec<OrderAlpha<f64>> {
        [0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 7.0, 30.0]
            .iter()
            .map(|&a| OrderAlpha::Finite(a))
            .chain([OrderAlpha::Infinity])
            .collect()
    }

    #[test]
    fn alpha_log_examples() {
        for a in [0.3, 1.0, 2.0, 5.0] {
            assert_eq!(alpha_log(1.0, a).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(alpha_log(std::f64::consts::E, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_log(2.0, 2.0).unwrap(), 0.5, epsilon = 1e-15);
        assert!(alpha_log(0.0, 2.0).is_err());
        assert!(alpha_log(-1.0, 2.0).is_err());
        assert!(alpha_log(2.0, 0.0).is_err());
    }

    #[test]
    fn alpha_log_is_continuous_at_one() {
        for xi in [0.2, 1.7, 12.0] {
            let at_one = alpha_log(xi, 1.0).unwrap();
            for a in [1.0 - 2e-6, 1.0 + 2e-6] {
                assert_abs_diff_eq!(alpha_log(xi, a).unwrap(), at_one, epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn renyi_examples() {
        for n in [2usize, 3, 7] {
            let u = vec![1.0 / n as f64; n];
            for a in alphas() {
                assert_abs_diff_eq!(renyi_entropy(&u, a).unwrap(), (n as f64).ln(), epsilon = 1e-12);
            }
        }
        let det = [0.0, 1.0, 0.0];
        for a in alphas() {
            assert_abs_diff_eq!(renyi_entropy(&det, a).unwrap(), 0.0, epsilon = 1e-15);
        }
        // Σ p² = 1/4 + 1/16 + 1/16 = 3/8
        let p = [0.5, 0.25, 0.25];
        assert_abs_diff_eq!(renyi_entropy(&p, OrderAlpha::Finite(2.0)).unwrap(), -(3.0f64 / 8.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(renyi_entropy(&p, OrderAlpha::Infinity).unwrap(), 2f64.ln(), epsilon = 1e-15);
        assert!(renyi_entropy(&[0.5, 0.6], OrderAlpha::Finite(2.0)).is_err());
    }

    #[test]
    fn tsallis_examples() {
        assert_abs_diff_eq!(tsallis_entropy(&[1.0 / 3.0; 3], 2.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(tsallis_entropy(&[1.0, 0.0], 0.5).unwrap(), 0.0);
        let p = [0.1, 0.2, 0.3, 0.4];
        let shannon = shannon_entropy(&p).unwrap();
        for a in [1.0 - 1e-7, 1.0 + 1e-7] {
            assert_abs_diff_eq!(tsallis_entropy(&p, a).unwrap(), shannon, epsilon = 1e-8);
        }
        // just outside the window the closed form takes over and still agrees
        for a in [1.0 - 1e-5, 1.0 + 1e-5] {
            assert_abs_diff_eq!(tsallis_entropy(&p, a).unwrap(), shannon, epsilon = 1e-4);
        }
        for n in [2usize, 5] {
            for a in [0.5, 1.0, 1.5, 2.0] {
                let u = vec![1.0 / n as f64; n];
                assert_abs_diff_eq!(tsallis_entropy(&u, a).unwrap(), alpha_log(n as f64, a).unwrap(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn distortion_examples() {
        let p = [0.2, 0.8];
        assert_eq!(distorted_distribution(&p, DetectionEfficiency::new(1.0).unwrap()).unwrap(), vec![0.2, 0.8, 0.0]);
        assert_eq!(distorted_distribution(&p, DetectionEfficiency::new(0.0).unwrap()).unwrap(), vec![0.0, 0.0, 1.0]);
        assert!(DetectionEfficiency::new(1.2).is_err());
        assert!(DetectionEfficiency::new(-0.1).is_err());
        assert!(DetectionEfficiency::new(f64::NAN).is_err());
    }

    #[test]
    fn binary_tsallis_examples() {
        assert_eq!(binary_tsallis(0.0, 2.0).unwrap(), 0.0);
        assert_eq!(binary_tsallis(1.0, 0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_tsallis(0.5, 2.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(binary_tsallis(0.5, 1.0).unwrap(), 2f64.ln(), epsilon = 1e-15);
        for eta in [0.1, 0.3, 0.77] {
            assert_abs_diff_eq!(
                binary_tsallis(eta, 1.5).unwrap(),
                binary_tsallis(1.0 - eta, 1.5).unwrap(),
                epsilon = 1e-15
            );
        }
        assert!(binary_tsallis(1.5, 2.0).is_err());
    }

    #[test]
    fn order_parsing() {
        assert_eq!("inf".parse::<OrderAlpha<f64>>().unwrap(), OrderAlpha::Infinity);
        assert_eq!("2.5".parse::<OrderAlpha<f64>>().unwrap(), OrderAlpha::Finite(2.5));
        assert!("0".parse::<OrderAlpha<f64>>().is_err());
        assert!("x".parse::<OrderAlpha<f64>>().is_err());
        assert_eq!(OrderAlpha::<f64>::new(f64::INFINITY).unwrap(), OrderAlpha::Infinity);
    }

    proptest! {
        #[test]
        fn renyi_is_nonincreasing(weights in prop::collection::vec(0.0f64..1.0, 2..12)) {
            prop_assume!(weights.iter().sum::<f64>() > 1e-6);
            let p = random_distribution(&weights);
            let grid = alphas();
            for w in grid.windows(2) {
                let lo = renyi_entropy(&p, w[0]).unwrap();
                let hi = renyi_entropy(&p, w[1]).unwrap();
                prop_assert!(lo >= hi - 1e-10, "{} -> {}: {lo} < {hi}", w[0], w[1]);
            }
        }

        #[test]
        fn renyi_interpolation_above_two(weights in prop::collection::vec(0.0f64..1.0, 2..12), alpha in 2.0f64..64.0) {
            prop_assume!(weights.iter().sum::<f64>() > 1e-6);
            let p = random_distribution(&weights);
            let r = renyi_entropy(&p, OrderAlpha::Finite(alpha)).unwrap();
            let r2 = renyi_entropy(&p, OrderAlpha::Finite(2.0)).unwrap();
            let rinf = renyi_entropy(&p, OrderAlpha::Infinity).unwrap();
            let rhs = (alpha - 2.0) / (alpha - 1.0) * rinf + r2 / (alpha - 1.0);
            prop_assert!(r >= rhs - 1e-10);
        }

        #[test]
        fn tsallis_dominates_alpha_log_of_inverse_coincidence(weights in prop::collection::vec(0.0f64..1.0, 2..12), alpha in 0.05f64..=2.0) {
            prop_assume!(weights.iter().sum::<f64>() > 1e-6);
            let p = random_distribution(&weights);
            let ic: f64 = p.iter().map(|x| x * x).sum();
            prop_assert!(tsallis_entropy(&p, alpha).unwrap() >= alpha_log(1.0 / ic, alpha).unwrap() - 1e-10);
        }

        #[test]
        fn inefficiency_identity(weights in prop::collection::vec(0.0f64..1.0, 2..12), eta in 0.0f64..=1.0, alpha in 0.05f64..=2.0) {
            prop_assume!(weights.iter().sum::<f64>() > 1e-6);
            let p = random_distribution(&weights);
            let e = DetectionEfficiency::new(eta).unwrap();
            let lhs = tsallis_entropy(&distorted_distribution(&p, e).unwrap(), alpha).unwrap();
            let rhs = eta.powf(alpha) * tsallis_entropy(&p, alpha).unwrap() + binary_tsallis(eta, alpha).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
        }

        #[test]
        fn extremes_on_deterministic_and_uniform(n in 2usize..10, k in 0usize..10, alpha in 0.1f64..5.0) {
            let mut det = vec![0.0; n];
            det[k % n] = 1.0;
            let u = vec![1.0 / n as f64; n];
            prop_assert_eq!(tsallis_entropy(&det, alpha).unwrap(), 0.0);
            prop_assert_eq!(renyi_entropy(&det, OrderAlpha::Finite(alpha)).unwrap().abs(), 0.0);
            let mut skew = vec![0.5 / (n - 1) as f64; n];
            skew[0] = 0.5;
            prop_assert!(tsallis_entropy(&u, alpha).unwrap() >= tsallis_entropy(&skew, alpha).unwrap() - 1e-12);
            prop_assert!(renyi_entropy(&u, OrderAlpha::Finite(alpha)).unwrap() >= renyi_entropy(&skew, OrderAlpha::Finite(alpha)).unwrap() - 1e-12);
        }
    }
}
