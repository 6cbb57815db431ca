use num_rational::Ratio;

use crate::{Error, Real, Result};

/// Exact parameters `(d, n, S, c)` of an equiangular tight frame.
///
/// `S = n/d` is the frame-operator eigenvalue and `c = (n − d)/((n − 1)d)`
/// the common squared overlap. Both are kept as exact rationals; convert with
/// [`FrameParameters::tightness_as`] / [`FrameParameters::overlap_as`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrameParameters {
    d: usize,
    n: usize,
    tightness: Ratio<u64>,
    overlap: Ratio<u64>,
}

/// Parameters of an `n`-vector ETF in dimension `d`.
///
/// Requires `1 ≤ d ≤ n ≤ d²`. In dimension one every set of unimodular scalars
/// is trivially equiangular with `c = 1`, so `d = 1` admits any `n ≥ 1`.
pub fn etf_parameters(d: usize, n: usize) -> Result<FrameParameters> {
    if d == 0 {
        return Err(Error::InvalidParameters { d, n, reason: "dimension must be positive" });
    }
    if n < d {
        return Err(Error::InvalidParameters { d, n, reason: "fewer vectors than the dimension" });
    }
    if d > 1 && n > d * d {
        return Err(Error::InvalidParameters { d, n, reason: "more than d² vectors" });
    }
    let (d64, n64) = (d as u64, n as u64);
    let tightness = Ratio::new(n64, d64);
    let overlap = if n == d { Ratio::from_integer(0) } else { Ratio::new(n64 - d64, (n64 - 1) * d64) };
    Ok(FrameParameters { d, n, tightness, overlap })
}

impl FrameParameters {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S = n/d`.
    pub fn tightness(&self) -> Ratio<u64> {
        self.tightness
    }

    /// `c = (n − d)/((n − 1)d)`.
    pub fn overlap(&self) -> Ratio<u64> {
        self.overlap
    }

    pub fn tightness_as<T: Real>(&self) -> T {
        ratio_as(self.tightness)
    }

    pub fn overlap_as<T: Real>(&self) -> T {
        ratio_as(self.overlap)
    }

    /// Index of coincidence produced by any frame state,
    /// `(d² − 2d + n)/(n² − n)` (equal to 1 when `n = 1`).
    pub fn frame_state_coincidence(&self) -> Ratio<u64> {
        let (d, n) = (self.d as u64, self.n as u64);
        if n == 1 {
            return Ratio::from_integer(1);
        }
        Ratio::new(d * d + n - 2 * d, n * n - n)
    }

    /// `(n² − n)/(d² − 2d + n)`, the reciprocal of [`Self::frame_state_coincidence`].
    pub fn coincidence_reciprocal(&self) -> Ratio<u64> {
        self.frame_state_coincidence().recip()
    }

    /// Parameters `(n − d, n)` of the Naimark complement.
    pub fn complement(&self) -> Result<FrameParameters> {
        if self.n == self.d {
            return Err(Error::InvalidParameters { d: self.d, n: self.n, reason: "n = d has no complement" });
        }
        etf_parameters(self.n - self.d, self.n)
    }

    /// `n = d²`.
    pub fn is_sic(&self) -> bool {
        self.n == self.d * self.d
    }
}

pub(crate) fn ratio_as<T: Real>(r: Ratio<u64>) -> T {
    T::from_u64(*r.numer()).expect("u64 numerator") / T::from_u64(*r.denom()).expect("u64 denominator")
}
