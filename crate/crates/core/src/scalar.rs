use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the numerical code is generic over.
///
/// The tolerance constants are the defaults used for validation checks, for
/// identity residuals (`‖UU† − I‖`, frame-operator residuals, ...) and for
/// the normalization of probability vectors.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    const VALIDATION_TOL: f64;
    const IDENTITY_TOL: f64;
    /// Allowed `|Σ p − 1|` for probability vectors.
    const DISTRIBUTION_TOL: f64;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const VALIDATION_TOL: f64 = 1e-8;
    const IDENTITY_TOL: f64 = 1e-10;
    const DISTRIBUTION_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const VALIDATION_TOL: f64 = 1e-4;
    const IDENTITY_TOL: f64 = 1e-5;
    const DISTRIBUTION_TOL: f64 = 1e-5;
}
