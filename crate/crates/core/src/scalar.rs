//! Floating-point scalar abstraction shared by the numerical routines.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real floating-point type the eigen, Riccati and selection code runs on.
///
/// Implemented for `f32` and `f64`. Tolerances quoted as absolute numbers are
/// floored at a small multiple of the type's machine epsilon, so `f32` runs
/// the same code with correspondingly looser guarantees.
pub trait Scalar: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count or index.
    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }

    /// `max(tol, 64 * machine epsilon)`: a requested tolerance clipped to what
    /// the type can resolve.
    fn tol(tol: f64) -> Self {
        Self::of(tol).max(Self::epsilon() * Self::of(64.0))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
