//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Floating-point scalar usable on the grid: `f32` or `f64`.
///
/// Tolerances quoted throughout the crate (1e-10 norms, 1e-12 Parseval) are
/// double-precision figures; `f32` instantiations run the same algorithms but
/// only reach single-precision accuracy.
pub trait Real: Float + FloatConst + FromPrimitive + FftNum + Debug + Display + Default {
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Converts a count into the scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex amplitude over a real scalar.
pub type Cplx<T> = Complex<T>;

/// Wraps an angle into the principal interval (−π, π].
pub fn principal<T: Real>(theta: T) -> T {
    let two_pi = T::TAU();
    let mut w = theta - two_pi * ((theta + T::PI()) / two_pi).floor();
    // floor puts w in [−π, π); move the lower edge to the upper one
    if w <= -T::PI() {
        w = w + two_pi;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn principal_value_interval() {
        assert_eq!(principal(0.0_f64), 0.0);
        assert!((principal(PI) - PI).abs() < 1e-15);
        assert!((principal(-PI) - PI).abs() < 1e-15);
        assert!((principal(3.0 * PI) - PI).abs() < 1e-12);
        assert!((principal(7.0_f64) - (7.0 - 2.0 * PI)).abs() < 1e-12);
        assert!((principal(-7.0_f64) - (-7.0 + 2.0 * PI)).abs() < 1e-12);
    }
}
