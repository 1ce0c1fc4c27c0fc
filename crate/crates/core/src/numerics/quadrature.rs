use num_complex::Complex;

use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `dx·Σ f(x_k)`, the periodic trapezoidal rule.
///
/// Spectrally accurate for smooth integrands that decay to the grid floor at
/// both ends.
pub fn integrate<T: Real>(f: &SampledFunction<T>) -> Complex<T> {
    let sum = f
        .values()
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &v| acc + v);
    sum * f.grid().dx()
}

/// `⟨f|g⟩ = dx·Σ conj(f_k)·g_k`.
///
/// Uses the same summation order as [`integrate`] applied to `conj(f)·g`.
pub fn inner_product<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>) -> Result<Complex<T>> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let sum = f
        .values()
        .iter()
        .zip(g.values())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
    Ok(sum * f.grid().dx())
}
