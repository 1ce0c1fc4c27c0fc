use std::ops::Range;

use num_complex::Complex;

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex samples `f(x_k)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T> {
    grid: Grid<T>,
    values: Vec<Complex<T>>,
}

/// Real samples `f(x_k)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFunction<T> {
    grid: Grid<T>,
    values: Vec<T>,
}

fn check_len<T: Real>(grid: &Grid<T>, len: usize) -> Result<()> {
    if len != grid.len() {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

impl<T: Real> SampledFunction<T> {
    /// Wraps existing samples; every value must be finite.
    pub fn new(grid: Grid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        check_len(&grid, values.len())?;
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid<T>, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        Self {
            grid,
            values: vec![Complex::new(T::zero(), T::zero()); grid.len()],
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Pointwise map onto a new complex function on the same grid.
    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `|f(x_k)|²` as a real function.
    pub fn density(&self) -> RealFunction<T> {
        RealFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    /// L² norm `(dx·Σ|f_k|²)^½`.
    pub fn norm(&self) -> T {
        (self.grid.dx() * self.values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr())).sqrt()
    }

    /// Largest sample magnitude.
    pub fn peak_magnitude(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    /// Larger of the two end-sample magnitudes relative to the peak magnitude.
    pub fn boundary_ratio(&self) -> T {
        let peak = self.peak_magnitude();
        if peak == T::zero() {
            return T::zero();
        }
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm()) / peak
    }
}

impl<T: Real> RealFunction<T> {
    pub fn new(grid: Grid<T>, values: Vec<T>) -> Result<Self> {
        check_len(&grid, values.len())?;
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid<T>, f: impl Fn(T) -> T) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    #[inline]
    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn to_complex(&self) -> SampledFunction<T> {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| Complex::new(v, T::zero())).collect(),
        }
    }

    /// Linear interpolation at `x`; `None` outside `[x_min, x_max − dx]`.
    pub fn interpolate(&self, x: T) -> Option<T> {
        let k = self.grid.floor_index(x)?;
        if k + 1 >= self.values.len() {
            return (x == self.grid.x(k)).then(|| self.values[k]);
        }
        let t = (x - self.grid.x(k)) / self.grid.dx();
        Some(self.values[k] + t * (self.values[k + 1] - self.values[k]))
    }

    /// Rectangle-rule integral over an index range.
    pub fn integrate_range(&self, range: Range<usize>) -> T {
        self.grid.dx() * self.values[range].iter().fold(T::zero(), |acc, &v| acc + v)
    }

    /// Mean and standard deviation of `x` treating the samples as an unnormalized density.
    pub fn moments(&self) -> (T, T) {
        let (mut m0, mut m1) = (T::zero(), T::zero());
        for (x, &w) in self.grid.points().zip(&self.values) {
            m0 = m0 + w;
            m1 = m1 + w * x;
        }
        let mean = m1 / m0;
        let var = self
            .grid
            .points()
            .zip(&self.values)
            .fold(T::zero(), |acc, (x, &w)| acc + w * (x - mean) * (x - mean))
            / m0;
        (mean, var.sqrt())
    }
}
