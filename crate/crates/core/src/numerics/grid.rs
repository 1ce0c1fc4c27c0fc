use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest admissible point count.
pub const MIN_POINTS: usize = 16;

/// Uniform periodic grid `x_k = x_min + k·dx`, `k = 0..n`, with `dx = (x_max − x_min)/n`.
///
/// The right edge `x_max` is the periodic image of `x_min` and is not itself a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    x_min: T,
    x_max: T,
    n: usize,
    dx: T,
}

impl<T: Real> Grid<T> {
    pub fn new(x_min: T, x_max: T, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) || n < MIN_POINTS {
            return Err(Error::InvalidBounds {
                x_min: x_min.to_f64_lossy(),
                x_max: x_max.to_f64_lossy(),
                n,
            });
        }
        let dx = (x_max - x_min) / T::from_count(n);
        Ok(Self { x_min, x_max, n, dx })
    }

    #[inline]
    pub fn x_min(&self) -> T {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> T {
        self.x_max
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dx(&self) -> T {
        self.dx
    }

    /// Position of sample `k`.
    #[inline]
    pub fn x(&self, k: usize) -> T {
        self.x_min + T::from_count(k) * self.dx
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        (0..self.n).map(move |k| self.x(k))
    }

    /// Spacing of the conjugate momentum grid, `2πħ/(n·dx)`.
    pub fn momentum_spacing(&self, hbar: T) -> T {
        T::TAU() * hbar / (T::from_count(self.n) * self.dx)
    }

    /// Momentum grid dual to this one, in ascending order and centred on zero.
    pub fn momentum_grid(&self, hbar: T) -> Grid<T> {
        let dp = self.momentum_spacing(hbar);
        let p_min = -T::from_count(self.n / 2) * dp;
        Grid {
            x_min: p_min,
            x_max: p_min + T::from_count(self.n) * dp,
            n: self.n,
            dx: dp,
        }
    }

    /// Index of the last grid point at or below `x`, if `x` is inside `[x_min, x_max)`.
    pub fn floor_index(&self, x: T) -> Option<usize> {
        if !(x >= self.x_min && x < self.x_max) {
            return None;
        }
        let k = ((x - self.x_min) / self.dx).floor().to_usize()?;
        Some(k.min(self.n - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_points_on_twenty() {
        let g = Grid::<f64>::new(-10.0, 10.0, 16).unwrap();
        assert_eq!(g.dx(), 1.25);
        assert_eq!(g.x(0), -10.0);
        assert_eq!(g.x(15), -10.0 + 15.0 * 1.25);
    }

    #[test]
    fn unit_interval_hundred_points() {
        let g = Grid::<f64>::new(0.0, 1.0, 100).unwrap();
        assert_eq!(g.dx(), 0.01);
    }

    #[test]
    fn large_grid_spacing() {
        let g = Grid::<f64>::new(-40.0, 40.0, 1 << 14).unwrap();
        assert!((g.dx() - 4.8828125e-3).abs() < 1e-15);
        for k in [0usize, 1, 777, (1 << 14) - 1] {
            assert_eq!(g.x(k), -40.0 + (k as f64) * g.dx());
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(matches!(
            Grid::<f64>::new(1.0, 1.0, 32),
            Err(Error::InvalidBounds { .. })
        ));
        assert!(matches!(
            Grid::<f64>::new(2.0, 1.0, 32),
            Err(Error::InvalidBounds { .. })
        ));
        assert!(matches!(
            Grid::<f64>::new(0.0, 1.0, 15),
            Err(Error::InvalidBounds { .. })
        ));
        assert!(matches!(
            Grid::<f64>::new(f64::NAN, 1.0, 32),
            Err(Error::InvalidBounds { .. })
        ));
    }

    #[test]
    fn momentum_grid_is_centred() {
        let g = Grid::<f64>::new(-8.0, 8.0, 64).unwrap();
        let p = g.momentum_grid(1.0);
        assert!((p.dx() - 2.0 * std::f64::consts::PI / 16.0).abs() < 1e-15);
        assert_eq!(p.x(32), 0.0);
    }

    #[test]
    fn floor_index_brackets() {
        let g = Grid::<f64>::new(0.0, 1.0, 100).unwrap();
        assert_eq!(g.floor_index(0.0), Some(0));
        assert_eq!(g.floor_index(0.555), Some(55));
        assert_eq!(g.floor_index(1.0), None);
        assert_eq!(g.floor_index(-0.1), None);
    }

    #[test]
    fn single_precision_grid() {
        let g = Grid::<f32>::new(-1.0, 1.0, 16).unwrap();
        assert_eq!(g.dx(), 0.125);
    }
}
