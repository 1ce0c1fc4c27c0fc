//! Fourth-order finite differences restricted to a contiguous valid region.

use std::ops::Range;

use super::RealFunction;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fewest contiguous points accepted by [`derivative`].
pub const MIN_REGION: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// Derivative samples over `region`; entry `i` belongs to grid index `region.start + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative<T> {
    region: Range<usize>,
    values: Vec<T>,
}

impl<T: Real> Derivative<T> {
    pub fn region(&self) -> Range<usize> {
        self.region.clone()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at grid index `k`.
    pub fn at(&self, k: usize) -> Option<T> {
        self.region.contains(&k).then(|| self.values[k - self.region.start])
    }

    /// True for the two points at each end, which use one-sided stencils.
    pub fn is_one_sided(&self, k: usize) -> bool {
        self.region.contains(&k) && (k < self.region.start + 2 || k + 2 >= self.region.end)
    }
}

const D1_CENTRAL: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const D1_EDGE0: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
const D1_EDGE1: [f64; 5] = [-3.0, -10.0, 18.0, -6.0, 1.0];
const D2_CENTRAL: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
const D2_EDGE0: [f64; 6] = [45.0, -154.0, 214.0, -156.0, 61.0, -10.0];
const D2_EDGE1: [f64; 6] = [10.0, -15.0, -4.0, 14.0, -6.0, 1.0];

fn apply<T: Real>(coef: &[f64], samples: impl Iterator<Item = T>) -> T {
    coef.iter()
        .zip(samples)
        .fold(T::zero(), |acc, (&c, v)| acc + T::lit(c) * v)
}

/// Finite-difference derivative of `f` on the contiguous index range `region`.
///
/// Interior points use the five-point central stencil; the first and last two
/// points use one-sided stencils of the same order.
pub fn derivative<T: Real>(f: &RealFunction<T>, region: Range<usize>, order: DerivativeOrder) -> Result<Derivative<T>> {
    let len = region.end.saturating_sub(region.start);
    if region.end > f.values().len() || len < MIN_REGION {
        return Err(Error::RegionTooSmall {
            len,
            needed: MIN_REGION,
        });
    }
    let y = &f.values()[region.clone()];
    let h = f.grid().dx();
    let (denom, central, edge0, edge1): (T, &[f64], &[f64], &[f64]) = match order {
        DerivativeOrder::First => (T::lit(12.0) * h, &D1_CENTRAL, &D1_EDGE0, &D1_EDGE1),
        DerivativeOrder::Second => (T::lit(12.0) * h * h, &D2_CENTRAL, &D2_EDGE0, &D2_EDGE1),
    };
    // mirroring a stencil flips the sign of odd derivatives
    let mirror_sign = match order {
        DerivativeOrder::First => -T::one(),
        DerivativeOrder::Second => T::one(),
    };
    let w = edge0.len();

    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let d = if i == 0 {
            apply(edge0, y[..w].iter().copied())
        } else if i == 1 {
            apply(edge1, y[..w].iter().copied())
        } else if i == len - 1 {
            mirror_sign * apply(edge0, y[len - w..].iter().rev().copied())
        } else if i == len - 2 {
            mirror_sign * apply(edge1, y[len - w..].iter().rev().copied())
        } else {
            apply(central, y[i - 2..=i + 2].iter().copied())
        };
        out.push(d / denom);
    }
    Ok(Derivative { region, values: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;
    use proptest::prelude::*;

    fn sampled(f: impl Fn(f64) -> f64, n: usize, a: f64, b: f64) -> RealFunction<f64> {
        RealFunction::from_fn(Grid::new(a, b, n).unwrap(), f).unwrap()
    }

    #[test]
    fn parabola_first_derivative_exact() {
        let f = sampled(|x| x * x, 64, -3.0, 3.0);
        let d = derivative(&f, 0..64, DerivativeOrder::First).unwrap();
        for k in 0..64 {
            let x = f.grid().x(k);
            assert!((d.at(k).unwrap() - 2.0 * x).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn parabola_second_derivative_exact() {
        let f = sampled(|x| x * x, 64, -3.0, 3.0);
        let d = derivative(&f, 5..40, DerivativeOrder::Second).unwrap();
        for k in 5..40 {
            assert!((d.at(k).unwrap() - 2.0).abs() < 1e-9, "k = {k}");
        }
        assert_eq!(d.at(4), None);
        assert!(d.is_one_sided(5) && d.is_one_sided(6) && d.is_one_sided(39) && !d.is_one_sided(7));
    }

    #[test]
    fn sine_converges_at_fourth_order() {
        let err = |n: usize| {
            let f = sampled(f64::sin, n, 0.0, 6.0);
            let d = derivative(&f, 0..n, DerivativeOrder::First).unwrap();
            (2..n - 2)
                .map(|k| (d.at(k).unwrap() - f.grid().x(k).cos()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(200), err(400));
        assert!(e1 < 1e-7);
        // halving dx cuts the error by ~16
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn short_region_is_rejected() {
        let f = sampled(|x| x, 32, 0.0, 1.0);
        assert_eq!(
            derivative(&f, 3..9, DerivativeOrder::First),
            Err(Error::RegionTooSmall { len: 6, needed: 7 })
        );
        assert!(derivative(&f, 3..10, DerivativeOrder::Second).is_ok());
    }

    proptest! {
        #[test]
        fn cubics_are_reproduced(c0 in -3.0..3.0f64, c1 in -3.0..3.0f64, c2 in -3.0..3.0f64, c3 in -3.0..3.0f64) {
            let f = sampled(|x| c0 + c1 * x + c2 * x * x + c3 * x * x * x, 48, -2.0, 2.0);
            let d1 = derivative(&f, 0..48, DerivativeOrder::First).unwrap();
            let d2 = derivative(&f, 0..48, DerivativeOrder::Second).unwrap();
            for k in 2..46 {
                let x = f.grid().x(k);
                prop_assert!((d1.at(k).unwrap() - (c1 + 2.0 * c2 * x + 3.0 * c3 * x * x)).abs() < 1e-10);
                prop_assert!((d2.at(k).unwrap() - (2.0 * c2 + 6.0 * c3 * x)).abs() < 1e-10);
            }
        }
    }
}
