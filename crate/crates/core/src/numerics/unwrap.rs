//! Mask-aware 1D phase unwrapping anchored at the centre of the valid region.

use std::ops::Range;

use super::RealFunction;
use crate::error::{Error, Result};
use crate::scalar::{principal, Real};

/// Raised when adjacent raw samples jump by more than π/2, i.e. fewer than
/// four samples per fringe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AliasingWarning {
    /// Largest absolute wrapped jump between neighbours in the region.
    pub max_jump: f64,
    /// Index of the left sample of that jump.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Unwrapped<T> {
    pub phase: RealFunction<T>,
    pub region: Range<usize>,
    pub aliasing: Option<AliasingWarning>,
}

/// The single run of `true` flags in `mask`.
pub fn contiguous_region(mask: &[bool]) -> Result<Range<usize>> {
    let start = mask.iter().position(|&m| m).ok_or(Error::EmptyMask)?;
    let end = start + mask[start..].iter().take_while(|&&m| m).count();
    if mask[end..].iter().any(|&m| m) {
        return Err(Error::NonContiguousMask);
    }
    Ok(start..end)
}

/// Unwraps `theta` inside the contiguous valid region of `mask`.
///
/// The centre sample is mapped to its principal value and the unwrap proceeds
/// outward in both directions, so adjacent valid samples end up less than π
/// apart. Samples outside the region are returned untouched.
pub fn unwrap_phase<T: Real>(theta: &RealFunction<T>, mask: &[bool]) -> Result<Unwrapped<T>> {
    if mask.len() != theta.values().len() {
        return Err(Error::GridMismatch);
    }
    let region = contiguous_region(mask)?;
    let raw = theta.values();
    let mut out = raw.to_vec();

    let centre = region.start + (region.end - region.start) / 2;
    out[centre] = principal(raw[centre]);
    let step = |prev_out: T, prev_raw: T, cur_raw: T| prev_out + principal(cur_raw - prev_raw);
    for k in centre + 1..region.end {
        out[k] = step(out[k - 1], raw[k - 1], raw[k]);
    }
    for k in (region.start..centre).rev() {
        out[k] = step(out[k + 1], raw[k + 1], raw[k]);
    }

    let mut worst: Option<(T, usize)> = None;
    for k in region.start..region.end.saturating_sub(1) {
        let jump = principal(raw[k + 1] - raw[k]).abs();
        if worst.is_none_or(|(w, _)| jump > w) {
            worst = Some((jump, k));
        }
    }
    let aliasing = worst
        .filter(|&(w, _)| w > T::FRAC_PI_2())
        .map(|(w, index)| AliasingWarning {
            max_jump: w.to_f64_lossy(),
            index,
        });

    Ok(Unwrapped {
        phase: RealFunction::new(*theta.grid(), out)?,
        region,
        aliasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn wrapped(f: impl Fn(f64) -> f64, g: Grid<f64>) -> RealFunction<f64> {
        RealFunction::from_fn(g, |x| principal(f(x))).unwrap()
    }

    #[test]
    fn sawtooth_becomes_line() {
        let g = Grid::new(-10.0, 10.0, 400).unwrap();
        let u = unwrap_phase(&wrapped(|x| 3.0 * x, g), &vec![true; 400]).unwrap();
        assert!(u.aliasing.is_none());
        let offset = u.phase.values()[0] - 3.0 * g.x(0);
        assert!((offset / TAU - (offset / TAU).round()).abs() < 1e-12);
        for k in 0..400 {
            assert!((u.phase.values()[k] - 3.0 * g.x(k) - offset).abs() < 1e-10);
        }
        // centre anchored to principal value
        assert!(u.phase.values()[200].abs() <= PI);
    }

    #[test]
    fn constant_phase_is_unchanged() {
        let g = Grid::new(0.0, 1.0, 32).unwrap();
        let theta = RealFunction::from_fn(g, |_| 0.7).unwrap();
        let u = unwrap_phase(&theta, &[true; 32]).unwrap();
        assert_eq!(u.phase, theta);
    }

    #[test]
    fn parabola_recovered() {
        let g = Grid::new(-6.0, 6.0, 1024).unwrap();
        let u = unwrap_phase(&wrapped(|x| x * x, g), &vec![true; 1024]).unwrap();
        assert!(u.aliasing.is_none());
        let offset = u.phase.values()[512] - g.x(512).powi(2);
        for k in 0..1024 {
            assert!((u.phase.values()[k] - g.x(k).powi(2) - offset).abs() < 1e-9);
        }
    }

    #[test]
    fn masked_samples_untouched() {
        let g = Grid::new(-5.0, 5.0, 100).unwrap();
        let theta = wrapped(|x| 2.0 * x, g);
        let mut mask = vec![false; 100];
        mask[20..80].iter_mut().for_each(|m| *m = true);
        let u = unwrap_phase(&theta, &mask).unwrap();
        assert_eq!(u.region, 20..80);
        assert_eq!(&u.phase.values()[..20], &theta.values()[..20]);
        assert_eq!(&u.phase.values()[80..], &theta.values()[80..]);
    }

    #[test]
    fn mask_errors() {
        let g = Grid::new(0.0, 1.0, 16).unwrap();
        let theta = RealFunction::from_fn(g, |x| x).unwrap();
        assert_eq!(unwrap_phase(&theta, &[false; 16]), Err(Error::EmptyMask));
        let mut mask = [true; 16];
        mask[8] = false;
        assert_eq!(unwrap_phase(&theta, &mask), Err(Error::NonContiguousMask));
    }

    #[test]
    fn coarse_fringes_raise_aliasing_warning() {
        // slope 2 rad per sample: fewer than 4 samples per fringe
        let g = Grid::new(0.0, 64.0, 64).unwrap();
        let u = unwrap_phase(&wrapped(|x| 2.0 * x, g), &[true; 64]).unwrap();
        let w = u.aliasing.expect("warning");
        assert!((w.max_jump - 2.0).abs() < 1e-12);
        // 1.5 rad per sample stays below the guard
        let u = unwrap_phase(&wrapped(|x| 1.5 * x, g), &[true; 64]).unwrap();
        assert!(u.aliasing.is_none());
    }

    proptest! {
        #[test]
        fn output_differs_by_multiples_of_two_pi(raw in proptest::collection::vec(-10.0..10.0f64, 16..64)) {
            let n = raw.len();
            let g = Grid::new(0.0, 1.0, n).unwrap();
            let theta = RealFunction::new(g, raw.clone()).unwrap();
            let u = unwrap_phase(&theta, &vec![true; n]).unwrap();
            for (a, b) in u.phase.values().iter().zip(&raw) {
                let k = (a - b) / TAU;
                prop_assert!((k - k.round()).abs() < 1e-9);
            }
            for w in u.phase.values().windows(2) {
                prop_assert!((w[1] - w[0]).abs() <= PI + 1e-12);
            }
        }
    }
}
