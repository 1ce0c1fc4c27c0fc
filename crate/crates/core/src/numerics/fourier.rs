//! Unitary transform between the position grid and its dual momentum grid.
//!
//! Convention: `φ(p) = (2πħ)^(−½) ∫ ψ(x) e^(−ipx/ħ) dx`, discretized as
//! `φ_m = dx·(2πħ)^(−½) Σ_k ψ_k e^(−i p_m x_k/ħ)` with `p_m = (m − ⌊n/2⌋)·dp`,
//! `dp = 2πħ/(n·dx)`. Momentum samples are returned in ascending order.

use num_complex::Complex;
use rustfft::FftPlanner;

use super::{Grid, SampledFunction};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `e^(i·2π·(h·k mod n)/n)`, the index shift that centres the momentum axis.
fn centring_twiddle<T: Real>(k: usize, half: usize, n: usize, sign: T) -> Complex<T> {
    let r = (half * k) % n;
    let angle = sign * T::TAU() * T::from_count(r) / T::from_count(n);
    Complex::from_polar(T::one(), angle)
}

pub fn to_momentum<T: Real>(f: &SampledFunction<T>, hbar: T) -> SampledFunction<T> {
    let grid = *f.grid();
    let n = grid.len();
    let half = n / 2;
    let pgrid = grid.momentum_grid(hbar);

    let mut buf: Vec<Complex<T>> = f
        .values()
        .iter()
        .enumerate()
        .map(|(k, &v)| v * centring_twiddle(k, half, n, T::one()))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let scale = grid.dx() / (T::TAU() * hbar).sqrt();
    for (m, v) in buf.iter_mut().enumerate() {
        let p = pgrid.x(m);
        *v = *v * Complex::from_polar(scale, -p * grid.x_min() / hbar);
    }
    SampledFunction::new(pgrid, buf).expect("transform of finite samples is finite")
}

/// Inverse of [`to_momentum`] onto the position grid `grid`.
pub fn from_momentum<T: Real>(phi: &SampledFunction<T>, grid: &Grid<T>, hbar: T) -> Result<SampledFunction<T>> {
    let n = grid.len();
    if phi.grid() != &grid.momentum_grid(hbar) {
        return Err(Error::GridMismatch);
    }
    let half = n / 2;
    let pgrid = *phi.grid();

    let mut buf: Vec<Complex<T>> = phi
        .values()
        .iter()
        .enumerate()
        .map(|(m, &v)| v * Complex::from_polar(T::one(), pgrid.x(m) * grid.x_min() / hbar))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);

    let scale = pgrid.dx() / (T::TAU() * hbar).sqrt();
    for (k, v) in buf.iter_mut().enumerate() {
        *v = *v * centring_twiddle(k, half, n, -T::one()) * scale;
    }
    SampledFunction::new(*grid, buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gaussian(g: Grid<f64>, x0: f64, sigma: f64, p0: f64) -> SampledFunction<f64> {
        let norm = (2.0 * PI * sigma * sigma).powf(-0.25);
        SampledFunction::from_fn(g, |x| {
            Complex::from_polar(norm * (-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp(), p0 * (x - x0))
        })
        .unwrap()
    }

    #[test]
    fn gaussian_maps_to_gaussian_with_half_momentum_width() {
        let g = Grid::<f64>::new(-20.0, 20.0, 1 << 10).unwrap();
        let psi = gaussian(g, 0.0, 1.0, 0.0);
        let phi = to_momentum(&psi, 1.0);
        assert!((phi.norm() - 1.0).abs() < 1e-12);
        let (mean, std) = phi.density().moments();
        assert!(mean.abs() < 1e-12);
        assert!((std - 0.5).abs() < 1e-10, "{std}");
        // analytic amplitude at p = 0: (2 sigma^2 / pi)^(1/4) for sigma = 1
        let centre = phi.values()[512];
        assert!((centre.norm() - (2.0 / PI).powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn round_trip_is_identity() {
        let g = Grid::<f64>::new(-7.0, 9.0, 300).unwrap();
        let psi =
            SampledFunction::from_fn(g, |x| Complex::new((x * 1.3).sin() * (-x * x / 5.0).exp(), x.cos())).unwrap();
        for hbar in [1.0, 0.37] {
            let back = from_momentum(&to_momentum(&psi, hbar), &g, hbar).unwrap();
            let err = psi
                .values()
                .iter()
                .zip(back.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "hbar {hbar}: {err}");
        }
    }

    #[test]
    fn shift_theorem_recentres_envelope() {
        let g = Grid::<f64>::new(-25.0, 25.0, 1 << 11).unwrap();
        for hbar in [1.0, 0.5] {
            let p0 = 3.0;
            let psi = gaussian(g, 2.0, 1.0, p0 / hbar);
            let (mean, _) = to_momentum(&psi, hbar).density().moments();
            assert!((mean - p0).abs() < 1e-9, "hbar {hbar}: {mean}");
        }
    }

    #[test]
    fn mismatched_momentum_grid_is_rejected() {
        let g = Grid::<f64>::new(-5.0, 5.0, 64).unwrap();
        let psi = gaussian(g, 0.0, 1.0, 0.0);
        let phi = to_momentum(&psi, 1.0);
        assert_eq!(from_momentum(&phi, &g, 2.0), Err(Error::GridMismatch));
    }
}
