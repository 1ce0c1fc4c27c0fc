//! Gaussian wavepackets, exactly magnitude-symmetric conjugate pairs, and
//! free-particle evolution.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{from_momentum, inner_product, to_momentum, Grid, RealFunction, SampledFunction};
use crate::scalar::{principal, Real};

/// Boundary amplitude allowed relative to the peak for a state to fit its box.
pub const BOX_TOLERANCE: f64 = 1e-8;
/// Minimum grid points per position standard deviation.
pub const MIN_POINTS_PER_SIGMA: f64 = 8.0;
/// Overlap magnitude below which no phase convention can be fixed.
pub const MIN_OVERLAP: f64 = 1e-12;

/// Norm tolerance for the scalar type: 1e-10 in double precision.
pub(crate) fn norm_tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

/// Parameters of
/// `ψ(x) = N·exp(−(x−x0)²/(4σ²) + i·c·(x−x0)² + i·p0·(x−x0)/ħ + i·global_phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec<T> {
    pub x0: T,
    pub p0: T,
    pub sigma: T,
    pub chirp: T,
    pub global_phase: T,
}

impl<T: Real> GaussianSpec<T> {
    /// Unchirped packet with zero global phase.
    pub fn new(x0: T, p0: T, sigma: T) -> Self {
        Self {
            x0,
            p0,
            sigma,
            chirp: T::zero(),
            global_phase: T::zero(),
        }
    }

    pub fn with_chirp(self, chirp: T) -> Self {
        Self { chirp, ..self }
    }

    pub fn with_global_phase(self, global_phase: T) -> Self {
        Self { global_phase, ..self }
    }

    /// Unnormalized amplitude at `x`.
    fn amplitude(&self, x: T, hbar: T) -> Complex<T> {
        let u = x - self.x0;
        let envelope = (-u * u / (T::lit(4.0) * self.sigma * self.sigma)).exp();
        let phase = self.chirp * u * u + self.p0 * u / hbar + self.global_phase;
        Complex::from_polar(envelope, phase)
    }
}

/// Normalized position-space wavefunction `⟨x|ψ⟩` that fits its box.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<T>(SampledFunction<T>);

impl<T: Real> WaveFunction<T> {
    /// Accepts samples that are already normalized and decay at the box edges.
    pub fn new(samples: SampledFunction<T>) -> Result<Self> {
        let norm = samples.norm();
        if (norm - T::one()).abs() > norm_tolerance::<T>() {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: format!("norm {norm} differs from 1"),
            });
        }
        let ratio = samples.boundary_ratio();
        if ratio >= T::lit(BOX_TOLERANCE) {
            return Err(Error::BoxTooSmall {
                ratio: ratio.to_f64_lossy(),
            });
        }
        Ok(Self(samples))
    }

    /// Rescales arbitrary samples to unit norm, then applies the [`WaveFunction::new`] checks.
    pub fn normalized(samples: SampledFunction<T>) -> Result<Self> {
        let norm = samples.norm();
        if norm == T::zero() {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "zero norm".into(),
            });
        }
        let inv = norm.recip();
        Self::new(samples.map(|v| v * inv))
    }

    #[inline]
    pub fn samples(&self) -> &SampledFunction<T> {
        &self.0
    }

    #[inline]
    pub fn grid(&self) -> &Grid<T> {
        self.0.grid()
    }

    #[inline]
    pub fn values(&self) -> &[Complex<T>] {
        self.0.values()
    }

    pub fn into_samples(self) -> SampledFunction<T> {
        self.0
    }

    pub fn norm(&self) -> T {
        self.0.norm()
    }

    /// Position probability density `|⟨x|ψ⟩|²`.
    pub fn density(&self) -> RealFunction<T> {
        self.0.density()
    }

    /// Global phase rotation `e^{iφ}·ψ`.
    pub fn rotated(&self, phi: T) -> Self {
        let w = Complex::from_polar(T::one(), phi);
        Self(self.0.map(|v| v * w))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|v| v.conj()))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        inner_product(&self.0, &other.0)
    }

    /// Mean and standard deviation of position.
    pub fn position_moments(&self) -> (T, T) {
        self.density().moments()
    }

    /// Mean and standard deviation of momentum.
    pub fn momentum_moments(&self, hbar: T) -> (T, T) {
        to_momentum(&self.0, hbar).density().moments()
    }
}

/// Samples a normalized Gaussian wavepacket on `grid`.
pub fn gaussian<T: Real>(spec: &GaussianSpec<T>, grid: &Grid<T>, hbar: T) -> Result<WaveFunction<T>> {
    if !(spec.sigma > T::zero() && spec.sigma.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be positive, got {}", spec.sigma),
        });
    }
    if !(hbar > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "hbar",
            reason: format!("must be positive, got {hbar}"),
        });
    }
    let points_per_sigma = spec.sigma / grid.dx();
    if points_per_sigma < T::lit(MIN_POINTS_PER_SIGMA) {
        return Err(Error::ResolutionTooCoarse {
            points_per_sigma: points_per_sigma.to_f64_lossy(),
        });
    }
    let raw = SampledFunction::from_fn(*grid, |x| spec.amplitude(x, hbar))?;
    let ratio = raw.boundary_ratio();
    if ratio >= T::lit(BOX_TOLERANCE) {
        return Err(Error::BoxTooSmall {
            ratio: ratio.to_f64_lossy(),
        });
    }
    WaveFunction::normalized(raw)
}

/// Pair `B = conj(A)` with `|⟨x|A⟩| = |⟨x|B⟩|` at every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePair<T> {
    pub a: WaveFunction<T>,
    pub b: WaveFunction<T>,
    /// Real, positive overlap `⟨B|A⟩`.
    pub overlap: T,
    /// Global phase applied to the chirped Gaussian to make the overlap real.
    pub rotation: T,
}

/// Chirped Gaussian `A` and its conjugate `B`.
///
/// `A` is rotated by half the phase of `∫A²dx` so that `⟨B|A⟩ = ∫A²dx` comes
/// out real and positive while `B` stays the exact conjugate of `A`.
pub fn conjugate_pair<T: Real>(x0: T, sigma: T, chirp: T, grid: &Grid<T>, hbar: T) -> Result<ConjugatePair<T>> {
    if chirp == T::zero() {
        return Err(Error::ZeroChirp);
    }
    let spec = GaussianSpec::new(x0, T::zero(), sigma).with_chirp(chirp);
    let a0 = gaussian(&spec, grid, hbar)?;
    let self_overlap = a0
        .values()
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v * v)
        * grid.dx();
    let rotation = -self_overlap.arg() / T::lit(2.0);
    let a = a0.rotated(rotation);
    let b = a.conj();
    let overlap = b.inner(&a)?.re;
    Ok(ConjugatePair {
        a,
        b,
        overlap,
        rotation,
    })
}

/// Free-particle evolution by `exp(−i p² t/(2mħ))` in momentum space.
pub fn free_evolve<T: Real>(psi: &WaveFunction<T>, mass: T, t: T, hbar: T) -> Result<WaveFunction<T>> {
    if !(mass > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "mass",
            reason: format!("must be positive, got {mass}"),
        });
    }
    let grid = *psi.grid();
    let phi = to_momentum(psi.samples(), hbar);
    let pgrid = *phi.grid();
    let factor = t / (T::lit(2.0) * mass * hbar);
    let values = phi
        .values()
        .iter()
        .enumerate()
        .map(|(m, &v)| {
            let p = pgrid.x(m);
            v * Complex::from_polar(T::one(), -p * p * factor)
        })
        .collect();
    let evolved = from_momentum(&SampledFunction::new(pgrid, values)?, &grid, hbar)?;
    let ratio = evolved.boundary_ratio();
    if ratio >= T::lit(BOX_TOLERANCE) {
        return Err(Error::BoxOverflow {
            ratio: ratio.to_f64_lossy(),
        });
    }
    Ok(WaveFunction(evolved))
}

/// Rotates `a` by `e^{iφ}` so that `⟨B|A'⟩` is real and positive; returns `(A', φ)`
/// with `φ ∈ (−π, π]`.
pub fn rotate_to_real_overlap<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>) -> Result<(WaveFunction<T>, T)> {
    let overlap = b.inner(a)?;
    let magnitude = overlap.norm();
    if magnitude <= T::lit(MIN_OVERLAP) {
        return Err(Error::VanishingOverlap {
            magnitude: magnitude.to_f64_lossy(),
        });
    }
    let phi = principal(-overlap.arg());
    Ok((a.rotated(phi), phi))
}
