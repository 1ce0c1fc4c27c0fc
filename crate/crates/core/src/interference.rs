//! Equal superposition of two non-orthogonal states and the algebra of its
//! interference term.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{integrate, RealFunction, SampledFunction};
use crate::scalar::Real;
use crate::states::WaveFunction;
use crate::stationary_phase::PhaseProfile;

/// Tolerated `|Im s|/|s|` for an overlap treated as real; widened to `1e3·ε` in low precision.
pub const REAL_OVERLAP_TOLERANCE: f64 = 1e-10;

fn real_overlap_tolerance<T: Real>() -> T {
    T::lit(REAL_OVERLAP_TOLERANCE).max(T::epsilon() * T::lit(1e3))
}
/// Overlaps at or below `−1 + ANTIPARALLEL_MARGIN` are rejected.
pub const ANTIPARALLEL_MARGIN: f64 = 1e-6;
/// Density fraction allowed outside the phase mask for [`residue_integral`].
pub const SUPPORT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionResult<T> {
    /// `(A + B)/√(2(1+s))`.
    pub psi: WaveFunction<T>,
    /// Real overlap `⟨B|A⟩`.
    pub s: T,
    /// `|⟨A|ψ⟩|²`.
    pub p_a: T,
    /// `|⟨B|ψ⟩|²`.
    pub p_b: T,
}

impl<T: Real> SuperpositionResult<T> {
    /// The overlap read as the lower bound on a joint probability of A and B.
    pub fn joint_prob_lower_bound(&self) -> T {
        self.s
    }
}

/// Real part of `⟨B|A⟩`, after checking that the imaginary part is negligible.
pub fn real_overlap<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>) -> Result<T> {
    let ov = b.inner(a)?;
    let mag = ov.norm();
    if mag > T::zero() && ov.im.abs() > real_overlap_tolerance::<T>() * mag {
        return Err(Error::NonRealOverlap {
            relative_imag: (ov.im.abs() / mag).to_f64_lossy(),
        });
    }
    Ok(ov.re)
}

/// Builds the normalized equal superposition of `a` and `b`.
///
/// The overlap must already be real (see
/// [`rotate_to_real_overlap`](crate::states::rotate_to_real_overlap)).
pub fn superpose_equal<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>) -> Result<SuperpositionResult<T>> {
    let s = real_overlap(a, b)?;
    if s <= -T::one() + T::lit(ANTIPARALLEL_MARGIN) {
        return Err(Error::AntiparallelDegenerate { s: s.to_f64_lossy() });
    }
    let scale = (T::lit(2.0) * (T::one() + s)).sqrt().recip();
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x + y) * scale)
        .collect();
    let psi = WaveFunction::new(SampledFunction::new(*a.grid(), values)?)?;
    let p_a = a.inner(&psi)?.norm_sqr();
    let p_b = b.inner(&psi)?.norm_sqr();
    Ok(SuperpositionResult { psi, s, p_a, p_b })
}

/// `P(A) + P(B) − 1 − s`, which vanishes for an equal superposition.
pub fn overlap_identity_residual<T: Real>(res: &SuperpositionResult<T>) -> T {
    res.p_a + res.p_b - T::one() - res.s
}

/// `(1 + cos(S/ħ))·|⟨x|A⟩|²/(1 + s)` on the mask, zero elsewhere.
///
/// Equals `|⟨x|ψ⟩|²` only where `|⟨x|A⟩| = |⟨x|B⟩|`; see [`pattern_discrepancy`].
pub fn interference_pattern<T: Real>(
    a: &WaveFunction<T>,
    b: &WaveFunction<T>,
    profile: &PhaseProfile<T>,
) -> Result<RealFunction<T>> {
    if a.grid() != profile.grid() {
        return Err(Error::GridMismatch);
    }
    let region = profile.region();
    if region.is_empty() {
        return Err(Error::EmptyMask);
    }
    let s = real_overlap(a, b)?;
    let norm = (T::one() + s).recip();
    let phase = profile.s_over_hbar().values();
    let values = a
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if region.contains(&k) {
                (T::one() + phase[k].cos()) * v.norm_sqr() * norm
            } else {
                T::zero()
            }
        })
        .collect();
    RealFunction::new(*a.grid(), values)
}

/// Largest masked gap between [`interference_pattern`] and the directly
/// computed superposition density.
pub fn pattern_discrepancy<T: Real>(
    a: &WaveFunction<T>,
    b: &WaveFunction<T>,
    psi: &WaveFunction<T>,
    profile: &PhaseProfile<T>,
) -> Result<T> {
    let pattern = interference_pattern(a, b, profile)?;
    let direct = psi.density();
    Ok(profile
        .region()
        .map(|k| (pattern.values()[k] - direct.values()[k]).abs())
        .fold(T::zero(), T::max))
}

/// `∫cos(S(x)/ħ)·|⟨x|A⟩|² dx` over the mask.
///
/// Fails when more than [`SUPPORT_TOLERANCE`] of the density lies outside the mask.
pub fn residue_integral<T: Real>(a: &WaveFunction<T>, profile: &PhaseProfile<T>) -> Result<T> {
    if a.grid() != profile.grid() {
        return Err(Error::GridMismatch);
    }
    let density = a.density();
    let total = density.integrate_range(0..density.values().len());
    let region = profile.region();
    let inside = density.integrate_range(region.clone());
    let fraction = (total - inside) / total;
    if fraction > T::lit(SUPPORT_TOLERANCE) {
        return Err(Error::SupportEscapesMask {
            fraction: fraction.to_f64_lossy(),
        });
    }
    let phase = profile.s_over_hbar().values();
    let sum = region.fold(T::zero(), |acc, k| acc + phase[k].cos() * density.values()[k]);
    Ok(sum * a.grid().dx())
}

/// `∫Re(conj(⟨x|A⟩)·⟨x|B⟩) dx`, which equals `Re⟨A|B⟩` for any pair.
pub fn unconditional_residue<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>) -> Result<T> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    let product: Vec<Complex<T>> = a.values().iter().zip(b.values()).map(|(x, y)| x.conj() * y).collect();
    Ok(integrate(&SampledFunction::new(*a.grid(), product)?).re)
}

/// `max_k ||A_k| − |B_k|| / max_k |A_k|`.
pub fn symmetry_residual<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>) -> Result<T> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    let gap = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x.norm() - y.norm()).abs())
        .fold(T::zero(), T::max);
    Ok(gap / a.samples().peak_magnitude())
}
