//! Phase difference `S(x)/ħ` between two states, its stationary points, the
//! curvature there, and the Fresnel-integral estimate of the overlap.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::numerics::{derivative, unwrap_phase, AliasingWarning, DerivativeOrder, Grid, RealFunction};
use crate::scalar::Real;
use crate::states::WaveFunction;

/// Default relative magnitude floor for the phase mask.
pub const DEFAULT_FLOOR: f64 = 1e-6;
/// Half-width, in samples, of the least-squares window around a sign change.
pub const FIT_HALF_WINDOW: usize = 7;
/// Default ratio between envelope width and Fresnel-zone width that defines the validity regime.
pub const DEFAULT_VALIDITY_FACTOR: f64 = 5.0;
/// Default quadrature density for [`fresnel_reference`].
pub const DEFAULT_SAMPLES_PER_FRINGE: f64 = 32.0;

/// Unwrapped `S(x)/ħ = arg⟨x|B⟩ − arg⟨x|A⟩` on the region where both states
/// exceed the magnitude floor.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile<T> {
    s_over_hbar: RealFunction<T>,
    mask: Vec<bool>,
    region: Range<usize>,
    hbar: T,
    aliasing: Option<AliasingWarning>,
}

impl<T: Real> PhaseProfile<T> {
    pub fn grid(&self) -> &Grid<T> {
        self.s_over_hbar.grid()
    }

    /// Phase samples in radians; only entries inside [`PhaseProfile::region`] are meaningful.
    pub fn s_over_hbar(&self) -> &RealFunction<T> {
        &self.s_over_hbar
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn region(&self) -> Range<usize> {
        self.region.clone()
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn aliasing(&self) -> Option<AliasingWarning> {
        self.aliasing
    }

    /// Whether `x` lies between the first and last masked samples.
    pub fn covers(&self, x: T) -> bool {
        let g = self.grid();
        x >= g.x(self.region.start) && x <= g.x(self.region.end - 1)
    }

    /// Linear interpolation of `S/ħ` inside the mask.
    pub fn value_at(&self, x: T) -> Option<T> {
        if !self.covers(x) {
            return None;
        }
        self.s_over_hbar.interpolate(x)
    }
}

/// Builds the phase profile of `b` relative to `a`.
///
/// Both states must already follow the real-positive-overlap convention.
pub fn phase_difference<T: Real>(
    a: &WaveFunction<T>,
    b: &WaveFunction<T>,
    floor: T,
    hbar: T,
) -> Result<PhaseProfile<T>> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    if !(floor >= T::zero() && floor < T::one()) {
        return Err(Error::InvalidParameter {
            name: "floor",
            reason: format!("must lie in [0, 1), got {floor}"),
        });
    }
    let (peak_a, peak_b) = (a.samples().peak_magnitude(), b.samples().peak_magnitude());
    let mask: Vec<bool> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(va, vb)| va.norm() > floor * peak_a && vb.norm() > floor * peak_b)
        .collect();
    let raw: Vec<T> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(va, vb)| (vb * va.conj()).arg())
        .collect();
    let unwrapped = unwrap_phase(&RealFunction::new(*a.grid(), raw)?, &mask)?;
    Ok(PhaseProfile {
        s_over_hbar: unwrapped.phase,
        mask,
        region: unwrapped.region,
        hbar,
        aliasing: unwrapped.aliasing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    /// `γ > 0`: the action has a minimum.
    Minimum,
    /// `γ < 0`: the action has a maximum.
    Maximum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryPoint<T> {
    pub mu: T,
    /// `½·d²(S/ħ)/dx²` at `mu`, signed.
    pub gamma: T,
    /// `S(μ)/ħ` from the local fit.
    pub s_mu_over_hbar: T,
    /// Grid indices used for the quadratic fit.
    pub window: Range<usize>,
}

impl<T: Real> StationaryPoint<T> {
    pub fn abs_gamma(&self) -> T {
        self.gamma.abs()
    }

    pub fn curvature(&self) -> Curvature {
        if self.gamma > T::zero() {
            Curvature::Minimum
        } else {
            Curvature::Maximum
        }
    }

    /// Stationary-phase value expected under the real-positive-overlap
    /// convention: `−π/4` at a minimum, `+π/4` at a maximum.
    pub fn expected_phase(&self) -> T {
        match self.curvature() {
            Curvature::Minimum => -T::FRAC_PI_4(),
            Curvature::Maximum => T::FRAC_PI_4(),
        }
    }
}

/// Least-squares fit `y ≈ c0 + c1·u + c2·u²`.
fn fit_quadratic<T: Real>(u: &[T], y: &[T]) -> Option<[T; 3]> {
    let mut s = [T::zero(); 5];
    let mut t = [T::zero(); 3];
    for (&ui, &yi) in u.iter().zip(y) {
        let mut p = T::one();
        for (k, sk) in s.iter_mut().enumerate() {
            *sk = *sk + p;
            if k < 3 {
                t[k] = t[k] + p * yi;
            }
            p = p * ui;
        }
    }
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let det3 = |m: &[[T; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3(&m);
    if det == T::zero() {
        return None;
    }
    let mut c = [T::zero(); 3];
    for (col, ck) in c.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = t[row];
        }
        *ck = det3(&mc) / det;
    }
    Some(c)
}

/// Locates every sign change of `d(S/ħ)/dx` on the mask and refines each by a
/// local quadratic fit over ±[`FIT_HALF_WINDOW`] samples.
///
/// Returns the points ordered by position, or [`Error::NoStationaryPoint`].
pub fn find_stationary_points<T: Real>(profile: &PhaseProfile<T>) -> Result<Vec<StationaryPoint<T>>> {
    let region = profile.region();
    let d = derivative(profile.s_over_hbar(), region.clone(), DerivativeOrder::First)?;
    let slope_max = d.values().iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let noise = slope_max * T::lit(1e-10);

    let grid = profile.grid();
    let dx = grid.dx();
    let phase = profile.s_over_hbar().values();
    let mut points = Vec::new();
    let mut last: Option<(bool, usize)> = None;
    for k in region.clone() {
        let v = d.at(k).expect("inside region");
        if v.abs() <= noise {
            continue;
        }
        let positive = v > T::zero();
        if let Some((prev_positive, prev_k)) = last {
            if prev_positive != positive {
                let centre = if d.at(prev_k).unwrap().abs() <= v.abs() {
                    prev_k
                } else {
                    k
                };
                points.push(refine(phase, grid, &region, centre)?);
            }
        }
        last = Some((positive, k));
    }
    if points.is_empty() {
        return Err(Error::NoStationaryPoint);
    }
    for p in &points {
        if p.abs_gamma() < T::lit(1e-9) / (dx * dx) {
            return Err(Error::DegenerateCurvature {
                mu: p.mu.to_f64_lossy(),
                gamma: p.gamma.to_f64_lossy(),
            });
        }
    }
    points.sort_by(|a, b| a.mu.partial_cmp(&b.mu).expect("finite positions"));
    Ok(points)
}

fn refine<T: Real>(phase: &[T], grid: &Grid<T>, region: &Range<usize>, centre: usize) -> Result<StationaryPoint<T>> {
    let lo = centre.saturating_sub(FIT_HALF_WINDOW).max(region.start);
    let hi = (centre + FIT_HALF_WINDOW + 1).min(region.end);
    let dx = grid.dx();
    let xc = grid.x(centre);
    let u: Vec<T> = (lo..hi).map(|k| (grid.x(k) - xc) / dx).collect();
    let [c0, c1, c2] = fit_quadratic(&u, &phase[lo..hi]).ok_or(Error::DegenerateCurvature {
        mu: xc.to_f64_lossy(),
        gamma: 0.0,
    })?;
    if c2 == T::zero() {
        return Err(Error::DegenerateCurvature {
            mu: xc.to_f64_lossy(),
            gamma: 0.0,
        });
    }
    let u_star = -c1 / (T::lit(2.0) * c2);
    Ok(StationaryPoint {
        mu: xc + u_star * dx,
        gamma: c2 / (dx * dx),
        s_mu_over_hbar: c0 + c1 * u_star + c2 * u_star * u_star,
        window: lo..hi,
    })
}

/// `½·d²(S/ħ)/dx²` at `pt.mu` from the five-point second difference,
/// interpolated linearly; an independent check on the fitted curvature.
pub fn direct_curvature<T: Real>(profile: &PhaseProfile<T>, pt: &StationaryPoint<T>) -> Result<T> {
    let d2 = derivative(profile.s_over_hbar(), profile.region(), DerivativeOrder::Second)?;
    let grid = profile.grid();
    let k = grid.floor_index(pt.mu).ok_or(Error::MuOutsideMask {
        mu: pt.mu.to_f64_lossy(),
    })?;
    let (lo, hi) = match (d2.at(k), d2.at(k + 1)) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(Error::MuOutsideMask {
                mu: pt.mu.to_f64_lossy(),
            })
        }
    };
    let t = (pt.mu - grid.x(k)) / grid.dx();
    Ok((lo + t * (hi - lo)) / T::lit(2.0))
}

/// Numerical and closed-form values of `∫_{−L}^{L} cos(γu² − π/4) du`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelReference<T> {
    pub numeric: T,
    /// `√(π/γ)`, the infinite-window value.
    pub closed_form: T,
    /// `2/(γL)`, a bound on the two truncated tails.
    pub tail_bound: T,
    /// Difference from the same rule on half as many panels; an upper estimate of the quadrature error.
    pub quadrature_error: T,
}

// five-point Gauss-Legendre nodes and weights on [-1, 1]
const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

fn gauss_legendre<T: Real>(f: impl Fn(T) -> T, a: T, b: T, panels: usize) -> T {
    let w = (b - a) / T::from_count(panels);
    let half = w / T::lit(2.0);
    (0..panels).fold(T::zero(), |acc, i| {
        let mid = a + (T::from_count(i) + T::lit(0.5)) * w;
        acc + GL5.iter().fold(T::zero(), |s, &(node, weight)| {
            s + T::lit(weight) * f(mid + half * T::lit(node))
        }) * half
    })
}

/// [`fresnel_reference_with`] at [`DEFAULT_SAMPLES_PER_FRINGE`].
pub fn fresnel_reference<T: Real>(gamma: T, half_window: T) -> Result<FresnelReference<T>> {
    fresnel_reference_with(gamma, half_window, T::lit(DEFAULT_SAMPLES_PER_FRINGE))
}

/// Truncated Fresnel integral by composite five-point Gauss-Legendre with
/// `samples_per_fringe` nodes across the narrowest fringe, which sits at the
/// window edge.
pub fn fresnel_reference_with<T: Real>(gamma: T, half_window: T, samples_per_fringe: T) -> Result<FresnelReference<T>> {
    if !(gamma > T::zero() && gamma.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("must be positive, got {gamma}"),
        });
    }
    if !(half_window > T::zero() && half_window.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "half_window",
            reason: format!("must be positive, got {half_window}"),
        });
    }
    if !(samples_per_fringe >= T::lit(4.0)) {
        return Err(Error::UnderResolved {
            samples_per_fringe: samples_per_fringe.to_f64_lossy(),
        });
    }
    // local fringe period at u = L is π/(γL)
    let edge_period = T::PI() / (gamma * half_window);
    let panel = T::lit(5.0) * edge_period / samples_per_fringe;
    let mut panels = (T::lit(2.0) * half_window / panel)
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX);
    panels += panels % 2;
    let f = |u: T| (gamma * u * u - T::FRAC_PI_4()).cos();
    let fine = gauss_legendre(f, -half_window, half_window, panels);
    let coarse = gauss_legendre(f, -half_window, half_window, panels / 2);
    Ok(FresnelReference {
        numeric: fine,
        closed_form: (T::PI() / gamma).sqrt(),
        tail_bound: T::lit(2.0) / (gamma * half_window),
        quadrature_error: (fine - coarse).abs(),
    })
}

/// `√(π/|γ|)·|⟨μ|A⟩|²`, the stationary-phase estimate of the overlap.
///
/// The density at `μ` is linearly interpolated between bracketing samples.
pub fn fresnel_overlap_estimate<T: Real>(
    a: &WaveFunction<T>,
    pt: &StationaryPoint<T>,
    profile: &PhaseProfile<T>,
) -> Result<T> {
    let rho = density_at(a, pt.mu, profile)?;
    Ok((T::PI() / pt.abs_gamma()).sqrt() * rho)
}

/// `|⟨μ|ψ⟩|²` by linear interpolation, restricted to the phase mask.
pub fn density_at<T: Real>(psi: &WaveFunction<T>, mu: T, profile: &PhaseProfile<T>) -> Result<T> {
    if !profile.covers(mu) {
        return Err(Error::MuOutsideMask { mu: mu.to_f64_lossy() });
    }
    psi.density()
        .interpolate(mu)
        .ok_or(Error::MuOutsideMask { mu: mu.to_f64_lossy() })
}

/// Whether the Fresnel zone `√(π/|γ|)` is at most `envelope_std/factor`.
pub fn in_validity_regime<T: Real>(gamma: T, envelope_std: T, factor: T) -> bool {
    (T::PI() / gamma.abs()).sqrt() <= envelope_std / factor
}
