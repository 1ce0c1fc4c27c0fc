//! Classical and quantum broadening of the relation between the two initial
//! conditions and `x`, and the inequalities any classical account must obey.

use crate::error::{Error, Result};
use crate::interference::{
    pattern_discrepancy, residue_integral, superpose_equal, symmetry_residual, SuperpositionResult,
};
use crate::scalar::Real;
use crate::states::{rotate_to_real_overlap, WaveFunction};
use crate::stationary_phase::{
    density_at, find_stationary_points, fresnel_overlap_estimate, in_validity_regime, phase_difference, Curvature,
    PhaseProfile, StationaryPoint, DEFAULT_FLOOR, DEFAULT_VALIDITY_FACTOR,
};

/// Gap below which an inequality comparison is reported as indeterminate.
pub const INDETERMINATE_BAND: f64 = 1e-9;

/// `s²/|⟨μ|A⟩|²`: the spread in `x` classical determinism needs to account for overlap `s`.
pub fn classical_broadening<T: Real>(s: T, peak_density_a: T) -> Result<T> {
    if !(peak_density_a > T::zero()) {
        return Err(Error::ZeroDensity);
    }
    if !(s > T::zero() && s <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("overlap must lie in (0, 1], got {s}"),
        });
    }
    Ok(s * s / peak_density_a)
}

/// `√(π/(2|γ|))`: distance from `μ` at which the stationary phase has moved by π/2.
pub fn quantum_broadening<T: Real>(gamma: T) -> Result<T> {
    if gamma == T::zero() || !gamma.is_finite() {
        return Err(Error::DegenerateCurvature {
            mu: f64::NAN,
            gamma: gamma.to_f64_lossy(),
        });
    }
    Ok((T::PI() / (T::lit(2.0) * gamma.abs())).sqrt())
}

/// `s/|⟨μ|A⟩|²`, the overlap-based expression for the quantum broadening.
pub fn quantum_broadening_from_overlap<T: Real>(s: T, peak_density_a: T) -> Result<T> {
    if !(peak_density_a > T::zero()) {
        return Err(Error::ZeroDensity);
    }
    Ok(s / peak_density_a)
}

/// `δx_q·s/δx_c − 1`; zero when the quantum broadening exceeds the classical
/// one by exactly `1/s`.
pub fn ratio_check<T: Real>(delta_q: T, delta_c: T, s: T) -> T {
    delta_q * s / delta_c - T::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Left-hand side strictly below the bound.
    Violated,
    Satisfied,
    /// Within [`INDETERMINATE_BAND`] of the bound.
    Indeterminate,
}

impl Verdict {
    fn compare<T: Real>(lhs: T, bound: T) -> Self {
        if (lhs - bound).abs() <= T::lit(INDETERMINATE_BAND) {
            Verdict::Indeterminate
        } else if lhs < bound {
            Verdict::Violated
        } else {
            Verdict::Satisfied
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Violated => "violated",
            Verdict::Satisfied => "satisfied",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequalities<T> {
    /// `|⟨μ|ψ⟩|²·δx_c`, bounded below by `P(A AND B) ≥ s` classically.
    pub lhs_eq13: T,
    /// `|⟨μ|ψ⟩|²·δx_q`, bounded below by 1 classically.
    pub lhs_eq14: T,
    pub eq13: Verdict,
    pub eq14: Verdict,
}

/// Evaluates both classical-causality inequalities.
pub fn causality_inequalities<T: Real>(
    peak_density_psi: T,
    delta_x_classical: T,
    delta_x_quantum: T,
    joint_prob_lower_bound: T,
) -> Inequalities<T> {
    let lhs_eq13 = peak_density_psi * delta_x_classical;
    let lhs_eq14 = peak_density_psi * delta_x_quantum;
    Inequalities {
        lhs_eq13,
        lhs_eq14,
        eq13: Verdict::compare(lhs_eq13, joint_prob_lower_bound),
        eq14: Verdict::compare(lhs_eq14, T::one()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig<T> {
    pub hbar: T,
    /// Relative magnitude floor for the phase mask.
    pub floor: T,
    /// Envelope width over Fresnel-zone width required for the validity regime.
    pub validity_factor: T,
}

impl<T: Real> Default for AnalysisConfig<T> {
    fn default() -> Self {
        Self {
            hbar: T::one(),
            floor: T::lit(DEFAULT_FLOOR),
            validity_factor: T::lit(DEFAULT_VALIDITY_FACTOR),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalityReport<T> {
    pub s: T,
    pub p_a: T,
    pub p_b: T,
    pub joint_prob_lower_bound: T,
    pub mu: T,
    pub gamma: T,
    pub curvature: Curvature,
    pub s_mu_over_hbar: T,
    pub peak_density_a: T,
    pub peak_density_psi: T,
    pub delta_x_classical: T,
    pub delta_x_quantum: T,
    /// `s/|⟨μ|A⟩|²`, kept next to `delta_x_quantum` for comparison.
    pub delta_x_quantum_overlap_form: T,
    pub ratio_check: T,
    pub fresnel_estimate: T,
    pub residue_integral: Option<T>,
    pub lhs_eq13: T,
    pub lhs_eq14: T,
    pub violated_eq13: bool,
    pub violated_eq14: bool,
    pub eq13_verdict: Verdict,
    pub eq14_verdict: Verdict,
    pub symmetry_residual: T,
    pub pattern_discrepancy: T,
    pub envelope_std: T,
    pub validity_regime: bool,
    pub aliasing_warning: bool,
    pub overlap_rotation_phi: T,
}

/// A single report entry, in a form the output layer can format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReportValue {
    Real(f64),
    Flag(bool),
    Text(&'static str),
    Missing,
}

impl<T: Real> CausalityReport<T> {
    /// Every field with its name, in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, ReportValue)> {
        use ReportValue::*;
        let r = |v: T| Real(v.to_f64_lossy());
        vec![
            ("s", r(self.s)),
            ("p_a", r(self.p_a)),
            ("p_b", r(self.p_b)),
            ("joint_prob_lower_bound", r(self.joint_prob_lower_bound)),
            ("mu", r(self.mu)),
            ("gamma", r(self.gamma)),
            (
                "gamma_sign",
                Text(match self.curvature {
                    Curvature::Minimum => "positive",
                    Curvature::Maximum => "negative",
                }),
            ),
            ("s_mu_over_hbar", r(self.s_mu_over_hbar)),
            ("peak_density_a", r(self.peak_density_a)),
            ("peak_density_psi", r(self.peak_density_psi)),
            ("delta_x_classical", r(self.delta_x_classical)),
            ("delta_x_quantum", r(self.delta_x_quantum)),
            ("delta_x_quantum_overlap_form", r(self.delta_x_quantum_overlap_form)),
            ("ratio_check", r(self.ratio_check)),
            ("fresnel_estimate", r(self.fresnel_estimate)),
            ("residue_integral", self.residue_integral.map_or(Missing, r)),
            ("lhs_eq13", r(self.lhs_eq13)),
            ("lhs_eq14", r(self.lhs_eq14)),
            ("violated_eq13", Flag(self.violated_eq13)),
            ("violated_eq14", Flag(self.violated_eq14)),
            ("eq13_verdict", Text(self.eq13_verdict.as_str())),
            ("eq14_verdict", Text(self.eq14_verdict.as_str())),
            ("symmetry_residual", r(self.symmetry_residual)),
            ("pattern_discrepancy", r(self.pattern_discrepancy)),
            ("envelope_std", r(self.envelope_std)),
            ("validity_regime", Flag(self.validity_regime)),
            ("aliasing_warning", Flag(self.aliasing_warning)),
            ("overlap_rotation_phi", r(self.overlap_rotation_phi)),
        ]
    }

    /// Field names in [`CausalityReport::fields`] order.
    pub fn field_names() -> Vec<&'static str> {
        // a throwaway instance keeps the two lists from drifting apart
        let zero = T::zero();
        let dummy = CausalityReport {
            s: zero,
            p_a: zero,
            p_b: zero,
            joint_prob_lower_bound: zero,
            mu: zero,
            gamma: zero,
            curvature: Curvature::Minimum,
            s_mu_over_hbar: zero,
            peak_density_a: zero,
            peak_density_psi: zero,
            delta_x_classical: zero,
            delta_x_quantum: zero,
            delta_x_quantum_overlap_form: zero,
            ratio_check: zero,
            fresnel_estimate: zero,
            residue_integral: None,
            lhs_eq13: zero,
            lhs_eq14: zero,
            violated_eq13: false,
            violated_eq14: false,
            eq13_verdict: Verdict::Satisfied,
            eq14_verdict: Verdict::Satisfied,
            symmetry_residual: zero,
            pattern_discrepancy: zero,
            envelope_std: zero,
            validity_regime: false,
            aliasing_warning: false,
            overlap_rotation_phi: zero,
        };
        dummy.fields().into_iter().map(|(k, _)| k).collect()
    }
}

/// Intermediate products shared by the report and the pattern output.
#[derive(Debug, Clone)]
pub struct Prepared<T> {
    /// `A` after the real-positive-overlap rotation.
    pub a: WaveFunction<T>,
    pub b: WaveFunction<T>,
    pub rotation_phi: T,
    /// Magnitude asymmetry of the pair, measured before rotation.
    pub symmetry_residual: T,
    pub superposition: SuperpositionResult<T>,
    pub profile: PhaseProfile<T>,
}

/// Rotation, superposition and phase profile for a pair.
pub fn prepare<T: Real>(a: &WaveFunction<T>, b: &WaveFunction<T>, cfg: &AnalysisConfig<T>) -> Result<Prepared<T>> {
    let symmetry_residual = symmetry_residual(a, b)?;
    let (a, rotation_phi) = rotate_to_real_overlap(a, b)?;
    let superposition = superpose_equal(&a, b)?;
    let profile = phase_difference(&a, b, cfg.floor, cfg.hbar)?;
    Ok(Prepared {
        a,
        b: b.clone(),
        rotation_phi,
        symmetry_residual,
        superposition,
        profile,
    })
}

impl<T: Real> Prepared<T> {
    /// The unique stationary point, or the reason there is none.
    pub fn stationary_point(&self) -> Result<StationaryPoint<T>> {
        let mut points = find_stationary_points(&self.profile)?;
        if points.len() != 1 {
            return Err(Error::MultipleStationaryPoints { count: points.len() });
        }
        Ok(points.remove(0))
    }

    pub fn report(&self, cfg: &AnalysisConfig<T>) -> Result<CausalityReport<T>> {
        let pt = self.stationary_point()?;
        let sup = &self.superposition;
        let s = sup.s;
        let peak_density_a = density_at(&self.a, pt.mu, &self.profile)?;
        let peak_density_psi = density_at(&sup.psi, pt.mu, &self.profile)?;
        let delta_x_classical = classical_broadening(s, peak_density_a)?;
        let delta_x_quantum = quantum_broadening(pt.gamma)?;
        let delta_x_quantum_overlap_form = quantum_broadening_from_overlap(s, peak_density_a)?;
        let ineq = causality_inequalities(
            peak_density_psi,
            delta_x_classical,
            delta_x_quantum,
            sup.joint_prob_lower_bound(),
        );
        let (_, envelope_std) = self.a.position_moments();

        Ok(CausalityReport {
            s,
            p_a: sup.p_a,
            p_b: sup.p_b,
            joint_prob_lower_bound: sup.joint_prob_lower_bound(),
            mu: pt.mu,
            gamma: pt.gamma,
            curvature: pt.curvature(),
            s_mu_over_hbar: pt.s_mu_over_hbar,
            peak_density_a,
            peak_density_psi,
            delta_x_classical,
            delta_x_quantum,
            delta_x_quantum_overlap_form,
            ratio_check: ratio_check(delta_x_quantum, delta_x_classical, s),
            fresnel_estimate: fresnel_overlap_estimate(&self.a, &pt, &self.profile)?,
            residue_integral: residue_integral(&self.a, &self.profile).ok(),
            lhs_eq13: ineq.lhs_eq13,
            lhs_eq14: ineq.lhs_eq14,
            violated_eq13: ineq.eq13 == Verdict::Violated,
            violated_eq14: ineq.eq14 == Verdict::Violated,
            eq13_verdict: ineq.eq13,
            eq14_verdict: ineq.eq14,
            symmetry_residual: self.symmetry_residual,
            pattern_discrepancy: pattern_discrepancy(&self.a, &self.b, &sup.psi, &self.profile)?,
            envelope_std,
            validity_regime: in_validity_regime(pt.gamma, envelope_std, cfg.validity_factor),
            aliasing_warning: self.profile.aliasing().is_some(),
            overlap_rotation_phi: self.rotation_phi,
        })
    }
}

/// Runs the whole chain for a pair of states on a common grid.
///
/// Only the single-stationary-point case yields a report.
pub fn analyze<T: Real>(
    a: &WaveFunction<T>,
    b: &WaveFunction<T>,
    cfg: &AnalysisConfig<T>,
) -> Result<CausalityReport<T>> {
    prepare(a, b, cfg)?.report(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;
    use crate::states::{conjugate_pair, gaussian, GaussianSpec};
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn broadening_substitutions() {
        let rho = 1.0 / (2.0 * PI).sqrt();
        assert!((classical_broadening(1.0, rho).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert!((classical_broadening(1.0f64, 0.39894).unwrap() - 2.5066).abs() < 1e-4);
        assert_eq!(classical_broadening(0.5, 0.25).unwrap(), 1.0);
        assert_eq!(classical_broadening(0.5, 0.0), Err(Error::ZeroDensity));
        assert!((quantum_broadening(PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((quantum_broadening(-PI / 8.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            quantum_broadening(0.0),
            Err(Error::DegenerateCurvature { .. })
        ));
    }

    #[test]
    fn ratio_is_exact_for_overlap_form() {
        for (s, d) in [(0.2f64, 0.3), (0.7, 1.9), (0.05, 0.011)] {
            let dc = classical_broadening(s, d).unwrap();
            let dq = quantum_broadening_from_overlap(s, d).unwrap();
            assert!(ratio_check(dq, dc, s).abs() < 1e-12);
        }
    }

    #[test]
    fn inequality_verdicts() {
        let i = causality_inequalities(0.1, 0.5, 2.0, 0.2);
        assert_eq!((i.eq13, i.eq14), (Verdict::Violated, Verdict::Violated));
        let i = causality_inequalities(1.0, 0.5, 2.0, 0.2);
        assert_eq!((i.eq13, i.eq14), (Verdict::Satisfied, Verdict::Satisfied));
        let i = causality_inequalities(0.5, 0.4, 2.0 + 1e-12, 0.2);
        assert_eq!((i.eq13, i.eq14), (Verdict::Indeterminate, Verdict::Indeterminate));
    }

    #[test]
    fn closed_form_prediction_for_small_overlap() {
        // (1 + cos π/4)·s/(1+s) and (1 + cos π/4)·s²/(1+s) at s = 0.2
        let s: f64 = 0.2;
        let lhs14 = (1.0 + FRAC_PI_4.cos()) * s / (1.0 + s);
        let lhs13 = lhs14 * s;
        assert!((lhs14 - 0.2845).abs() < 1e-4 && lhs14 < 1.0);
        assert!((lhs13 - 0.0569).abs() < 1e-4 && lhs13 < s);
    }

    #[test]
    fn conjugate_pair_report() {
        let g = Grid::<f64>::new(-12.0, 12.0, 1 << 12).unwrap();
        let pair = conjugate_pair(0.0, 1.0, 0.25, &g, 1.0).unwrap();
        let cfg = AnalysisConfig::default();
        let rep = analyze(&pair.a, &pair.b, &cfg).unwrap();
        assert!(rep.violated_eq13 && rep.violated_eq14);
        assert!(rep.mu.abs() <= 2.0 * g.dx());
        assert!((rep.gamma + 0.5).abs() < 1e-3);
        assert!(!rep.validity_regime);
        // recompute from raw fields
        assert!((rep.delta_x_classical - rep.s * rep.s / rep.peak_density_a).abs() < 1e-14);
        assert!((rep.lhs_eq14 - rep.peak_density_psi * rep.delta_x_quantum).abs() < 1e-14);
        assert!((rep.p_a + rep.p_b - 1.0 - rep.s).abs() < 1e-8);
        assert_eq!(rep.symmetry_residual, 0.0);
        assert_eq!(analyze(&pair.a, &pair.b, &cfg), Ok(rep));
    }

    #[test]
    fn linear_phase_pair_has_no_report() {
        let g = Grid::<f64>::new(-15.0, 15.0, 1 << 11).unwrap();
        let a = gaussian(&GaussianSpec::new(0.0, 0.0, 1.0), &g, 1.0).unwrap();
        let b = gaussian(&GaussianSpec::new(0.0, 1.0, 1.0), &g, 1.0).unwrap();
        assert_eq!(
            analyze(&a, &b, &AnalysisConfig::default()),
            Err(Error::NoStationaryPoint)
        );
    }

    #[test]
    fn field_names_are_unique() {
        let names = CausalityReport::<f64>::field_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(names[0], "s");
    }
}
