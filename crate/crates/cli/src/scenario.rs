//! Turns a [`ScenarioConfig`] into the pair of states `|A⟩`, `|B⟩`.

use qcausal_core::numerics::Grid;
use qcausal_core::states::{conjugate_pair, free_evolve, gaussian, rotate_to_real_overlap, GaussianSpec};
use qcausal_core::{Result, WaveFunction64};

use crate::config::{ScenarioConfig, ScenarioKind};

#[derive(Debug, Clone)]
pub struct Scenario {
    pub a: WaveFunction64,
    pub b: WaveFunction64,
    /// Global phase applied to `a` so that `⟨B|A⟩ > 0`.
    pub rotation_phi: f64,
}

pub fn grid_of(cfg: &ScenarioConfig) -> Result<Grid<f64>> {
    Grid::new(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n)
}

/// Builds both states on the configured grid and applies the overlap rotation.
///
/// Propagation: `A` is a packet of width `sigma_A` at rest at `x_A`; `B` is a
/// minimum-uncertainty packet of momentum `p_B` and momentum spread
/// `sigma_p_B` (position width `ħ/(2·sigma_p_B)`), also starting at `x_A`.
/// Both evolve freely for `time`.
pub fn build_scenario(cfg: &ScenarioConfig) -> Result<Scenario> {
    let grid = grid_of(cfg)?;
    let hbar = cfg.hbar;
    let missing = |name: &'static str| qcausal_core::Error::InvalidParameter {
        name,
        reason: "required for this scenario".into(),
    };
    match cfg.scenario {
        ScenarioKind::ConjugatePair => {
            let pair = conjugate_pair(
                cfg.x0.unwrap_or(0.0),
                cfg.sigma.ok_or_else(|| missing("sigma"))?,
                cfg.chirp.ok_or_else(|| missing("chirp"))?,
                &grid,
                hbar,
            )?;
            Ok(Scenario {
                a: pair.a,
                b: pair.b,
                rotation_phi: pair.rotation,
            })
        }
        ScenarioKind::Propagation => {
            let x_a = cfg.x_a.ok_or_else(|| missing("x_A"))?;
            let p_b = cfg.p_b.ok_or_else(|| missing("p_B"))?;
            let sigma_a = cfg.sigma_a.ok_or_else(|| missing("sigma_A"))?;
            let sigma_p_b = cfg.sigma_p_b.ok_or_else(|| missing("sigma_p_B"))?;
            let t = cfg.time.ok_or_else(|| missing("time"))?;

            let a0 = gaussian(&GaussianSpec::new(x_a, 0.0, sigma_a), &grid, hbar)?;
            let b0 = gaussian(&GaussianSpec::new(x_a, p_b, hbar / (2.0 * sigma_p_b)), &grid, hbar)?;
            let a = free_evolve(&a0, cfg.mass, t, hbar)?;
            let b = free_evolve(&b0, cfg.mass, t, hbar)?;
            let (a, rotation_phi) = rotate_to_real_overlap(&a, &b)?;
            Ok(Scenario { a, b, rotation_phi })
        }
    }
}

/// Classical meeting point `x_A + p_B·t/m` for the propagation scenario.
pub fn newtonian_mu(cfg: &ScenarioConfig) -> Option<f64> {
    match cfg.scenario {
        ScenarioKind::Propagation => Some(cfg.x_a? + cfg.p_b? * cfg.time? / cfg.mass),
        ScenarioKind::ConjugatePair => cfg.x0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcausal_core::causality::{analyze, AnalysisConfig};
    use qcausal_core::Error;

    fn analysis(cfg: &ScenarioConfig) -> AnalysisConfig<f64> {
        AnalysisConfig {
            hbar: cfg.hbar,
            floor: cfg.floor,
            validity_factor: cfg.validity_factor,
        }
    }

    #[test]
    fn propagation_meets_at_newtonian_point() {
        let cfg = ScenarioConfig::default_propagation();
        let sc = build_scenario(&cfg).unwrap();
        let ov = sc.b.inner(&sc.a).unwrap();
        assert!(ov.im.abs() < 1e-12 * ov.norm() && ov.re > 0.0);
        let rep = analyze(&sc.a, &sc.b, &analysis(&cfg)).unwrap();
        let dx = (cfg.grid.x_max - cfg.grid.x_min) / cfg.grid.n as f64;
        assert!((rep.mu - newtonian_mu(&cfg).unwrap()).abs() <= 2.0 * dx, "{}", rep.mu);
        assert!(rep.violated_eq13 && rep.violated_eq14);
    }

    #[test]
    fn conjugate_pair_defaults() {
        let cfg = ScenarioConfig::default_conjugate_pair();
        let sc = build_scenario(&cfg).unwrap();
        let rep = analyze(&sc.a, &sc.b, &analysis(&cfg)).unwrap();
        assert!(rep.mu.abs() < 1e-6);
        assert!((rep.gamma + 0.5).abs() < 1e-3);
    }

    #[test]
    fn zero_time_has_linear_phase() {
        let cfg = ScenarioConfig::default_propagation().with_param("time", 0.0).unwrap();
        let sc = build_scenario(&cfg).unwrap();
        assert_eq!(analyze(&sc.a, &sc.b, &analysis(&cfg)), Err(Error::NoStationaryPoint));
    }

    #[test]
    fn long_time_overflows_box() {
        let cfg = ScenarioConfig::default_propagation().with_param("time", 40.0).unwrap();
        assert!(matches!(build_scenario(&cfg), Err(Error::BoxOverflow { .. })));
    }
}
