//! Built-in invariant suite behind `qcausal verify`.

use qcausal_core::interference::{overlap_identity_residual, superpose_equal, unconditional_residue};
use qcausal_core::numerics::{from_momentum, to_momentum, Grid};
use qcausal_core::states::{conjugate_pair, free_evolve, gaussian, GaussianSpec};
use qcausal_core::stationary_phase::fresnel_reference;

use crate::config::ScenarioConfig;
use crate::run::execute;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fourier_round_trip() -> Result<String, String> {
    let grid = Grid::<f64>::new(-20.0, 20.0, 1024).map_err(err)?;
    let psi = gaussian(&GaussianSpec::new(1.0, 2.0, 1.3).with_chirp(0.2), &grid, 1.0).map_err(err)?;
    let back = from_momentum(&to_momentum(psi.samples(), 1.0), &grid, 1.0).map_err(err)?;
    let worst = psi
        .values()
        .iter()
        .zip(back.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    ensure(worst < 1e-12, format!("max deviation {worst:.3e}"))
}

fn evolution_preserves_norm() -> Result<String, String> {
    let grid = Grid::<f64>::new(-60.0, 60.0, 4096).map_err(err)?;
    let psi = gaussian(&GaussianSpec::new(-5.0, 1.0, 1.0), &grid, 1.0).map_err(err)?;
    let later = free_evolve(&psi, 1.0, 10.0, 1.0).map_err(err)?;
    let (mean, _) = later.position_moments();
    let drift = (later.norm() - 1.0).abs();
    ensure(
        drift < 1e-12 && (mean - 5.0).abs() < 1e-8,
        format!("norm drift {drift:.3e}, mean {mean:.6}"),
    )
}

fn overlap_identity() -> Result<String, String> {
    let grid = Grid::<f64>::new(-20.0, 20.0, 4096).map_err(err)?;
    let mut worst = 0.0f64;
    for sep in [0.0, 1.0, 2.5, 5.0] {
        let a = gaussian(&GaussianSpec::new(-sep / 2.0, 0.0, 1.0), &grid, 1.0).map_err(err)?;
        let b = gaussian(&GaussianSpec::new(sep / 2.0, 0.3, 1.2), &grid, 1.0).map_err(err)?;
        let (a, _) = qcausal_core::states::rotate_to_real_overlap(&a, &b).map_err(err)?;
        if sep > 0.0 {
            worst = worst.max(overlap_identity_residual(&superpose_equal(&a, &b).map_err(err)?).abs());
        }
        let direct = a.inner(&b).map_err(err)?.re;
        worst = worst.max((unconditional_residue(&a, &b).map_err(err)? - direct).abs());
    }
    ensure(worst < 1e-10, format!("max residual {worst:.3e}"))
}

fn conjugate_symmetry() -> Result<String, String> {
    let grid = Grid::<f64>::new(-12.0, 12.0, 4096).map_err(err)?;
    let pair = conjugate_pair(0.0, 1.0, 0.25, &grid, 1.0).map_err(err)?;
    let expected = (1.0f64 + 16.0 * 0.0625).powf(-0.25);
    let dev = (pair.overlap - expected).abs();
    ensure(
        dev < 1e-10,
        format!("overlap {:.12}, closed form {expected:.12}", pair.overlap),
    )
}

fn fresnel_tail() -> Result<String, String> {
    let r = fresnel_reference(1.0f64, 25.0).map_err(err)?;
    let gap = (r.numeric - r.closed_form).abs();
    ensure(
        gap <= r.tail_bound + r.quadrature_error && gap / r.closed_form < 0.03,
        format!("gap {gap:.3e}, bound {:.3e}", r.tail_bound),
    )
}

fn default_pipelines() -> Result<String, String> {
    let mut detail = Vec::new();
    for cfg in [
        ScenarioConfig::default_conjugate_pair(),
        ScenarioConfig::default_propagation(),
    ] {
        let out = execute(&cfg, false).map_err(err)?;
        let rep = out.report.ok_or_else(|| format!("status {}", out.status))?;
        if !(rep.violated_eq13 && rep.violated_eq14) {
            return Err(format!("inequalities not violated: lhs14 {:.4}", rep.lhs_eq14));
        }
        detail.push(format!("s {:.4} lhs14 {:.4}", rep.s, rep.lhs_eq14));
    }
    Ok(detail.join("; "))
}

fn deterministic_output() -> Result<String, String> {
    let cfg = ScenarioConfig::default_conjugate_pair();
    let a = execute(&cfg, true).map_err(err)?;
    let b = execute(&cfg, true).map_err(err)?;
    ensure(
        a.report_json == b.report_json && a.pattern_csv == b.pattern_csv,
        format!("{} report bytes", a.report_json.len()),
    )
}

pub const CHECKS: &[(&str, Check)] = &[
    ("fourier round trip", fourier_round_trip),
    (
        "free evolution keeps norm and follows the classical path",
        evolution_preserves_norm,
    ),
    ("superposition norm and overlap identities", overlap_identity),
    ("conjugate pair overlap", conjugate_symmetry),
    ("fresnel integral within tail bound", fresnel_tail),
    ("default scenarios violate both inequalities", default_pipelines),
    ("byte-identical repeated runs", deterministic_output),
];

/// Runs every check, printing one line each. Returns the number of failures.
pub fn run_checks(mut out: impl std::io::Write) -> usize {
    let mut failures = 0;
    for (name, check) in CHECKS {
        let line = match check() {
            Ok(d) => format!("PASS  {name} ({d})"),
            Err(d) => {
                failures += 1;
                format!("FAIL  {name} ({d})")
            }
        };
        let _ = writeln!(out, "{line}");
    }
    failures
}
