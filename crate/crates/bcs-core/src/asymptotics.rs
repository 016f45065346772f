//! Weak-coupling predictions and λ→0 limit extraction.
//!
//! The closed forms
//! `T_c = μ (8 e^{γ-2}/π) exp(π/(2√μ b_μ))` and
//! `Ξ = μ (8/e²) exp(π/(2√μ b_μ))`
//! hold asymptotically as λ → 0, with the universal ratio `Ξ/T_c = π/e^γ`.
//! Computed ladders of `(λ, T_c, Ξ, b_μ)` are reduced to drift diagnostics
//! whose λ→0 limits are the dimensionless constants `2 - γ - ln(8/π)` and
//! `2 - ln 8`, extracted by a constant-plus-linear least-squares fit.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fermi_ops::{bmu, emu};
use crate::gap_solver::{energy_gap, solve_gap, SolveParams};
use crate::linear_criterion::{critical_temperature, TcParams, TC_FLOOR_REL};
use crate::potentials::RadialPotential;
use crate::EULER_GAMMA;

/// Weak-coupling critical temperature prediction
/// `T_c = μ (8 e^{γ-2}/π) e^{π/(2√μ b_μ(λ))}`; needs `b_μ(λ) < 0`.
pub fn predict_tc(v: &RadialPotential, mu: f64, lambda: f64) -> Result<f64> {
    let report = bmu(v, mu, lambda)?;
    predict_tc_from_bmu(mu, report.b_mu)
}

/// Same prediction from an already-computed `b_μ`.
pub fn predict_tc_from_bmu(mu: f64, b_mu: f64) -> Result<f64> {
    if !(b_mu < 0.0) {
        return Err(Error::UnsupportedRegime(format!(
            "prediction requires b_mu < 0, got {b_mu}"
        )));
    }
    let prefactor = 8.0 * (EULER_GAMMA - 2.0).exp() / PI;
    Ok(mu * prefactor * (PI / (2.0 * mu.sqrt() * b_mu)).exp())
}

/// Weak-coupling energy-gap prediction `Ξ = μ (8/e²) e^{π/(2√μ b_μ(λ))}`.
pub fn predict_xi(v: &RadialPotential, mu: f64, lambda: f64) -> Result<f64> {
    let report = bmu(v, mu, lambda)?;
    predict_xi_from_bmu(mu, report.b_mu)
}

/// Same prediction from an already-computed `b_μ`.
pub fn predict_xi_from_bmu(mu: f64, b_mu: f64) -> Result<f64> {
    if !(b_mu < 0.0) {
        return Err(Error::UnsupportedRegime(format!(
            "prediction requires b_mu < 0, got {b_mu}"
        )));
    }
    let prefactor = 8.0 * (-2.0f64).exp();
    Ok(mu * prefactor * (PI / (2.0 * mu.sqrt() * b_mu)).exp())
}

/// Universal weak-coupling ratio `Ξ/T_c = π/e^γ ≈ 1.7639`.
pub fn universal_ratio() -> f64 {
    PI / EULER_GAMMA.exp()
}

/// Constant-plus-linear least-squares fit `value(λ) = c₀ + c₁ λ`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinearFit {
    /// Extrapolated λ→0 value `c₀`.
    pub intercept: f64,
    pub slope: f64,
    /// Root-mean-square fit residual.
    pub residual: f64,
}

/// Extrapolates a λ-ladder to λ = 0 with the constant+linear model.
pub fn extract_limit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let x_spread = sxx / n - (sx / n) * (sx / n);
    if det.abs() <= 1e-14 * n * sxx.max(1.0) || x_spread <= 0.0 {
        return Err(Error::Contract(
            "degenerate design: ladder points must have distinct couplings".into(),
        ));
    }
    let intercept = (sxx * sy - sx * sxy) / det;
    let slope = (n * sxy - sx * sy) / det;
    let residual = (points
        .iter()
        .map(|(x, y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(LinearFit {
        intercept,
        slope,
        residual,
    })
}

/// One ladder rung: computed quantities at a single coupling.
#[derive(Debug, Clone, Serialize)]
pub struct LadderEntry {
    pub lambda: f64,
    pub tc: f64,
    pub xi: f64,
    pub e_mu: f64,
    pub b_mu: f64,
    /// `ln(μ/T_c) + π/(2√μ b_μ(λ))`
    pub drift_tc: f64,
    /// `ln(μ/Ξ) + π/(2√μ b_μ(λ))`
    pub drift_xi: f64,
    /// `Ξ/T_c`
    pub ratio: f64,
    /// `λ ln(μ/T_c)`
    pub lambda_ln_tc: f64,
    pub tc_converged: bool,
    pub gap_converged: bool,
}

/// Extrapolated λ→0 limits of the ladder diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct Extrapolation {
    pub drift_tc: LinearFit,
    pub drift_xi: LinearFit,
    pub ratio: LinearFit,
    pub lambda_ln_tc: LinearFit,
}

/// λ-ladder diagnostics with extrapolated limits.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub mu: f64,
    /// Ladder sorted by decreasing coupling; only entries with `T_c` and `Ξ`
    /// above the floor are kept.
    pub entries: Vec<LadderEntry>,
    pub extrapolated: Extrapolation,
    /// Couplings dropped because the rung fell below the floor.
    pub dropped: Vec<f64>,
}

/// Default coupling ladder for a potential: the geometric pattern
/// `{0.6, 0.45, 0.3, 0.225, 0.15}` scaled so the smallest rung keeps
/// `ln(μ/T_c) ≲ 25` (a-priori scale `1/(λ|e_μ|)`) while staying weak enough
/// that quadratic-in-λ corrections do not pollute the linear extrapolation.
pub fn default_ladder(v: &RadialPotential, mu: f64) -> Result<Vec<f64>> {
    let spectrum = emu(v, mu, 8)?;
    let e = spectrum.e_mu();
    if !(e < 0.0) {
        return Err(Error::UnsupportedRegime(format!(
            "ladder needs e_mu < 0, got {e}"
        )));
    }
    let base = [0.6, 0.45, 0.3, 0.225, 0.15];
    // smallest rung: 0.15·s with ln(μ/T_c) ≈ 1/(λ|e_μ|) <= 25
    let scale = (1.0 / (25.0 * 0.15 * e.abs())).max(0.5);
    Ok(base.iter().map(|b| b * scale).collect())
}

/// Computes the full ladder (critical temperature, gap, `b_μ`) and the
/// extrapolated limits. Rungs whose `T_c` sits at the floor are dropped
/// with a note.
pub fn asymptotic_report(
    v: &RadialPotential,
    mu: f64,
    ladder: &[f64],
    tc_params: &TcParams,
    gap_params: &SolveParams,
) -> Result<AsymptoticsReport> {
    let spectrum = emu(v, mu, 8)?;
    if !(spectrum.e_mu() < 0.0) {
        return Err(Error::UnsupportedRegime(
            "asymptotic ladder needs e_mu < 0".into(),
        ));
    }
    let mut lambdas: Vec<f64> = ladder.to_vec();
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite couplings"));

    let computed: Vec<Result<LadderEntry>> = lambdas
        .par_iter()
        .map(|&lambda| compute_entry(v, mu, lambda, &spectrum.e_mu(), tc_params, gap_params))
        .collect();

    let mut entries = Vec::new();
    let mut dropped = Vec::new();
    for (lambda, entry) in lambdas.iter().zip(computed) {
        match entry {
            Ok(e) => {
                if e.tc > TC_FLOOR_REL * mu * 1.001 && e.xi > 0.0 {
                    entries.push(e);
                } else {
                    dropped.push(*lambda);
                }
            }
            Err(err) => return Err(err),
        }
    }

    let fit = |f: &dyn Fn(&LadderEntry) -> f64| -> Result<LinearFit> {
        let pts: Vec<(f64, f64)> = entries.iter().map(|e| (e.lambda, f(e))).collect();
        extract_limit(&pts)
    };
    let extrapolated = Extrapolation {
        drift_tc: fit(&|e| e.drift_tc)?,
        drift_xi: fit(&|e| e.drift_xi)?,
        ratio: fit(&|e| e.ratio)?,
        lambda_ln_tc: fit(&|e| e.lambda_ln_tc)?,
    };
    Ok(AsymptoticsReport {
        mu,
        entries,
        extrapolated,
        dropped,
    })
}

fn compute_entry(
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    _e_mu: &f64,
    tc_params: &TcParams,
    gap_params: &SolveParams,
) -> Result<LadderEntry> {
    let breport = bmu(v, mu, lambda)?;
    let tc_result = critical_temperature(v, mu, lambda, tc_params)?;
    let gap = solve_gap(v, mu, lambda, 0.0, gap_params)?;
    let xi = if gap.collapsed_to_normal {
        0.0
    } else {
        energy_gap(&gap)?
    };
    Ok(entry_from_values(
        mu,
        lambda,
        tc_result.tc,
        xi,
        breport.e_mu,
        breport.b_mu,
        !tc_result.no_superfluid && tc_result.grid_report.grid_converged,
        gap.converged,
    ))
}

/// Assembles a ladder rung from already-computed quantities (used by the
/// scan front end to avoid recomputation).
#[allow(clippy::too_many_arguments)]
pub fn entry_from_values(
    mu: f64,
    lambda: f64,
    tc: f64,
    xi: f64,
    e_mu: f64,
    b_mu: f64,
    tc_converged: bool,
    gap_converged: bool,
) -> LadderEntry {
    let kf = mu.sqrt();
    let correction = PI / (2.0 * kf * b_mu);
    let (drift_tc, lambda_ln_tc) = if tc > 0.0 {
        ((mu / tc).ln() + correction, lambda * (mu / tc).ln())
    } else {
        (f64::NAN, f64::NAN)
    };
    let drift_xi = if xi > 0.0 {
        (mu / xi).ln() + correction
    } else {
        f64::NAN
    };
    let ratio = if tc > 0.0 && xi > 0.0 { xi / tc } else { f64::NAN };
    LadderEntry {
        lambda,
        tc,
        xi,
        e_mu,
        b_mu,
        drift_tc,
        drift_xi,
        ratio,
        lambda_ln_tc,
        tc_converged,
        gap_converged,
    }
}

/// Builds a report from precomputed rungs (drops sub-floor entries).
pub fn report_from_entries(mu: f64, entries: Vec<LadderEntry>) -> Result<AsymptoticsReport> {
    let mut kept: Vec<LadderEntry> = Vec::new();
    let mut dropped = Vec::new();
    for e in entries {
        if e.tc > TC_FLOOR_REL * mu * 1.001 && e.xi > 0.0 {
            kept.push(e);
        } else {
            dropped.push(e.lambda);
        }
    }
    kept.sort_by(|a, b| b.lambda.partial_cmp(&a.lambda).expect("finite couplings"));
    let fit = |f: &dyn Fn(&LadderEntry) -> f64| -> Result<LinearFit> {
        let pts: Vec<(f64, f64)> = kept.iter().map(|e| (e.lambda, f(e))).collect();
        extract_limit(&pts)
    };
    let extrapolated = Extrapolation {
        drift_tc: fit(&|e| e.drift_tc)?,
        drift_xi: fit(&|e| e.drift_xi)?,
        ratio: fit(&|e| e.ratio)?,
        lambda_ln_tc: fit(&|e| e.lambda_ln_tc)?,
    };
    Ok(AsymptoticsReport {
        mu,
        entries: kept,
        extrapolated,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn tc_prefactor_value() {
        // 8 e^{γ-2}/π ≈ 0.6139
        let prefactor = 8.0 * (EULER_GAMMA - 2.0f64).exp() / PI;
        assert_abs_diff_eq!(prefactor, 0.6139, epsilon = 1e-4);
        let tc = predict_tc_from_bmu(1.0, -1.0).unwrap();
        assert_relative_eq!(
            tc,
            prefactor * (-PI / 2.0f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn xi_prefactor_value() {
        // 8/e² ≈ 1.0827
        let prefactor = 8.0 * (-2.0f64).exp();
        assert_abs_diff_eq!(prefactor, 1.0827, epsilon = 1e-4);
    }

    #[test]
    fn prediction_ratio_is_universal() {
        // Ξ/T_c = π/e^γ for any (μ, b)
        for (mu, b) in [(1.0, -0.5), (2.5, -1.3), (0.3, -0.01)] {
            let r = predict_xi_from_bmu(mu, b).unwrap() / predict_tc_from_bmu(mu, b).unwrap();
            assert_relative_eq!(r, universal_ratio(), max_relative = 1e-14);
        }
        assert_abs_diff_eq!(universal_ratio(), 1.7639, epsilon = 1e-4);
    }

    #[test]
    fn prediction_vanishes_as_b_approaches_zero() {
        let tiny = predict_tc_from_bmu(1.0, -1e-3).unwrap();
        assert!(tiny < 1e-300 || tiny == 0.0);
        assert!(predict_tc_from_bmu(1.0, 0.1).is_err());
    }

    #[test]
    fn extract_limit_exact_linear_data() {
        let pts: Vec<(f64, f64)> = [0.1, 0.2, 0.4, 0.8]
            .iter()
            .map(|x| (*x, 1.0 + 2.0 * x))
            .collect();
        let fit = extract_limit(&pts).unwrap();
        assert_relative_eq!(fit.intercept, 1.0, max_relative = 1e-12);
        assert_relative_eq!(fit.slope, 2.0, max_relative = 1e-12);
        assert!(fit.residual < 1e-13);
    }

    #[test]
    fn extract_limit_constant_data() {
        let pts = vec![(0.1, 3.5), (0.2, 3.5), (0.3, 3.5)];
        let fit = extract_limit(&pts).unwrap();
        assert_relative_eq!(fit.intercept, 3.5, max_relative = 1e-12);
        assert_abs_diff_eq!(fit.slope, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn extract_limit_rejects_degenerate_design() {
        assert!(extract_limit(&[(0.1, 1.0), (0.2, 2.0)]).is_err());
        assert!(extract_limit(&[(0.1, 1.0), (0.1, 2.0), (0.1, 3.0)]).is_err());
    }

    #[test]
    fn default_ladder_for_catalog_gaussian() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let ladder = default_ladder(&v, 1.0).unwrap();
        assert_eq!(ladder.len(), 5);
        // |e_mu| ≈ 0.89 keeps the plain half-scale pattern
        assert_relative_eq!(ladder[0], 0.3, max_relative = 1e-12);
        assert_relative_eq!(ladder[4], 0.075, max_relative = 1e-12);
    }

    #[test]
    fn report_from_entries_drops_floor_rungs() {
        let mk = |lambda: f64, tc: f64| {
            entry_from_values(1.0, lambda, tc, tc * 1.76, -0.9, -0.4 * lambda, true, true)
        };
        let entries = vec![mk(0.3, 1e-2), mk(0.2, 1e-3), mk(0.15, 1e-4), mk(0.1, 0.0)];
        let rep = report_from_entries(1.0, entries).unwrap();
        assert_eq!(rep.entries.len(), 3);
        assert_eq!(rep.dropped, vec![0.1]);
        // ratio column is constant by construction
        assert_relative_eq!(rep.extrapolated.ratio.intercept, 1.76, max_relative = 1e-10);
    }
}
