//! Critical temperature from the linear spectral criterion.
//!
//! A nontrivial gap solution at temperature `T` exists exactly when the
//! operator `K_{T,μ} + λV` has a negative eigenvalue, with the thermal symbol
//! `K_{T,μ}(p) = (p²-μ) coth((p²-μ)/(2T))`. For radial `V` the operator
//! block-diagonalizes over partial waves, each block discretized as a
//! weight-symmetrized Nyström matrix on a Fermi-refined grid. `K_{T,μ}` is
//! pointwise monotone in `T`, so the critical temperature is the zero
//! crossing of the lowest channel eigenvalue, located by bisection in `ln T`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermi_ops;
use crate::numerics::{
    bisect_monotone, build_fermi_grid, lowest_eigenpair, lowest_eigenvalue, QuadratureGrid,
    SpectralResult, SymMatrix,
};
use crate::potentials::{LegendreProjector, RadialPotential};

/// Temperature floor, relative to `μ`: below this double precision can no
/// longer resolve the symbol near the Fermi surface, and the result is
/// reported as indistinguishable from zero.
pub const TC_FLOOR_REL: f64 = 1e-12;

/// Temperature ceiling, relative to `μ`: a negative eigenvalue here means
/// the input is outside the physical regime.
pub const TC_CEILING_REL: f64 = 10.0;

/// Thermal symbol `K_{T,μ}(p²) = (p²-μ)(e^{(p²-μ)/T}+1)/(e^{(p²-μ)/T}-1)`.
///
/// Evaluated as `(p²-μ) coth((p²-μ)/(2T))` with a series branch near the
/// Fermi surface; reduces to `|p²-μ|` at `T = 0`.
pub fn k_symbol(p2: f64, mu: f64, t: f64) -> f64 {
    let x = p2 - mu;
    if t == 0.0 {
        return x.abs();
    }
    let y = x / (2.0 * t);
    if y.abs() < 5e-7 {
        // x coth(x/2T) = 2T (1 + y²/3 - y⁴/45 + ...)
        2.0 * t * (1.0 + y * y / 3.0)
    } else if y.abs() > 19.0 {
        x.abs()
    } else {
        x / y.tanh()
    }
}

/// Nyström discretization of one partial-wave block of `K_{T,μ} + λV`.
#[derive(Debug, Clone)]
pub struct ChannelOperator {
    pub grid: QuadratureGrid,
    pub ell: usize,
    pub mu: f64,
    pub temperature: f64,
    pub lambda: f64,
    pub matrix: SymMatrix,
}

/// Assembles `M_ij = K_{T,μ}(p_i) δ_ij + λ V̂_ℓ(p_i, p_j) p_i p_j √(w_i w_j)`.
///
/// `T = 0` assembly is permitted for diagnostics (the symbol vanishes on the
/// Fermi surface). For `T < 1e-3 μ` the grid must resolve the thermal width,
/// otherwise an accuracy error is raised.
pub fn assemble_channel_operator(
    v: &RadialPotential,
    ell: usize,
    mu: f64,
    t: f64,
    lambda: f64,
    grid: &QuadratureGrid,
) -> Result<ChannelOperator> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!("temperature must be >= 0, got {t}")));
    }
    check_grid_resolution(grid, mu, t)?;
    let proj = LegendreProjector::adaptive(ell, v, &default_probes(mu, grid.cutoff()));
    Ok(assemble_with_projector(v, &proj, ell, mu, t, lambda, grid))
}

fn check_grid_resolution(grid: &QuadratureGrid, mu: f64, t: f64) -> Result<()> {
    if t > 0.0 && t < 1e-3 * mu {
        let needed = t / mu.sqrt();
        if grid.finest_halfwidth() > needed {
            return Err(Error::Accuracy {
                context: format!(
                    "grid refinement {:.3e} too coarse for thermal width {:.3e}",
                    grid.finest_halfwidth(),
                    needed
                ),
                coarse: grid.finest_halfwidth(),
                fine: needed,
            });
        }
    }
    Ok(())
}

fn default_probes(mu: f64, cutoff: f64) -> Vec<(f64, f64)> {
    let kf = mu.sqrt();
    vec![
        (kf, kf),
        (kf, 0.3 * kf),
        (kf, (3.0 * kf).min(0.9 * cutoff)),
        (0.5 * kf, 0.9 * cutoff),
    ]
}

fn assemble_with_projector(
    v: &RadialPotential,
    proj: &LegendreProjector,
    ell: usize,
    mu: f64,
    t: f64,
    lambda: f64,
    grid: &QuadratureGrid,
) -> ChannelOperator {
    let n = grid.len();
    let p = grid.nodes();
    let w = grid.weights();
    let sqrt_w: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let mut matrix = SymMatrix::zeros(n);
    {
        let data = matrix.data_mut();
        data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate().take(i + 1) {
                *slot = lambda * proj.kernel(v, p[i], p[j]) * p[i] * p[j] * sqrt_w[i] * sqrt_w[j];
            }
        });
    }
    for i in 0..n {
        for j in 0..i {
            let val = matrix.get(i, j);
            matrix.set(j, i, val);
        }
        let diag = matrix.get(i, i) + k_symbol(p[i] * p[i], mu, t);
        matrix.set(i, i, diag);
    }
    ChannelOperator {
        grid: grid.clone(),
        ell,
        mu,
        temperature: t,
        lambda,
        matrix,
    }
}

/// Grid sizing for the channel operators.
#[derive(Debug, Clone)]
pub struct GridParams {
    pub n_outer: usize,
    pub n_inner: usize,
    /// Momentum cutoff; `None` picks `4√μ + 12·min_range⁻¹`.
    pub cutoff: Option<f64>,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            n_outer: 200,
            n_inner: 240,
            cutoff: None,
        }
    }
}

impl GridParams {
    pub fn cutoff_for(&self, v: &RadialPotential, mu: f64) -> f64 {
        self.cutoff
            .unwrap_or_else(|| 4.0 * mu.sqrt() + 12.0 / v.min_range())
    }

    /// Grid whose refined band tracks the thermal width `T/(2√μ)`.
    pub fn build(&self, v: &RadialPotential, mu: f64, t: f64) -> Result<QuadratureGrid> {
        let w_min = (t / (10.0 * mu)).min(1e-13).clamp(2e-14, 5e-2);
        build_fermi_grid(mu, self.cutoff_for(v, mu), self.n_outer, self.n_inner, w_min)
    }
}

/// Lowest channel eigenvalue with a grid-refinement verdict.
#[derive(Debug, Clone)]
pub struct ChannelEigenvalue {
    pub spectral: SpectralResult,
    /// Doubled grid agrees to 1e-8 relative or 1e-12·μ absolute.
    pub grid_converged: bool,
    pub coarse: f64,
    pub refined: f64,
}

/// Lowest eigenvalue of `K_{T,μ} + λV` in channel `ℓ`, with eigenvector and
/// refinement check against a doubled grid.
pub fn lowest_eigenvalue_kv(
    v: &RadialPotential,
    ell: usize,
    mu: f64,
    t: f64,
    lambda: f64,
    params: &GridParams,
) -> Result<ChannelEigenvalue> {
    let grid = params.build(v, mu, t)?;
    let op = assemble_channel_operator(v, ell, mu, t, lambda, &grid)?;
    let spectral = lowest_eigenpair(&op.matrix, 1e-12)?;
    let doubled = GridParams {
        n_outer: params.n_outer * 2,
        n_inner: params.n_inner * 2,
        cutoff: Some(params.cutoff_for(v, mu)),
    };
    let fine_grid = doubled.build(v, mu, t)?;
    let fine_op = assemble_channel_operator(v, ell, mu, t, lambda, &fine_grid)?;
    let refined = lowest_eigenvalue(&fine_op.matrix)?;
    let coarse = spectral.eigenvalue;
    let dev = (coarse - refined).abs();
    let grid_converged = dev <= 1e-8 * coarse.abs().max(refined.abs()) || dev <= 1e-12 * mu;
    if !grid_converged {
        return Err(Error::Accuracy {
            context: format!("channel {ell} eigenvalue not grid-converged at T = {t:e}"),
            coarse,
            fine: refined,
        });
    }
    Ok(ChannelEigenvalue {
        spectral,
        grid_converged,
        coarse,
        refined,
    })
}

/// Settings for [`critical_temperature`].
#[derive(Debug, Clone)]
pub struct TcParams {
    /// Partial-wave channels to scan.
    pub ell_set: Vec<usize>,
    /// Relative tolerance on `T_c`.
    pub rel_tol: f64,
    pub grid: GridParams,
}

impl Default for TcParams {
    fn default() -> Self {
        Self {
            ell_set: vec![0, 1, 2, 3, 4],
            rel_tol: 1e-6,
            grid: GridParams::default(),
        }
    }
}

/// Grid metadata attached to a [`TcResult`].
#[derive(Debug, Clone)]
pub struct GridReport {
    pub n_outer: usize,
    pub n_inner: usize,
    pub cutoff: f64,
    /// Eigenvalue at the located crossing on the base and doubled grids.
    pub eig_base: f64,
    pub eig_refined: f64,
    /// Estimated shift of `ln T_c` induced by the refinement.
    pub ln_tc_shift: f64,
    pub grid_converged: bool,
}

/// Critical temperature result.
#[derive(Debug, Clone)]
pub struct TcResult {
    /// Critical temperature; zero (with `no_superfluid`) when no channel is
    /// unstable at the floor temperature.
    pub tc: f64,
    /// Final temperature bracket around the crossing.
    pub bracket: (f64, f64),
    /// Channel in which criticality occurs.
    pub channel: usize,
    /// Per-channel crossing temperatures (`None` = stable down to the floor).
    pub per_channel: Vec<(usize, Option<f64>)>,
    /// `(T, lowest eigenvalue)` samples of the critical channel, ascending T.
    pub eigen_trace: Vec<(f64, f64)>,
    pub grid_report: GridReport,
    pub no_superfluid: bool,
    pub monotone_warning: bool,
}

struct ChannelScan {
    ell: usize,
    crossing: Option<(f64, (f64, f64), bool)>,
    trace: Vec<(f64, f64)>,
}

/// Locates `T_c(λV)` as the largest per-channel zero crossing of the lowest
/// eigenvalue, bisecting in `ln T` over `[1e-12·μ, 10·μ]`.
pub fn critical_temperature(
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    params: &TcParams,
) -> Result<TcResult> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let floor = TC_FLOOR_REL * mu;
    let ceiling = TC_CEILING_REL * mu;
    let cutoff = params.grid.cutoff_for(v, mu);

    let scans: Vec<Result<ChannelScan>> = params
        .ell_set
        .par_iter()
        .map(|&ell| scan_channel(v, ell, mu, lambda, floor, ceiling, params))
        .collect();

    let mut per_channel = Vec::new();
    let mut best: Option<(usize, f64, (f64, f64), bool, Vec<(f64, f64)>)> = None;
    for scan in scans {
        let scan = scan?;
        per_channel.push((scan.ell, scan.crossing.as_ref().map(|c| c.0)));
        if let Some((tc, bracket, warn)) = scan.crossing {
            let better = best.as_ref().map(|b| tc > b.1).unwrap_or(true);
            if better {
                best = Some((scan.ell, tc, bracket, warn, scan.trace));
            }
        }
    }

    match best {
        None => Ok(TcResult {
            tc: 0.0,
            bracket: (0.0, floor),
            channel: 0,
            per_channel,
            eigen_trace: Vec::new(),
            grid_report: GridReport {
                n_outer: params.grid.n_outer,
                n_inner: params.grid.n_inner,
                cutoff,
                eig_base: 0.0,
                eig_refined: 0.0,
                ln_tc_shift: 0.0,
                grid_converged: true,
            },
            no_superfluid: true,
            monotone_warning: false,
        }),
        Some((channel, tc, bracket, warn, mut trace)) => {
            trace.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite temperatures"));
            let grid_report =
                refinement_report(v, channel, mu, lambda, tc, &trace, params, cutoff)?;
            Ok(TcResult {
                tc,
                bracket,
                channel,
                per_channel,
                eigen_trace: trace,
                grid_report,
                no_superfluid: false,
                monotone_warning: warn,
            })
        }
    }
}

fn scan_channel(
    v: &RadialPotential,
    ell: usize,
    mu: f64,
    lambda: f64,
    floor: f64,
    ceiling: f64,
    params: &TcParams,
) -> Result<ChannelScan> {
    let proj = LegendreProjector::adaptive(
        ell,
        v,
        &default_probes(mu, params.grid.cutoff_for(v, mu)),
    );
    let mut trace: Vec<(f64, f64)> = Vec::new();
    let eig_at = |t: f64, trace: &mut Vec<(f64, f64)>| -> Result<f64> {
        let grid = params.grid.build(v, mu, t)?;
        let op = assemble_with_projector(v, &proj, ell, mu, t, lambda, &grid);
        let e = lowest_eigenvalue(&op.matrix)?;
        trace.push((t, e));
        Ok(e)
    };

    let e_floor = eig_at(floor, &mut trace)?;
    if e_floor >= 0.0 {
        return Ok(ChannelScan {
            ell,
            crossing: None,
            trace,
        });
    }
    let e_ceiling = eig_at(ceiling, &mut trace)?;
    if e_ceiling < 0.0 {
        return Err(Error::Bracket {
            lo: floor,
            hi: ceiling,
            f_lo: e_floor,
            f_hi: e_ceiling,
        });
    }

    // Bisection in ln T: T_c is exponentially small in the coupling.
    let ln_tol = params.rel_tol / (ceiling / floor).ln();
    let mut inner_err: Option<Error> = None;
    let bis = bisect_monotone(
        |ln_t| match eig_at(ln_t.exp(), &mut trace) {
            Ok(e) => e,
            Err(err) => {
                inner_err = Some(err);
                f64::NAN
            }
        },
        floor.ln(),
        ceiling.ln(),
        ln_tol,
    );
    if let Some(err) = inner_err {
        return Err(err);
    }
    let bis = bis?;
    Ok(ChannelScan {
        ell,
        crossing: Some((
            bis.root.exp(),
            (bis.bracket.0.exp(), bis.bracket.1.exp()),
            bis.monotone_warning,
        )),
        trace,
    })
}

#[allow(clippy::too_many_arguments)]
fn refinement_report(
    v: &RadialPotential,
    channel: usize,
    mu: f64,
    lambda: f64,
    tc: f64,
    trace: &[(f64, f64)],
    params: &TcParams,
    cutoff: f64,
) -> Result<GridReport> {
    let base_grid = params.grid.build(v, mu, tc)?;
    let base_op = assemble_channel_operator(v, channel, mu, tc, lambda, &base_grid)?;
    let eig_base = lowest_eigenvalue(&base_op.matrix)?;
    let doubled = GridParams {
        n_outer: params.grid.n_outer * 2,
        n_inner: params.grid.n_inner * 2,
        cutoff: Some(cutoff),
    };
    let fine_grid = doubled.build(v, mu, tc)?;
    let fine_op = assemble_channel_operator(v, channel, mu, tc, lambda, &fine_grid)?;
    let eig_refined = lowest_eigenvalue(&fine_op.matrix)?;

    // local slope d(eig)/d(ln T) from the tightest trace window around tc
    let mut slope = 0.0;
    let mut best_span = f64::INFINITY;
    for win in trace.windows(2) {
        let (t0, e0) = win[0];
        let (t1, e1) = win[1];
        if t0 <= tc && tc <= t1 && t1 > t0 {
            let span = (t1 / t0).ln();
            if span < best_span && span > 0.0 {
                best_span = span;
                slope = (e1 - e0) / span;
            }
        }
    }
    let ln_tc_shift = if slope.abs() > 0.0 {
        (eig_refined - eig_base) / slope
    } else {
        0.0
    };
    Ok(GridReport {
        n_outer: params.grid.n_outer,
        n_inner: params.grid.n_inner,
        cutoff,
        eig_base,
        eig_refined,
        ln_tc_shift,
        grid_converged: ln_tc_shift.abs() <= 10.0 * params.rel_tol,
    })
}

/// First-order Birman–Schwinger consistency temperature: the solution `T₁`
/// of `λ √μ e_μ m_μ(T) = -1`, which tracks `ln T_c` to leading order.
pub fn first_order_tc(e_mu: f64, mu: f64, lambda: f64) -> Result<f64> {
    if !(mu > 0.0) || !(lambda > 0.0) {
        return Err(Error::InvalidParameter("need mu > 0 and lambda > 0".into()));
    }
    if e_mu >= 0.0 {
        return Err(Error::UnsupportedRegime(format!(
            "first-order consistency needs e_mu < 0, got {e_mu}"
        )));
    }
    let floor = TC_FLOOR_REL * mu * 0.01;
    let ceiling = TC_CEILING_REL * mu;
    let f = |ln_t: f64| -> f64 {
        let m = fermi_ops::mmu(mu, ln_t.exp()).unwrap_or(0.0);
        1.0 - lambda * mu.sqrt() * e_mu.abs() * m
    };
    let bis = bisect_monotone(f, floor.ln(), ceiling.ln(), 1e-9)?;
    Ok(bis.root.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symbol_at_fermi_surface_is_twice_t() {
        assert_relative_eq!(k_symbol(1.0, 1.0, 0.37), 0.74, max_relative = 1e-14);
    }

    #[test]
    fn symbol_at_zero_temperature() {
        assert_eq!(k_symbol(2.0, 1.0, 0.0), 1.0);
        assert_eq!(k_symbol(0.25, 1.0, 0.0), 0.75);
    }

    #[test]
    fn symbol_far_from_fermi_surface() {
        // 10 coth(50) = 10 to machine precision
        assert_relative_eq!(k_symbol(11.0, 1.0, 0.1), 10.0, max_relative = 1e-15);
    }

    #[test]
    fn symbol_is_continuous_across_series_branch() {
        let t = 0.3;
        let near = k_symbol(1.0 + 4e-7 * t, 1.0, t);
        let series = k_symbol(1.0 + 1e-9, 1.0, t);
        assert_relative_eq!(near, series, max_relative = 1e-10);
        assert!(k_symbol(1.0, 1.0, t) >= 2.0 * t * (1.0 - 1e-15));
    }

    #[test]
    fn zero_potential_gives_diagonal_matrix_of_symbol_values() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        let grid = build_fermi_grid(1.0, 8.0, 48, 48, 1e-4).unwrap();
        let op = assemble_channel_operator(&v, 0, 1.0, 0.05, 1.0, &grid).unwrap();
        for i in 0..grid.len() {
            let p = grid.nodes()[i];
            assert_eq!(op.matrix.get(i, i), k_symbol(p * p, 1.0, 0.05));
            for j in 0..i {
                assert_eq!(op.matrix.get(i, j), 0.0);
            }
        }
        // minimum of K is 2T at the Fermi surface
        let e = lowest_eigenvalue(&op.matrix).unwrap();
        assert!(e >= 2.0 * 0.05 * (1.0 - 1e-10));
    }

    #[test]
    fn assembled_operator_is_exactly_symmetric() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let grid = build_fermi_grid(1.0, 8.0, 48, 64, 1e-5).unwrap();
        let op = assemble_channel_operator(&v, 1, 1.0, 0.02, 0.7, &grid).unwrap();
        for i in 0..grid.len() {
            for j in 0..i {
                assert_eq!(op.matrix.get(i, j), op.matrix.get(j, i));
            }
        }
    }

    #[test]
    fn rayleigh_quotient_bounds_lowest_eigenvalue() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let grid = build_fermi_grid(1.0, 8.0, 64, 96, 1e-6).unwrap();
        let op = assemble_channel_operator(&v, 0, 1.0, 0.01, 1.0, &grid).unwrap();
        let e = lowest_eigenvalue(&op.matrix).unwrap();
        // variational test vector: Gaussian bump at the Fermi surface in the
        // symmetrized coordinates
        let n = grid.len();
        let mut g: Vec<f64> = (0..n)
            .map(|i| {
                let p = grid.nodes()[i];
                (-(p - 1.0) * (p - 1.0) / 0.01).exp() * p * grid.weights()[i].sqrt()
            })
            .collect();
        let norm: f64 = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        g.iter_mut().for_each(|x| *x /= norm);
        let mg = op.matrix.matvec(&g);
        let rayleigh: f64 = g.iter().zip(mg.iter()).map(|(a, b)| a * b).sum();
        assert!(rayleigh >= e - 1e-12 * op.matrix.norm_inf());
    }

    #[test]
    fn coarse_grid_at_low_temperature_is_rejected() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let grid = build_fermi_grid(1.0, 8.0, 48, 48, 1e-2).unwrap();
        let err = assemble_channel_operator(&v, 0, 1.0, 1e-6, 1.0, &grid);
        assert!(matches!(err, Err(Error::Accuracy { .. })));
    }

    #[test]
    fn eigenvalue_increases_with_temperature() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let params = GridParams {
            n_outer: 96,
            n_inner: 128,
            cutoff: Some(8.0),
        };
        let mut prev = f64::NEG_INFINITY;
        for t in [0.01, 0.02, 0.05, 0.1] {
            let grid = params.build(&v, 1.0, t).unwrap();
            let op = assemble_channel_operator(&v, 0, 1.0, t, 1.0, &grid).unwrap();
            let e = lowest_eigenvalue(&op.matrix).unwrap();
            assert!(e > prev, "eigenvalue not increasing at T = {t}");
            prev = e;
        }
    }

    #[test]
    fn strong_coupling_gives_negative_eigenvalue_at_low_t() {
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let params = GridParams {
            n_outer: 96,
            n_inner: 160,
            cutoff: Some(8.0),
        };
        let grid = params.build(&v, 1.0, 1e-3).unwrap();
        let op = assemble_channel_operator(&v, 0, 1.0, 1e-3, 1.0, &grid).unwrap();
        assert!(lowest_eigenvalue(&op.matrix).unwrap() < 0.0);
    }

    #[test]
    fn zero_potential_has_no_superfluid_phase() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        let params = TcParams {
            ell_set: vec![0, 1],
            grid: GridParams {
                n_outer: 64,
                n_inner: 96,
                cutoff: Some(8.0),
            },
            ..TcParams::default()
        };
        let r = critical_temperature(&v, 1.0, 0.5, &params).unwrap();
        assert!(r.no_superfluid);
        assert_eq!(r.tc, 0.0);
    }

    #[test]
    fn negative_fermi_eigenvalue_forces_positive_tc() {
        // e_mu < 0 here, so the critical temperature is positive even at
        // weak coupling
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        let params = TcParams {
            ell_set: vec![0],
            rel_tol: 1e-5,
            grid: GridParams {
                n_outer: 128,
                n_inner: 192,
                cutoff: Some(8.0),
            },
        };
        let r = critical_temperature(&v, 1.0, 0.3, &params).unwrap();
        assert!(!r.no_superfluid);
        assert!(r.tc > 0.0 && r.tc < 10.0);
        // crossing bracket straddles zero
        let last_neg = r
            .eigen_trace
            .iter()
            .filter(|(t, _)| *t <= r.bracket.0 * (1.0 + 1e-12))
            .map(|(_, e)| *e)
            .next_back()
            .unwrap();
        assert!(last_neg < 0.0);
    }

    #[test]
    fn symbol_monotonicity_in_t_is_pointwise() {
        for p2 in [0.2, 0.9, 1.0, 1.1, 3.0] {
            let mut prev = k_symbol(p2, 1.0, 1e-9);
            for t in [1e-6, 1e-3, 0.1, 1.0, 10.0] {
                let cur = k_symbol(p2, 1.0, t);
                assert!(cur >= prev - 1e-14 * prev.abs());
                prev = cur;
            }
        }
    }
}
