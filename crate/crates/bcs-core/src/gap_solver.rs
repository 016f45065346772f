//! Nonlinear gap equation by damped fixed-point iteration.
//!
//! In the s-wave channel the gap equation reads
//! `Δ(p) = -λ ∫₀^∞ V̂₀(p,q) (Δ(q)/E(q)) tanh(E(q)/2T) q² dq`
//! with `E(q) = √((q²-μ)² + Δ(q)²)`; the `tanh` factor is 1 at `T = 0`.
//! For potentials with nonpositive transform the kernel `-λV̂₀` is
//! entrywise nonnegative, the minimizer is unique up to phase, and the
//! iteration preserves positivity. The quadrature grid's refined band tracks
//! `max(Δ(√μ), T)` and is rebuilt when the gap drifts away from it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linear_criterion::{k_symbol, GridParams};
use crate::numerics::QuadratureGrid;
use crate::potentials::{LegendreProjector, RadialPotential};

/// Gap amplitudes below `NORMAL_THRESHOLD_REL·μ` are reported as the normal
/// state, mirroring the critical-temperature floor.
pub const NORMAL_THRESHOLD_REL: f64 = 1e-12;

/// Sampled solution of the gap equation.
#[derive(Debug, Clone)]
pub struct GapFunction {
    grid: QuadratureGrid,
    values: Vec<f64>,
    /// `Δ/E·tanh(E/2T)` at the nodes, cached for kernel-side evaluation.
    factors: Vec<f64>,
    potential: Option<RadialPotential>,
    projector_order: usize,
    pub mu: f64,
    pub lambda: f64,
    pub temperature: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Sup-norm of the last damped update.
    pub residual: f64,
    /// All values fell below the normal-state threshold.
    pub collapsed_to_normal: bool,
    /// Collapse happened at `T = 0` although `e_μ < 0` predicts pairing.
    pub suspicious_collapse: bool,
    /// An iterate went negative beyond rounding slack (should not happen in
    /// the nonpositive-transform regime).
    pub positivity_violation: bool,
}

impl GapFunction {
    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Δ(√μ)`.
    pub fn delta_fermi(&self) -> f64 {
        self.eval(self.mu.sqrt())
    }

    /// `Δ(p)`: linear interpolation inside the node range, direct kernel
    /// evaluation `-λ ∫ V̂₀(p,q) Δ(q)/E(q) tanh(·) q² dq` beyond it.
    pub fn eval(&self, p: f64) -> f64 {
        let nodes = self.grid.nodes();
        if p >= nodes[0] && p <= nodes[nodes.len() - 1] {
            return self.grid.interpolate(&self.values, p);
        }
        self.kernel_eval(p).unwrap_or_else(|| {
            // synthetic gap: clamp to the edge value
            self.grid.interpolate(&self.values, p)
        })
    }

    /// Fixed-point image `G(Δ)(p)` from the cached node factors; `None` for
    /// synthetic gaps without a potential.
    pub fn kernel_eval(&self, p: f64) -> Option<f64> {
        let v = self.potential.as_ref()?;
        let proj = LegendreProjector::new(0, self.projector_order);
        let nodes = self.grid.nodes();
        let weights = self.grid.weights();
        let mut acc = 0.0;
        for j in 0..nodes.len() {
            acc += proj.kernel(v, p, nodes[j]) * self.factors[j] * nodes[j] * nodes[j]
                * weights[j];
        }
        Some(-self.lambda * acc)
    }

    /// Synthetic constant gap, used for functional checks; evaluates to
    /// `value` everywhere.
    pub fn constant(mu: f64, value: f64) -> Self {
        let cutoff = 4.0 * mu.sqrt().max(1.0) + 4.0 * mu.sqrt();
        let grid = crate::numerics::build_fermi_grid(mu, cutoff, 32, 32, 1e-3)
            .expect("synthetic grid parameters are valid");
        let n = grid.len();
        Self {
            grid,
            values: vec![value; n],
            factors: vec![0.0; n],
            potential: None,
            projector_order: 64,
            mu,
            lambda: 0.0,
            temperature: 0.0,
            converged: true,
            iterations: 0,
            residual: 0.0,
            collapsed_to_normal: value == 0.0,
            suspicious_collapse: false,
            positivity_violation: false,
        }
    }

    /// Sup-norm fixed-point defect `‖Δ - G(Δ)‖_∞ / ‖Δ‖_∞` measured with the
    /// quadrature of another grid. `Δ` is carried to the new nodes through
    /// the kernel image, so the defect reflects quadrature consistency, not
    /// interpolation error.
    pub fn fixed_point_residual_on(&self, grid: &QuadratureGrid) -> Result<f64> {
        let v = self
            .potential
            .as_ref()
            .ok_or_else(|| Error::Contract("synthetic gap has no kernel".into()))?;
        let proj = LegendreProjector::new(0, self.projector_order);
        let nodes = grid.nodes();
        let weights = grid.weights();
        let n = nodes.len();
        let delta: Vec<f64> = nodes
            .par_iter()
            .map(|p| self.kernel_eval(*p).expect("potential present"))
            .collect();
        let sup = delta.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if sup == 0.0 {
            return Ok(0.0);
        }
        let factors: Vec<f64> = (0..n)
            .map(|j| {
                let x = nodes[j] * nodes[j] - self.mu;
                let e = (x * x + delta[j] * delta[j]).sqrt();
                factor(delta[j], e, self.temperature)
            })
            .collect();
        let image: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = 0.0;
                for j in 0..n {
                    acc += proj.kernel(v, nodes[i], nodes[j])
                        * factors[j]
                        * nodes[j]
                        * nodes[j]
                        * weights[j];
                }
                -self.lambda * acc
            })
            .collect();
        let defect = delta
            .iter()
            .zip(image.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        Ok(defect / sup)
    }
}

fn factor(delta: f64, e: f64, t: f64) -> f64 {
    if e == 0.0 {
        return 0.0;
    }
    let th = if t == 0.0 {
        1.0
    } else {
        let y = e / (2.0 * t);
        if y > 19.0 {
            1.0
        } else {
            y.tanh()
        }
    };
    delta / e * th
}

/// Initial gap amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitStrategy {
    /// Weak-coupling prediction of the energy gap when available, `0.1 μ`
    /// otherwise.
    Auto,
    /// Constant profile with the given amplitude.
    Constant(f64),
}

/// Settings for [`solve_gap`].
#[derive(Debug, Clone)]
pub struct SolveParams {
    /// Mixing weight of the fixed-point image, in `(0, 1]`.
    pub damping: f64,
    /// Relative sup-norm convergence tolerance of the damped update.
    pub tol: f64,
    pub max_iter: usize,
    pub init: InitStrategy,
    pub grid: GridParams,
    /// Pin the refinement band to this scale and disable adaptive
    /// regridding; solves with the same pinned scale share one grid, which
    /// is what uniqueness comparisons need.
    pub fixed_scale: Option<f64>,
}

impl Default for SolveParams {
    fn default() -> Self {
        Self {
            damping: 0.5,
            tol: 1e-9,
            max_iter: 500,
            init: InitStrategy::Auto,
            grid: GridParams::default(),
            fixed_scale: None,
        }
    }
}

/// Row-major kernel `-λ V̂₀(p_i, p_j) p_j² w_j`; one damped iteration is
/// `Δ ← (1-d)Δ + d·K f(Δ)`.
struct GapKernel {
    n: usize,
    data: Vec<f64>,
}

impl GapKernel {
    fn build(
        v: &RadialPotential,
        proj: &LegendreProjector,
        lambda: f64,
        grid: &QuadratureGrid,
    ) -> Self {
        let n = grid.len();
        let p = grid.nodes();
        let w = grid.weights();
        let mut data = vec![0.0; n * n];
        data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for j in 0..n {
                row[j] = -lambda * proj.kernel(v, p[i], p[j]) * p[j] * p[j] * w[j];
            }
        });
        Self { n, data }
    }

    fn apply(&self, f: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            let mut acc = 0.0;
            for (g, fv) in row.iter().zip(f.iter()) {
                acc += g * fv;
            }
            out[i] = acc;
        }
    }
}

fn grid_scale_params(grid: &GridParams, scale_rel: f64) -> (f64, GridParams) {
    let w_min = (scale_rel / 10.0).clamp(2e-14, 5e-2);
    (w_min, grid.clone())
}

fn build_gap_grid(
    v: &RadialPotential,
    mu: f64,
    scale: f64,
    params: &GridParams,
) -> Result<QuadratureGrid> {
    let (w_min, p) = grid_scale_params(params, scale / mu);
    crate::numerics::build_fermi_grid(mu, p.cutoff_for(v, mu), p.n_outer, p.n_inner, w_min)
}

/// Solves the gap equation at chemical potential `μ`, coupling `λ`, and
/// temperature `T >= 0`.
///
/// Restricted to the uniqueness regime: the potential must have nonpositive
/// Fourier transform (and `V̂(0) < 0` for a superfluid solution; `V ≡ 0` is
/// accepted and yields the normal state). Non-convergence within the
/// iteration budget is reported on the result, not as an error.
pub fn solve_gap(
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    t: f64,
    params: &SolveParams,
) -> Result<GapFunction> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be nonnegative, got {lambda}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be nonnegative, got {t}"
        )));
    }
    if !(params.damping > 0.0 && params.damping <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1], got {}",
            params.damping
        )));
    }
    if !v.flags().fourier_nonpositive || v.fourier(0.0) > 0.0 {
        return Err(Error::UnsupportedRegime(
            "gap solver requires a potential with nonpositive Fourier transform".into(),
        ));
    }

    let kf = mu.sqrt();
    let d0 = match params.init {
        InitStrategy::Constant(c) => c,
        InitStrategy::Auto => crate::asymptotics::predict_xi(v, mu, lambda)
            .ok()
            .filter(|x| x.is_finite() && *x > NORMAL_THRESHOLD_REL * mu)
            .unwrap_or(0.1 * mu)
            .min(5.0 * mu),
    };

    let probes = vec![(kf, kf), (kf, 0.3 * kf), (0.5 * kf, 2.0 * kf)];
    let proj = LegendreProjector::adaptive(0, v, &probes);
    let normal_threshold = NORMAL_THRESHOLD_REL * mu;

    let mut scale = params
        .fixed_scale
        .unwrap_or_else(|| d0.max(t).max(normal_threshold * 10.0));
    let mut grid = build_gap_grid(v, mu, scale, &params.grid)?;
    let mut kernel = GapKernel::build(v, &proj, lambda, &grid);
    let mut delta = vec![d0; grid.len()];
    let mut regrids = 0usize;

    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut collapsed = false;
    let mut positivity_violation = false;
    let mut iterations = 0usize;

    let mut factors = vec![0.0; grid.len()];
    let mut image = vec![0.0; grid.len()];
    for it in 0..params.max_iter {
        iterations = it + 1;
        let nodes = grid.nodes();
        for j in 0..grid.len() {
            let x = nodes[j] * nodes[j] - mu;
            let e = (x * x + delta[j] * delta[j]).sqrt();
            factors[j] = factor(delta[j], e, t);
        }
        kernel.apply(&factors, &mut image);
        let mut sup = 0.0f64;
        let mut res = 0.0f64;
        for j in 0..grid.len() {
            let next = (1.0 - params.damping) * delta[j] + params.damping * image[j];
            res = res.max((next - delta[j]).abs());
            delta[j] = next;
            sup = sup.max(next.abs());
            if next < -1e-12 * scale {
                positivity_violation = true;
            }
        }
        residual = res;
        if sup < normal_threshold {
            collapsed = true;
            converged = true;
            delta.iter_mut().for_each(|x| *x = 0.0);
            break;
        }
        if res <= params.tol * sup {
            converged = true;
            break;
        }
        // track the refinement band against the gap amplitude
        let delta_f = grid.interpolate(&delta, kf).max(0.0);
        let wanted = delta_f.max(t).max(normal_threshold * 10.0);
        if params.fixed_scale.is_none()
            && regrids < 16
            && (wanted > 4.0 * scale || 4.0 * wanted < scale)
        {
            let new_grid = build_gap_grid(v, mu, wanted, &params.grid)?;
            let new_delta: Vec<f64> = new_grid
                .nodes()
                .iter()
                .map(|p| grid.interpolate(&delta, *p))
                .collect();
            grid = new_grid;
            kernel = GapKernel::build(v, &proj, lambda, &grid);
            delta = new_delta;
            factors = vec![0.0; grid.len()];
            image = vec![0.0; grid.len()];
            scale = wanted;
            regrids += 1;
        }
    }

    let suspicious = collapsed && t == 0.0 && {
        let e0 = kf * proj.kernel(v, kf, kf);
        e0 < 0.0
    };

    let nodes = grid.nodes();
    let final_factors: Vec<f64> = (0..grid.len())
        .map(|j| {
            let x = nodes[j] * nodes[j] - mu;
            let e = (x * x + delta[j] * delta[j]).sqrt();
            factor(delta[j], e, t)
        })
        .collect();

    Ok(GapFunction {
        values: delta,
        factors: final_factors,
        grid,
        potential: Some(v.clone()),
        projector_order: proj.order(),
        mu,
        lambda,
        temperature: t,
        converged,
        iterations,
        residual,
        collapsed_to_normal: collapsed,
        suspicious_collapse: suspicious,
        positivity_violation,
    })
}

/// Derived quasi-particle state at the solved gap.
#[derive(Debug, Clone)]
pub struct BCSState {
    pub gap: GapFunction,
    /// Energy gap `Ξ = min_p E(p)`.
    pub xi: f64,
    /// Cooper-pair amplitude `α̂(p) = Δ(p)/(2E(p))` at the nodes.
    pub alpha: Vec<f64>,
    /// Momentum distribution `γ(p)` at the nodes.
    pub gamma: Vec<f64>,
    /// `F₀(α)` at `T = 0` (relative to the normal state), `F_T(γ, α)` at
    /// `T > 0` (absolute).
    pub free_energy: f64,
    /// One-sided discontinuity estimate `|γ(√μ⁺) - γ(√μ⁻)|`.
    pub gamma_jump: f64,
}

/// Builds the physical state for a converged gap.
pub fn derive_state(delta: &GapFunction) -> Result<BCSState> {
    if !delta.converged {
        return Err(Error::Contract(
            "derive_state requires a converged gap function".into(),
        ));
    }
    let v = delta
        .potential
        .as_ref()
        .ok_or_else(|| Error::Contract("synthetic gap has no potential".into()))?;
    let mu = delta.mu;
    let t = delta.temperature;
    let grid = &delta.grid;
    let nodes = grid.nodes();
    let n = nodes.len();

    let mut alpha = vec![0.0; n];
    let mut gamma = vec![0.0; n];
    for i in 0..n {
        let x = nodes[i] * nodes[i] - mu;
        let d = delta.values[i];
        let e = (x * x + d * d).sqrt();
        alpha[i] = if e == 0.0 { 0.0 } else { d / (2.0 * e) };
        gamma[i] = gamma_value(x, e, t);
    }

    let gamma_jump = one_sided_jump(grid, &gamma, mu.sqrt());
    let xi = energy_gap(delta)?;
    let free_energy = if t == 0.0 {
        free_energy_fields(
            Fields::ZeroTemperature { alpha: &alpha },
            grid,
            v,
            mu,
            delta.lambda,
            0.0,
        )?
    } else {
        free_energy_fields(
            Fields::FiniteTemperature {
                gamma: &gamma,
                alpha: &alpha,
            },
            grid,
            v,
            mu,
            delta.lambda,
            t,
        )?
    };

    Ok(BCSState {
        gap: delta.clone(),
        xi,
        alpha,
        gamma,
        free_energy,
        gamma_jump,
    })
}

/// `γ(p)`: at `T = 0` the optimal occupation `(1 ∓ √(1-4α̂²))/2` evaluates
/// to `(1 - x/E)/2`; at `T > 0` the stationary form is
/// `1/2 - x·tanh(E/2T)/(2E)`. For `Δ = 0` these reduce to the step function
/// and the Fermi–Dirac distribution.
fn gamma_value(x: f64, e: f64, t: f64) -> f64 {
    if e == 0.0 {
        return 0.5;
    }
    if t == 0.0 {
        0.5 * (1.0 - x / e)
    } else {
        let y = e / (2.0 * t);
        let th = if y > 19.0 { 1.0 } else { y.tanh() };
        0.5 - x * th / (2.0 * e)
    }
}

/// One-sided linear extrapolation of node samples to `p₀` from both sides.
fn one_sided_jump(grid: &QuadratureGrid, values: &[f64], p0: f64) -> f64 {
    let nodes = grid.nodes();
    let below: Vec<usize> = (0..nodes.len()).filter(|i| nodes[*i] < p0).collect();
    let above: Vec<usize> = (0..nodes.len()).filter(|i| nodes[*i] > p0).collect();
    if below.len() < 2 || above.len() < 2 {
        return 0.0;
    }
    let (i1, i0) = (below[below.len() - 1], below[below.len() - 2]);
    let (j0, j1) = (above[0], above[1]);
    let left = values[i1]
        + (values[i1] - values[i0]) / (nodes[i1] - nodes[i0]) * (p0 - nodes[i1]);
    let right = values[j0]
        + (values[j1] - values[j0]) / (nodes[j1] - nodes[j0]) * (p0 - nodes[j0]);
    (right - left).abs()
}

/// Energy gap `Ξ = min_p √((p²-μ)² + Δ(p)²)` over a refined mesh around the
/// Fermi surface plus the grid nodes.
pub fn energy_gap(delta: &GapFunction) -> Result<f64> {
    if !delta.converged {
        return Err(Error::Contract("energy_gap requires a converged gap".into()));
    }
    let mu = delta.mu;
    let kf = mu.sqrt();
    let e_at = |p: f64| {
        let x = p * p - mu;
        let d = delta.eval(p);
        (x * x + d * d).sqrt()
    };
    let mut best = f64::INFINITY;
    for p in delta.grid.nodes() {
        best = best.min(e_at(*p));
    }
    // dense sweep across the dispersion minimum
    let df = delta.grid.interpolate(&delta.values, kf).abs();
    let halfwidth = (6.0 * df.max(delta.temperature).max(1e-12 * mu) / (2.0 * kf)).min(0.5 * kf);
    let m = 2000;
    for i in 0..=m {
        let p = kf - halfwidth + 2.0 * halfwidth * i as f64 / m as f64;
        if p > 0.0 {
            best = best.min(e_at(p));
        }
    }
    Ok(best)
}

/// Zero- or finite-temperature admissible fields for [`free_energy_fields`].
pub enum Fields<'a> {
    /// `T = 0`: the occupation is eliminated through the optimal choice, so
    /// only `α̂` is free and `|α̂| <= 1/2`.
    ZeroTemperature { alpha: &'a [f64] },
    /// `T > 0`: both fields, constrained by `0 <= γ <= 1` and
    /// `|α̂|² <= γ(1-γ)`.
    FiniteTemperature { gamma: &'a [f64], alpha: &'a [f64] },
}

/// Pressure functional on radial fields sampled on `grid`.
///
/// At `T = 0` returns the condensation functional
/// `F₀(α) = 1/2 ∫ |p²-μ| (1-√(1-4|α̂|²)) dp + λ ∫ V |α|²`
/// (normal state subtracted); at `T > 0` returns
/// `F_T(γ, α) = ∫ (p²-μ)γ dp + λ⟨α|V|α⟩ - T S(γ, α)` with the entropy of
/// the 2×2 occupation matrix, eigenvalues `1/2 ± √((γ-1/2)² + |α̂|²)`.
pub fn free_energy_fields(
    fields: Fields,
    grid: &QuadratureGrid,
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    t: f64,
) -> Result<f64> {
    let nodes = grid.nodes();
    let n = nodes.len();
    let slack = 1e-9;
    match fields {
        Fields::ZeroTemperature { alpha } => {
            if alpha.len() != n {
                return Err(Error::Contract("alpha length must match the grid".into()));
            }
            for a in alpha {
                if a.abs() > 0.5 + slack {
                    return Err(Error::Contract(format!("|alpha| = {} exceeds 1/2", a.abs())));
                }
            }
            let mut kinetic = 0.0;
            for i in 0..n {
                let x = nodes[i] * nodes[i] - mu;
                let a2 = (alpha[i] * alpha[i]).min(0.25);
                let root = (1.0 - 4.0 * a2).max(0.0).sqrt();
                kinetic += grid.weights()[i]
                    * nodes[i]
                    * nodes[i]
                    * 0.5
                    * x.abs()
                    * (1.0 - root);
            }
            let potential = interaction_quadratic_form(alpha, grid, v);
            Ok(4.0 * PI * (kinetic + lambda * potential))
        }
        Fields::FiniteTemperature { gamma, alpha } => {
            if gamma.len() != n || alpha.len() != n {
                return Err(Error::Contract("field lengths must match the grid".into()));
            }
            if t <= 0.0 {
                return Err(Error::InvalidParameter(
                    "finite-temperature fields need T > 0".into(),
                ));
            }
            for i in 0..n {
                if !(-slack..=1.0 + slack).contains(&gamma[i]) {
                    return Err(Error::Contract(format!("gamma = {} outside [0,1]", gamma[i])));
                }
                if alpha[i] * alpha[i] > gamma[i] * (1.0 - gamma[i]) + slack {
                    return Err(Error::Contract(
                        "|alpha|^2 exceeds gamma(1-gamma)".into(),
                    ));
                }
            }
            let mut kinetic = 0.0;
            let mut entropy = 0.0;
            for i in 0..n {
                let x = nodes[i] * nodes[i] - mu;
                let w = grid.weights()[i] * nodes[i] * nodes[i];
                kinetic += w * x * gamma[i];
                let d = ((gamma[i] - 0.5) * (gamma[i] - 0.5) + alpha[i] * alpha[i])
                    .sqrt()
                    .min(0.5);
                let nu_p = 0.5 + d;
                let nu_m = 0.5 - d;
                let mut s = 0.0;
                if nu_p > 0.0 {
                    s -= nu_p * nu_p.ln();
                }
                if nu_m > 0.0 {
                    s -= nu_m * nu_m.ln();
                }
                entropy += w * s;
            }
            let potential = interaction_quadratic_form(alpha, grid, v);
            Ok(4.0 * PI * (kinetic + lambda * potential - t * entropy))
        }
    }
}

/// `⟨α|V|α⟩` for radial fields: `∫∫ α(p) V̂₀(p,q) α(q) p² q² dp dq`.
fn interaction_quadratic_form(alpha: &[f64], grid: &QuadratureGrid, v: &RadialPotential) -> f64 {
    let kf = grid.fermi_momentum();
    let proj = LegendreProjector::adaptive(0, v, &[(kf, kf), (kf, 0.3 * kf)]);
    let nodes = grid.nodes();
    let w = grid.weights();
    let n = nodes.len();
    let inner: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for j in 0..n {
                acc += proj.kernel(v, nodes[i], nodes[j]) * alpha[j] * nodes[j] * nodes[j] * w[j];
            }
            acc
        })
        .collect();
    let mut total = 0.0;
    for i in 0..n {
        total += w[i] * nodes[i] * nodes[i] * alpha[i] * inner[i];
    }
    total
}

/// Normal-state pressure `F_T(γ₀, 0)` with the Fermi–Dirac occupation.
pub fn normal_state_free_energy(
    grid: &QuadratureGrid,
    mu: f64,
    t: f64,
) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::InvalidParameter("normal-state comparison needs T > 0".into()));
    }
    let mut kinetic = 0.0;
    let mut entropy = 0.0;
    for i in 0..grid.len() {
        let p = grid.nodes()[i];
        let x = p * p - mu;
        let w = grid.weights()[i] * p * p;
        let g = fermi_dirac(x, t);
        kinetic += w * x * g;
        let mut s = 0.0;
        if g > 0.0 {
            s -= g * g.ln();
        }
        let h = 1.0 - g;
        if h > 0.0 {
            s -= h * h.ln();
        }
        entropy += w * s;
    }
    Ok(4.0 * PI * (kinetic - t * entropy))
}

fn fermi_dirac(x: f64, t: f64) -> f64 {
    let y = x / t;
    if y > 36.0 {
        (-y).exp()
    } else if y < -36.0 {
        1.0 - y.exp()
    } else {
        1.0 / (y.exp() + 1.0)
    }
}

/// Second variation of the zero-temperature functional at the solved state
/// along a radial direction `g` sampled on the state's grid:
/// `2⟨g|E(-i∇) + λV|g⟩ + 8 ∫ |p²-μ| [α̂ ĝ]² / (1-4α̂²)^{3/2} dp`,
/// the singular factor evaluated through `(1-4α̂²)^{3/2} = |p²-μ|³/E³`.
///
/// Admissible directions keep `|α̂ + εĝ| <= 1/2`, which forces `ĝ` to vanish
/// on the Fermi surface when the gap is open there.
pub fn hessian_form_t0(state: &BCSState, g: &[f64]) -> Result<f64> {
    let delta = &state.gap;
    if delta.temperature != 0.0 {
        return Err(Error::Contract("hessian_form_t0 needs a T = 0 state".into()));
    }
    let v = delta
        .potential
        .as_ref()
        .ok_or_else(|| Error::Contract("synthetic gap has no potential".into()))?;
    let grid = &delta.grid;
    let n = grid.len();
    if g.len() != n {
        return Err(Error::Contract("probe length must match the grid".into()));
    }
    let mu = delta.mu;
    let mut quad = 0.0;
    let mut singular = 0.0;
    for i in 0..n {
        let p = grid.nodes()[i];
        let w = grid.weights()[i] * p * p;
        let x = p * p - mu;
        let d = delta.values[i];
        let e = (x * x + d * d).sqrt();
        quad += w * e * g[i] * g[i];
        if x != 0.0 && d != 0.0 {
            let cross = state.alpha[i] * g[i];
            singular += w * 8.0 * cross * cross * e * e * e / (x * x);
        }
    }
    let potential = interaction_quadratic_form(g, grid, v);
    Ok(4.0 * PI * (2.0 * (quad + delta.lambda * potential) + singular))
}

/// Second variation of the pressure at the normal state along `g`:
/// `2⟨g|K_{T,μ} + λV|g⟩`; at `T = 0` this is `2⟨g||p²-μ| + λV|g⟩`.
pub fn hessian_form_normal(
    g: &[f64],
    grid: &QuadratureGrid,
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    t: f64,
) -> Result<f64> {
    if g.len() != grid.len() {
        return Err(Error::Contract("probe length must match the grid".into()));
    }
    let mut quad = 0.0;
    for i in 0..grid.len() {
        let p = grid.nodes()[i];
        quad += grid.weights()[i] * p * p * k_symbol(p * p, mu, t) * g[i] * g[i];
    }
    let potential = interaction_quadratic_form(g, grid, v);
    Ok(4.0 * PI * 2.0 * (quad + lambda * potential))
}

/// Random admissible probe direction: vanishes on the Fermi surface
/// (factor `p²-μ`), smooth bumps elsewhere, unit L² norm. Deterministic in
/// the seed.
pub fn random_admissible_probe(grid: &QuadratureGrid, mu: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kf = mu.sqrt();
    let bumps: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.2 * kf..2.0 * kf),
                rng.gen_range(0.1 * kf..0.8 * kf),
            )
        })
        .collect();
    let mut g: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|p| {
            let x = p * p - mu;
            let mut s = 0.0;
            for (c, a, width) in &bumps {
                s += c * (-(p - a) * (p - a) / (width * width)).exp();
            }
            x * s
        })
        .collect();
    let norm2: f64 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .zip(g.iter())
        .map(|((p, w), gi)| w * p * p * gi * gi)
        .sum::<f64>()
        * 4.0
        * PI;
    let norm = norm2.sqrt().max(1e-300);
    g.iter_mut().for_each(|x| *x /= norm);
    g
}

/// Gap-shape comparison against the Fermi-surface ring integral
/// `A(p) = 2πμ ∫_{-1}^{1} V̂(√(p²+μ-2√μ p t)) dt`: least-squares scale `f`
/// in `Δ(p) ≈ -f·A(p)` and the sup deviation of the normalized shapes.
#[derive(Debug, Clone)]
pub struct ShapeReport {
    /// Fitted positive scale factor.
    pub f_fitted: f64,
    /// `sup_p |Δ(p)/Δ(√μ) - A(p)/A(√μ)|` over the grid nodes.
    pub sup_deviation: f64,
}

/// Compares a converged zero-temperature gap to the ring-integral shape.
pub fn gap_shape_check(delta: &GapFunction, v: &RadialPotential, mu: f64) -> Result<ShapeReport> {
    if !delta.converged || delta.collapsed_to_normal {
        return Err(Error::Contract(
            "shape check needs a converged superfluid gap".into(),
        ));
    }
    let kf = mu.sqrt();
    let (tn, tw) = crate::numerics::gauss::gauss_legendre(128);
    let ring = |p: f64| -> f64 {
        let mut acc = 0.0;
        for (t, w) in tn.iter().zip(tw.iter()) {
            let arg2 = (p * p + mu - 2.0 * kf * p * t).max(0.0);
            acc += w * v.fourier(arg2.sqrt());
        }
        2.0 * PI * mu * acc
    };
    let a_fermi = ring(kf);
    if a_fermi.abs() < 1e-300 {
        return Err(Error::UnsupportedRegime(
            "ring integral vanishes at the Fermi surface".into(),
        ));
    }
    let delta_fermi = delta.delta_fermi();
    let nodes = delta.grid.nodes();
    let weights = delta.grid.weights();
    let mut num = 0.0;
    let mut den = 0.0;
    let mut sup = 0.0f64;
    for i in 0..nodes.len() {
        let a = ring(nodes[i]);
        let w = weights[i] * nodes[i] * nodes[i];
        num += w * delta.values[i] * a;
        den += w * a * a;
        let dev = (delta.values[i] / delta_fermi - a / a_fermi).abs();
        sup = sup.max(dev);
    }
    Ok(ShapeReport {
        f_fitted: -num / den,
        sup_deviation: sup,
    })
}

/// Phase classification of the nonlinear iteration at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Superfluid,
    Normal,
}

/// Temperature at which the nonlinear gap solution vanishes, located by
/// bisection with no reference to the linear criterion.
///
/// Near the transition the damped iteration slows down critically, so a
/// marginal solve falls back to a small-seed growth/decay classification of
/// the iteration map.
pub fn gap_vanishing_temperature(
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    rel_tol: f64,
    grid: &GridParams,
) -> Result<f64> {
    let classify = |t: f64| -> Result<Phase> {
        let params = SolveParams {
            damping: 0.5,
            tol: 1e-9,
            max_iter: 400,
            init: InitStrategy::Constant(0.1 * mu),
            grid: grid.clone(),
            fixed_scale: None,
        };
        let sol = solve_gap(v, mu, lambda, t, &params)?;
        if sol.converged {
            return Ok(if sol.collapsed_to_normal {
                Phase::Normal
            } else {
                Phase::Superfluid
            });
        }
        growth_classification(v, mu, lambda, t, grid)
    };

    // outward search for a Normal/Superfluid bracket
    let mut t_lo = 0.3 * mu;
    let mut t_hi = 0.3 * mu;
    let mut lo_phase = classify(t_lo)?;
    let mut hi_phase = lo_phase;
    for _ in 0..20 {
        if hi_phase == Phase::Normal {
            break;
        }
        t_hi *= 4.0;
        if t_hi > 10.0 * mu {
            return Err(Error::Bracket {
                lo: t_lo,
                hi: t_hi,
                f_lo: -1.0,
                f_hi: -1.0,
            });
        }
        hi_phase = classify(t_hi)?;
    }
    for _ in 0..20 {
        if lo_phase == Phase::Superfluid {
            break;
        }
        t_lo *= 0.25;
        if t_lo < NORMAL_THRESHOLD_REL * mu {
            return Err(Error::UnsupportedRegime(
                "no superfluid phase found above the temperature floor".into(),
            ));
        }
        lo_phase = classify(t_lo)?;
    }

    let mut ln_lo = t_lo.ln();
    let mut ln_hi = t_hi.ln();
    while ln_hi - ln_lo > rel_tol {
        let mid = 0.5 * (ln_lo + ln_hi);
        match classify(mid.exp())? {
            Phase::Superfluid => ln_lo = mid,
            Phase::Normal => ln_hi = mid,
        }
    }
    Ok((0.5 * (ln_lo + ln_hi)).exp())
}

/// Undamped iteration from a tiny seed: in the linear regime the iterate
/// grows iff the pairing instability is present.
fn growth_classification(
    v: &RadialPotential,
    mu: f64,
    lambda: f64,
    t: f64,
    grid_params: &GridParams,
) -> Result<Phase> {
    let kf = mu.sqrt();
    let seed = 1e-6 * mu;
    let grid = build_gap_grid(v, mu, t.max(seed), grid_params)?;
    let proj = LegendreProjector::adaptive(0, v, &[(kf, kf), (kf, 0.3 * kf)]);
    let kernel = GapKernel::build(v, &proj, lambda, &grid);
    let n = grid.len();
    let mut delta = vec![seed; n];
    let mut factors = vec![0.0; n];
    let mut image = vec![0.0; n];
    let mut history: Vec<f64> = Vec::with_capacity(600);
    for _ in 0..600 {
        for j in 0..n {
            let x = grid.nodes()[j] * grid.nodes()[j] - mu;
            let e = (x * x + delta[j] * delta[j]).sqrt();
            factors[j] = factor(delta[j], e, t);
        }
        kernel.apply(&factors, &mut image);
        delta.copy_from_slice(&image);
        let sup = delta.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        history.push(sup);
        if sup > 1e-3 * mu {
            return Ok(Phase::Superfluid);
        }
        if sup < 1e-3 * seed {
            return Ok(Phase::Normal);
        }
    }
    let last = history[history.len() - 1];
    let earlier = history[history.len() - 201];
    Ok(if last > earlier {
        Phase::Superfluid
    } else {
        Phase::Normal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn gaussian() -> RadialPotential {
        RadialPotential::gaussian(-5.0, 1.0).unwrap()
    }

    fn quick_params() -> SolveParams {
        SolveParams {
            grid: GridParams {
                n_outer: 96,
                n_inner: 144,
                cutoff: Some(8.0),
            },
            ..SolveParams::default()
        }
    }

    #[test]
    fn zero_potential_stays_normal() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        let sol = solve_gap(&v, 1.0, 0.5, 0.0, &quick_params()).unwrap();
        assert!(sol.converged);
        assert!(sol.collapsed_to_normal);
        assert_eq!(sol.delta_fermi(), 0.0);
        assert!(!sol.suspicious_collapse);
    }

    #[test]
    fn positive_transform_is_rejected() {
        let v = RadialPotential::gaussian(2.0, 1.0).unwrap();
        assert!(matches!(
            solve_gap(&v, 1.0, 0.5, 0.0, &quick_params()),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn zero_temperature_solution_is_positive_and_converged() {
        let sol = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &quick_params()).unwrap();
        assert!(sol.converged, "residual {}", sol.residual);
        assert!(!sol.collapsed_to_normal);
        assert!(!sol.positivity_violation);
        assert!(sol.values().iter().all(|d| *d >= 0.0));
        assert!(sol.delta_fermi() > 1e-3);
    }

    #[test]
    fn initialization_independence() {
        let mut p1 = quick_params();
        p1.init = InitStrategy::Constant(0.1);
        p1.tol = 1e-10;
        let mut p2 = quick_params();
        p2.init = InitStrategy::Constant(1e-4);
        p2.tol = 1e-10;
        p2.max_iter = 2000;
        let a = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &p1).unwrap();
        let b = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &p2).unwrap();
        assert!(a.converged && b.converged);
        let sup_a = a.values().iter().fold(0.0f64, |m, x| m.max(*x));
        let mut dev = 0.0f64;
        for (p, val) in a.grid().nodes().iter().zip(a.values()) {
            dev = dev.max((val - b.eval(*p)).abs());
        }
        assert!(dev / sup_a < 1e-6, "sup-relative deviation {}", dev / sup_a);
    }

    #[test]
    fn above_tc_the_gap_vanishes_and_below_it_persists() {
        // T_c for this coupling is around 0.3; probe well on each side
        let v = gaussian();
        let hot = solve_gap(&v, 1.0, 0.5, 0.8, &quick_params()).unwrap();
        assert!(hot.collapsed_to_normal);
        let cold = solve_gap(&v, 1.0, 0.5, 0.05, &quick_params()).unwrap();
        assert!(!cold.collapsed_to_normal && cold.delta_fermi() > 0.0);
    }

    #[test]
    fn derived_state_satisfies_constraint_chain() {
        let sol = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &quick_params()).unwrap();
        let state = derive_state(&sol).unwrap();
        for i in 0..sol.grid().len() {
            let a = state.alpha[i];
            let g = state.gamma[i];
            assert!(a.abs() <= 0.5 + 1e-12);
            assert!((0.0..=1.0).contains(&g) || (g - 1.0).abs() < 1e-12 || g.abs() < 1e-12);
            // equality at T = 0 from the optimal occupation
            assert_abs_diff_eq!(a * a, g * (1.0 - g), epsilon = 1e-12);
            // 2 α̂ E = Δ pointwise
            let p = sol.grid().nodes()[i];
            let x = p * p - 1.0;
            let e = (x * x + sol.values()[i] * sol.values()[i]).sqrt();
            assert_abs_diff_eq!(2.0 * a * e, sol.values()[i], epsilon = 1e-12 * e.max(1.0));
        }
        // E(p) >= Ξ on the nodes
        for (p, d) in sol.grid().nodes().iter().zip(sol.values()) {
            let x = p * p - 1.0;
            assert!((x * x + d * d).sqrt() >= state.xi - 1e-12);
        }
    }

    #[test]
    fn normal_state_at_zero_t_is_a_step() {
        let v = gaussian();
        let sol = solve_gap(&v, 1.0, 1e-5, 0.0, &{
            let mut p = quick_params();
            p.init = InitStrategy::Constant(1e-13);
            p
        })
        .unwrap();
        assert!(sol.collapsed_to_normal);
        // weak coupling with e_mu < 0 should in principle pair: flagged
        assert!(sol.suspicious_collapse);
        let state = derive_state(&sol).unwrap();
        assert_abs_diff_eq!(state.gamma_jump, 1.0, epsilon = 1e-9);
        for (p, g) in sol.grid().nodes().iter().zip(state.gamma.iter()) {
            let expected = if p * p < 1.0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(*g, expected, epsilon = 1e-12);
        }
        assert_eq!(state.xi, 0.0);
    }

    #[test]
    fn normal_state_at_finite_t_is_fermi_dirac() {
        let v = gaussian();
        let mut params = quick_params();
        params.init = InitStrategy::Constant(1e-13);
        let sol = solve_gap(&v, 1.0, 1e-5, 0.05, &params).unwrap();
        assert!(sol.collapsed_to_normal);
        let state = derive_state(&sol).unwrap();
        for (p, g) in sol.grid().nodes().iter().zip(state.gamma.iter()) {
            let x = p * p - 1.0;
            assert_abs_diff_eq!(*g, fermi_dirac(x, 0.05), epsilon = 1e-10);
        }
    }

    #[test]
    fn open_gap_forces_continuous_occupation() {
        let sol = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &quick_params()).unwrap();
        let state = derive_state(&sol).unwrap();
        assert!(state.xi > 0.0);
        assert!(state.gamma_jump < 0.05, "jump {}", state.gamma_jump);
        // pair amplitude reaches its maximum on the Fermi surface
        let kf_alpha = sol.delta_fermi()
            / (2.0
                * ((0.0f64).powi(2) + sol.delta_fermi() * sol.delta_fermi())
                    .sqrt());
        assert_abs_diff_eq!(kf_alpha, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn xi_bounded_by_fermi_gap() {
        let sol = solve_gap(&gaussian(), 1.0, 0.3, 0.0, &quick_params()).unwrap();
        let xi = energy_gap(&sol).unwrap();
        assert!(xi <= sol.delta_fermi() * (1.0 + 1e-12));
        assert!(xi > 0.8 * sol.delta_fermi());
    }

    #[test]
    fn fixed_point_residual_small_on_doubled_grid() {
        let mut params = quick_params();
        params.tol = 1e-10;
        let sol = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &params).unwrap();
        let doubled = GridParams {
            n_outer: params.grid.n_outer * 2,
            n_inner: params.grid.n_inner * 2,
            cutoff: params.grid.cutoff,
        };
        let grid2 = build_gap_grid(&gaussian(), 1.0, sol.delta_fermi(), &doubled).unwrap();
        let defect = sol.fixed_point_residual_on(&grid2).unwrap();
        assert!(defect <= 10.0 * params.tol, "defect {defect}");
    }

    #[test]
    fn free_energy_zero_fields_vanishes() {
        let v = gaussian();
        let grid = crate::numerics::build_fermi_grid(1.0, 8.0, 64, 64, 1e-4).unwrap();
        let zeros = vec![0.0; grid.len()];
        let f = free_energy_fields(
            Fields::ZeroTemperature { alpha: &zeros },
            &grid,
            &v,
            1.0,
            0.5,
            0.0,
        )
        .unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn free_energy_is_linear_in_lambda_through_its_potential_term() {
        let v = gaussian();
        let grid = crate::numerics::build_fermi_grid(1.0, 8.0, 64, 64, 1e-4).unwrap();
        let alpha: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|p| 0.4 * (-(p - 1.0) * (p - 1.0)).exp())
            .collect();
        let f1 = free_energy_fields(
            Fields::ZeroTemperature { alpha: &alpha },
            &grid,
            &v,
            1.0,
            0.3,
            0.0,
        )
        .unwrap();
        let f2 = free_energy_fields(
            Fields::ZeroTemperature { alpha: &alpha },
            &grid,
            &v,
            1.0,
            0.6,
            0.0,
        )
        .unwrap();
        let f0 = free_energy_fields(
            Fields::ZeroTemperature { alpha: &alpha },
            &grid,
            &v,
            1.0,
            0.0,
            0.0,
        )
        .unwrap();
        // F(λ) = kinetic + λ·potential
        assert_relative_eq!(f2 - f0, 2.0 * (f1 - f0), max_relative = 1e-12);
    }

    #[test]
    fn inadmissible_fields_are_rejected() {
        let v = gaussian();
        let grid = crate::numerics::build_fermi_grid(1.0, 8.0, 64, 64, 1e-4).unwrap();
        let bad = vec![0.7; grid.len()];
        assert!(free_energy_fields(
            Fields::ZeroTemperature { alpha: &bad },
            &grid,
            &v,
            1.0,
            0.5,
            0.0
        )
        .is_err());
        let gamma = vec![0.2; grid.len()];
        let alpha = vec![0.45; grid.len()]; // 0.45² > 0.2·0.8
        assert!(free_energy_fields(
            Fields::FiniteTemperature {
                gamma: &gamma,
                alpha: &alpha
            },
            &grid,
            &v,
            1.0,
            0.5,
            0.1
        )
        .is_err());
    }

    #[test]
    fn solved_state_beats_normal_state_below_tc() {
        let v = gaussian();
        let sol = solve_gap(&v, 1.0, 0.5, 0.05, &quick_params()).unwrap();
        assert!(!sol.collapsed_to_normal);
        let state = derive_state(&sol).unwrap();
        let normal = normal_state_free_energy(sol.grid(), 1.0, 0.05).unwrap();
        assert!(
            state.free_energy < normal,
            "superfluid {} vs normal {}",
            state.free_energy,
            normal
        );
    }

    #[test]
    fn hessian_nonnegative_at_minimizer() {
        let sol = solve_gap(&gaussian(), 1.0, 0.5, 0.0, &quick_params()).unwrap();
        let state = derive_state(&sol).unwrap();
        for seed in 0..8 {
            let g = random_admissible_probe(sol.grid(), 1.0, seed);
            let h = hessian_form_t0(&state, &g).unwrap();
            assert!(h >= -1e-8, "seed {seed}: form {h}");
        }
    }

    #[test]
    fn hessian_negative_direction_exists_at_normal_state_below_tc() {
        // at T = 0 with pairing the normal state is unstable: the lowest
        // eigenvector of |p²-μ| + λV gives a negative second variation
        let v = gaussian();
        let grid = build_gap_grid(&v, 1.0, 1e-3, &quick_params().grid).unwrap();
        let op =
            crate::linear_criterion::assemble_channel_operator(&v, 0, 1.0, 0.0, 0.5, &grid)
                .unwrap();
        let pair = crate::numerics::lowest_eigenpair(&op.matrix, 1e-10).unwrap();
        assert!(pair.eigenvalue < 0.0);
        // unpack the symmetrized eigenvector into a radial profile
        let g: Vec<f64> = (0..grid.len())
            .map(|i| pair.eigenvector[i] / (grid.nodes()[i] * grid.weights()[i].sqrt()))
            .collect();
        let h = hessian_form_normal(&g, &grid, &v, 1.0, 0.5, 0.0).unwrap();
        assert!(h < 0.0, "form {h}");
    }

    #[test]
    fn hessian_positive_for_zero_potential_at_finite_t() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        let grid = crate::numerics::build_fermi_grid(1.0, 8.0, 64, 96, 1e-5).unwrap();
        for seed in 0..10 {
            let g = random_admissible_probe(&grid, 1.0, seed);
            let h = hessian_form_normal(&g, &grid, &v, 1.0, 1.0, 0.2).unwrap();
            assert!(h > 0.0);
        }
    }

    #[test]
    fn shape_check_normalization_point_and_positivity() {
        let sol = solve_gap(&gaussian(), 1.0, 0.3, 0.0, &quick_params()).unwrap();
        let rep = gap_shape_check(&sol, &gaussian(), 1.0).unwrap();
        assert!(rep.f_fitted > 0.0);
        assert!(rep.sup_deviation < 0.2, "deviation {}", rep.sup_deviation);
    }

    #[test]
    fn shape_deviation_decreases_with_coupling() {
        let v = gaussian();
        let mut prev = f64::INFINITY;
        for lam in [0.6, 0.3, 0.15] {
            let sol = solve_gap(&v, 1.0, lam, 0.0, &quick_params()).unwrap();
            let rep = gap_shape_check(&sol, &v, 1.0).unwrap();
            assert!(
                rep.sup_deviation < prev,
                "deviation did not shrink at λ = {lam}"
            );
            prev = rep.sup_deviation;
        }
    }
}
