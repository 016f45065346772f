//! Radial momentum grids with geometric refinement around the Fermi surface.
//!
//! The thermal symbol `K_{T,μ}(p)` varies on the scale `T/√μ` near `p = √μ`,
//! and the critical temperature can be as small as `1e-12·μ`, so quadrature
//! nodes are nested geometrically (ratio 1/2) from the refinement window down
//! to a caller-specified half-width `w_min·√μ`.

use crate::error::{Error, Result};
use crate::numerics::gauss::gauss_legendre;

/// Composite quadrature rule on `(0, Λ)` clustered at the Fermi momentum `√μ`.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cutoff: f64,
    fermi_momentum: f64,
    inner_window: f64,
    finest_halfwidth: f64,
    n_outer: usize,
    n_inner: usize,
}

impl QuadratureGrid {
    /// Momentum magnitudes, strictly increasing, all inside `(0, Λ)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights; they sum to `Λ`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn fermi_momentum(&self) -> f64 {
        self.fermi_momentum
    }

    /// Half-width of the refined band around `√μ`.
    pub fn inner_window(&self) -> f64 {
        self.inner_window
    }

    /// Half-width of the innermost panel pair straddling `√μ`.
    pub fn finest_halfwidth(&self) -> f64 {
        self.finest_halfwidth
    }

    /// Node counts `(n_outer, n_inner)` outside/inside the refined band.
    pub fn counts(&self) -> (usize, usize) {
        (self.n_outer, self.n_inner)
    }

    /// `Σ w_i f(p_i)` in ascending node order (fixed summation order).
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (p, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc += w * f(*p);
        }
        acc
    }

    /// `Σ w_i v_i` for values sampled on the grid nodes.
    pub fn integrate_values(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        let mut acc = 0.0;
        for (v, w) in values.iter().zip(self.weights.iter()) {
            acc += w * v;
        }
        acc
    }

    /// Piecewise-linear interpolation of node samples; clamps outside the
    /// node range.
    pub fn interpolate(&self, values: &[f64], p: f64) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        let n = self.nodes.len();
        if p <= self.nodes[0] {
            return values[0];
        }
        if p >= self.nodes[n - 1] {
            return values[n - 1];
        }
        let idx = match self
            .nodes
            .binary_search_by(|x| x.partial_cmp(&p).expect("finite node"))
        {
            Ok(i) => return values[i],
            Err(i) => i,
        };
        let (x0, x1) = (self.nodes[idx - 1], self.nodes[idx]);
        let t = (p - x0) / (x1 - x0);
        values[idx - 1] * (1.0 - t) + values[idx] * t
    }
}

/// Builds a composite Gauss–Legendre grid on `(0, Λ)` with geometrically
/// nested panels on both sides of `√μ`.
///
/// `n_outer` nodes cover the smooth regions, at least `n_inner` nodes land in
/// the refinement window, and the nesting descends to half-width `w_min·√μ`.
/// Deterministic for fixed inputs.
pub fn build_fermi_grid(
    mu: f64,
    cutoff: f64,
    n_outer: usize,
    n_inner: usize,
    w_min: f64,
) -> Result<QuadratureGrid> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let kf = mu.sqrt();
    if !(cutoff > 2.0 * kf) || !cutoff.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "cutoff must exceed 2*sqrt(mu) = {:.6e}, got {cutoff}",
            2.0 * kf
        )));
    }
    if !(w_min > 1e-14 && w_min < 1e-1) {
        return Err(Error::InvalidParameter(format!(
            "w_min must lie in (1e-14, 1e-1), got {w_min}"
        )));
    }
    if n_outer < 4 || n_inner < 4 {
        return Err(Error::InvalidParameter(
            "node budgets must be at least 4".into(),
        ));
    }

    let window = 0.25 * kf;

    // Geometric half-width ladder: window, window/2, ... down to w_min*kf.
    let floor = w_min * kf;
    let mut halfwidths = vec![window];
    while *halfwidths.last().unwrap() > floor {
        let next = halfwidths.last().unwrap() * 0.5;
        halfwidths.push(next);
    }
    let levels = halfwidths.len();
    let per_level = ((n_inner as f64 / (2 * levels) as f64).ceil() as usize).max(2);
    // keep individual Gauss-Legendre panels moderate; shallow ladders get
    // several panels per level instead
    let splits_inner = per_level.div_ceil(24);
    let order_inner = per_level.div_ceil(splits_inner).max(2);

    let mut panels: Vec<(f64, f64, usize)> = Vec::new();

    // Outer panels, order 16 each, split between the two smooth segments.
    let order_outer = 16usize;
    let len_left = kf - window;
    let len_right = cutoff - kf - window;
    let total_panels = n_outer.div_ceil(order_outer).max(2);
    let mut panels_left =
        ((total_panels as f64) * len_left / (len_left + len_right)).round() as usize;
    panels_left = panels_left.clamp(1, total_panels - 1);
    let panels_right = total_panels - panels_left;
    for i in 0..panels_left {
        let a = len_left * i as f64 / panels_left as f64;
        let b = len_left * (i + 1) as f64 / panels_left as f64;
        panels.push((a, b, order_outer));
    }

    // Left ladder descending to the Fermi momentum.
    let push_split = |panels: &mut Vec<(f64, f64, usize)>, a: f64, b: f64| {
        for s in 0..splits_inner {
            let pa = a + (b - a) * s as f64 / splits_inner as f64;
            let pb = a + (b - a) * (s + 1) as f64 / splits_inner as f64;
            panels.push((pa, pb, order_inner));
        }
    };
    for lvl in 0..levels - 1 {
        push_split(&mut panels, kf - halfwidths[lvl], kf - halfwidths[lvl + 1]);
    }
    push_split(&mut panels, kf - halfwidths[levels - 1], kf);
    // Mirror on the right.
    push_split(&mut panels, kf, kf + halfwidths[levels - 1]);
    for lvl in (0..levels - 1).rev() {
        push_split(&mut panels, kf + halfwidths[lvl + 1], kf + halfwidths[lvl]);
    }

    for i in 0..panels_right {
        let a = kf + window + len_right * i as f64 / panels_right as f64;
        let b = kf + window + len_right * (i + 1) as f64 / panels_right as f64;
        panels.push((a, b, order_outer));
    }

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (a, b, order) in panels {
        let (x, w) = gauss_legendre(order);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (xi, wi) in x.iter().zip(w.iter()) {
            nodes.push(mid + half * xi);
            weights.push(half * wi);
        }
    }

    let mut count_inner = 0usize;
    for (i, p) in nodes.iter().enumerate() {
        if !(p.is_finite() && *p > 0.0 && *p < cutoff) {
            return Err(Error::Contract(format!("node {i} out of (0, cutoff): {p}")));
        }
        if i > 0 && nodes[i] <= nodes[i - 1] {
            return Err(Error::Contract(format!("nodes not strictly increasing at {i}")));
        }
        if (p - kf).abs() <= window {
            count_inner += 1;
        }
    }
    if count_inner < n_inner {
        return Err(Error::Contract(format!(
            "refined band holds {count_inner} nodes, need {n_inner}"
        )));
    }
    let total_weight: f64 = weights.iter().sum();
    if ((total_weight - cutoff) / cutoff).abs() > 1e-12 {
        return Err(Error::Contract(format!(
            "weights sum to {total_weight:e}, expected {cutoff:e}"
        )));
    }

    Ok(QuadratureGrid {
        n_outer: nodes.len() - count_inner,
        n_inner: count_inner,
        nodes,
        weights,
        cutoff,
        fermi_momentum: kf,
        inner_window: window,
        finest_halfwidth: halfwidths[levels - 1],
    })
}
