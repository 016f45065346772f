//! Fermi-sphere operators and scalar functionals.
//!
//! The operator `V_μ` acts on functions on the sphere `|p| = √μ` through the
//! kernel `(2π)^{-3/2} μ^{-1/2} V̂(p-q)`; its spherical-harmonic eigenvalues
//! come from the Funk–Hecke reduction
//! `e_μ^{(ℓ)} = √(μ/2π) ∫_{-1}^{1} V̂(√(2μ(1-t))) P_ℓ(t) dt`.
//! The second-order form `⟨u|W_μ|u⟩` (constant `u`), the effective
//! scattering quantity `b_μ(λ)`, the second-Born scattering length `a₀(λ)`,
//! and the scalar functions `m_μ(T)` and `m̃_μ(Δ)` all feed the
//! weak-coupling expansions of the critical temperature and the energy gap.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gap_solver::GapFunction;
use crate::linear_criterion::k_symbol;
use crate::numerics::build_fermi_grid;
use crate::numerics::gauss::{gauss_legendre, legendre_p};
use crate::potentials::{PotentialKind, RadialPotential};

/// Channel eigenvalues of `V_μ` for `ℓ = 0..=ℓ_max`.
#[derive(Debug, Clone)]
pub struct ChannelSpectrum {
    pub mu: f64,
    /// `(ℓ, e_μ^{(ℓ)})` in ascending `ℓ`.
    pub entries: Vec<(usize, f64)>,
    /// Index of the minimal entry (ties resolve to the smallest `ℓ`).
    pub argmin_ell: usize,
}

impl ChannelSpectrum {
    /// The lowest channel eigenvalue, the estimate of `e_μ(V)`.
    pub fn e_mu(&self) -> f64 {
        self.entries[self.argmin_ell].1
    }
}

/// Funk–Hecke channel eigenvalue
/// `e_μ^{(ℓ)} = √(μ/2π) ∫_{-1}^{1} V̂(√(2μ(1-t))) P_ℓ(t) dt`.
///
/// Quadrature order doubles from 64 until two levels agree to 1e-12.
pub fn vmu_channel_eigenvalue(v: &RadialPotential, mu: f64, ell: usize) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let eval = |order: usize| -> f64 {
        let (t, w) = gauss_legendre(order);
        let mut acc = 0.0;
        for (ti, wi) in t.iter().zip(w.iter()) {
            let k = (2.0 * mu * (1.0 - ti)).max(0.0).sqrt();
            acc += wi * v.fourier(k) * legendre_p(ell, *ti);
        }
        (mu / (2.0 * PI)).sqrt() * acc
    };
    let mut order = 64;
    let mut current = eval(order);
    while order < 2048 {
        let next = eval(order * 2);
        if (next - current).abs() <= 1e-12 * current.abs().max(next.abs()).max(1e-300) {
            return Ok(next);
        }
        order *= 2;
        current = next;
    }
    Ok(current)
}

/// All channel eigenvalues up to `ℓ_max`, with the minimum reported as the
/// `e_μ(V)` estimate.
///
/// The channel ladder of smooth transforms decays quickly in `ℓ`, which is
/// what justifies the truncation; tests double `ℓ_max` and compare.
pub fn emu(v: &RadialPotential, mu: f64, ell_max: usize) -> Result<ChannelSpectrum> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let mut entries = Vec::with_capacity(ell_max + 1);
    for ell in 0..=ell_max {
        entries.push((ell, vmu_channel_eigenvalue(v, mu, ell)?));
    }
    let mut argmin = 0;
    for (i, (_, e)) in entries.iter().enumerate() {
        if *e < entries[argmin].1 {
            argmin = i;
        }
    }
    Ok(ChannelSpectrum {
        mu,
        entries,
        argmin_ell: argmin,
    })
}

/// `φ̂(r) = √μ/(2^{3/2} π) ∫_{-1}^{1} V̂(√(r²+μ-2√μ r t)) dt`, the Fourier
/// transform of `V` times the constant Fermi-sphere eigenfunction.
struct PhiHat<'a> {
    v: &'a RadialPotential,
    mu: f64,
    kf: f64,
    t_nodes: Vec<f64>,
    t_weights: Vec<f64>,
}

impl<'a> PhiHat<'a> {
    fn new(v: &'a RadialPotential, mu: f64) -> Self {
        // order by self-convergence at representative radii
        let kf = mu.sqrt();
        let probes = [0.1 * kf, kf, 2.0 * kf];
        let mut order = 64;
        loop {
            let a = Self::with_order(v, mu, order);
            let b = Self::with_order(v, mu, order * 2);
            let agree = probes.iter().all(|r| {
                let x = a.eval(*r);
                let y = b.eval(*r);
                (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300)
            });
            if agree || order >= 1024 {
                return b;
            }
            order *= 2;
        }
    }

    fn with_order(v: &'a RadialPotential, mu: f64, order: usize) -> Self {
        let (t_nodes, t_weights) = gauss_legendre(order);
        Self {
            v,
            mu,
            kf: mu.sqrt(),
            t_nodes,
            t_weights,
        }
    }

    fn eval(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for (t, w) in self.t_nodes.iter().zip(self.t_weights.iter()) {
            let arg2 = (r * r + self.mu - 2.0 * self.kf * r * t).max(0.0);
            acc += w * self.v.fourier(arg2.sqrt());
        }
        self.kf / ((2.0f64).powf(1.5) * PI) * acc
    }

    /// Spherical integral `Φ(r) = 4π |φ̂(r)|²`.
    fn phi(&self, r: f64) -> f64 {
        let p = self.eval(r);
        4.0 * PI * p * p
    }
}

/// Radial extent needed for the `Φ` tail of a potential, past `√μ`.
fn wmu_tail_length(v: &RadialPotential) -> f64 {
    match v.kind() {
        PotentialKind::Gaussian { range, .. } => 40.0 / range,
        PotentialKind::Exponential { range, .. } => 60.0 / range,
        PotentialKind::SquareWell { radius, .. } => 500.0 / radius,
        PotentialKind::SumOfGaussians { terms } => {
            40.0 / terms.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Upper bound on the quadrature panel width in the oscillatory tail.
fn wmu_panel_cap(v: &RadialPotential) -> f64 {
    match v.kind() {
        PotentialKind::SquareWell { radius, .. } => PI / (3.0 * radius),
        _ => f64::INFINITY,
    }
}

/// `⟨u|W_μ|u⟩` for the constant Fermi-sphere eigenfunction, through the
/// absolutely convergent combined integrand
/// `∫₀^∞ [ r²(Φ(r) - Φ(√μ))/|r²-μ| + Φ(√μ) ] dr`
/// with the exact large-r cancellation
/// `r²Φ(r)/(r²-μ) - μΦ(√μ)/(r²-μ)`.
///
/// The removable 0/0 at `r = √μ` is handled by excluding a symmetric window
/// of half-width `w`, adding `2wΦ(√μ)` plus a one-sided-slope correction,
/// and halving `w` until the value is stable.
pub fn wmu_swave(v: &RadialPotential, mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let kf = mu.sqrt();
    let phi = PhiHat::new(v, mu);
    let phi_f = phi.phi(kf);
    if phi_f == 0.0 {
        return Ok(0.0);
    }
    let scale = phi_f * kf;

    let r_max = kf + wmu_tail_length(v);
    let cap = wmu_panel_cap(v);

    let mut w = 1e-3 * kf;
    let mut prev: Option<f64> = None;
    for _ in 0..16 {
        let value = wmu_at_window(&phi, mu, w, r_max, cap, phi_f);
        if let Some(p) = prev {
            if (value - p).abs() <= 1e-9 * scale.max(value.abs()) {
                return Ok(value);
            }
            prev = Some(value);
        } else {
            prev = Some(value);
        }
        w *= 0.5;
    }
    let last = prev.unwrap();
    Err(Error::Accuracy {
        context: "wmu_swave window halving did not self-converge".into(),
        coarse: last,
        fine: wmu_at_window(&phi, mu, w, r_max, cap, phi_f),
    })
}

fn gl_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, x: &[f64], w: &[f64]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (xi, wi) in x.iter().zip(w.iter()) {
        acc += wi * f(mid + half * xi);
    }
    half * acc
}

fn wmu_at_window(phi: &PhiHat, mu: f64, w: f64, r_max: f64, cap: f64, phi_f: f64) -> f64 {
    let kf = mu.sqrt();
    let below = |r: f64| r * r * (phi.phi(r) - phi_f) / (mu - r * r) + phi_f;
    let above = |r: f64| (r * r * phi.phi(r) - mu * phi_f) / (r * r - mu);
    let (x16, w16) = gauss_legendre(16);
    let (x24, w24) = gauss_legendre(24);

    let mut total = 0.0;
    // smooth left segment [0, kf/2]
    for i in 0..4 {
        let a = 0.5 * kf * i as f64 / 4.0;
        let b = 0.5 * kf * (i + 1) as f64 / 4.0;
        total += gl_panel(&below, a, b, &x24, &w24);
    }
    // geometric approach kf/2 -> kf - w
    let mut h = 0.5 * kf;
    while h > 2.0 * w {
        total += gl_panel(&below, kf - h, kf - 0.5 * h, &x16, &w16);
        h *= 0.5;
    }
    total += gl_panel(&below, kf - h, kf - w, &x16, &w16);
    // mirrored geometric retreat kf + w -> 1.5 kf
    let mut h = w;
    let mut edge = w;
    while 2.0 * h < 0.5 * kf {
        total += gl_panel(&above, kf + edge, kf + 2.0 * h, &x16, &w16);
        edge = 2.0 * h;
        h *= 2.0;
    }
    total += gl_panel(&above, kf + edge, 1.5 * kf, &x16, &w16);
    // growing panels out to r_max, capped for oscillatory transforms
    let mut a = 1.5 * kf;
    let mut len = (0.5 * kf).min(cap);
    while a < r_max {
        let b = (a + len).min(r_max);
        total += gl_panel(&above, a, b, &x24, &w24);
        a = b;
        len = (len * 1.5).min(cap);
    }
    // analytic remainder of the -μ Φ_F/(r²-μ) part
    total += -mu * phi_f / (2.0 * kf) * ((r_max + kf) / (r_max - kf)).ln();
    // window: 2wΦ_F plus the one-sided Lipschitz slopes of Φ
    let slope_plus = (phi.phi(kf + w) - phi_f) / w;
    let slope_minus = (phi_f - phi.phi(kf - w)) / w;
    total += 2.0 * w * phi_f + 0.5 * w * kf * (slope_plus - slope_minus);
    total
}

/// Ground-state data of `B_μ = λ(π/2√μ)V_μ - λ²(π/2μ)W_μ` restricted to the
/// constant eigenfunction.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BmuReport {
    pub mu: f64,
    pub lambda: f64,
    /// Lowest `V_μ` channel eigenvalue (s-wave in the supported regime).
    pub e_mu: f64,
    /// `⟨u|W_μ|u⟩` for the constant normalized `u`.
    pub w_bar: f64,
    /// `λ (π/2√μ) e_μ - λ² (π/2μ) w̄`.
    pub b_mu: f64,
    /// Second-Born scattering length `a₀(λ)`.
    pub a0: f64,
    /// Coupling below which `b_μ < 0` is guaranteed when `e_μ < 0`
    /// (`|e_μ| √μ / w̄`, present when `w̄ > 0`).
    pub lambda_star: Option<f64>,
}

/// Effective scattering quantity `b_μ(λ)` in the nondegenerate
/// constant-eigenfunction regime (`argmin ℓ = 0`); other regimes are refused.
pub fn bmu(v: &RadialPotential, mu: f64, lambda: f64) -> Result<BmuReport> {
    if !(mu > 0.0) || !(lambda > 0.0) {
        return Err(Error::InvalidParameter("need mu > 0 and lambda > 0".into()));
    }
    let spectrum = emu(v, mu, 8)?;
    if spectrum.argmin_ell != 0 {
        return Err(Error::UnsupportedRegime(format!(
            "lowest V_mu eigenvalue sits in channel {} (degenerate regime)",
            spectrum.entries[spectrum.argmin_ell].0
        )));
    }
    let e_mu = spectrum.entries[0].1;
    let w_bar = wmu_swave(v, mu)?;
    let kf = mu.sqrt();
    let b_mu = lambda * PI / (2.0 * kf) * e_mu - lambda * lambda * PI / (2.0 * mu) * w_bar;
    let lambda_star = if w_bar > 0.0 && e_mu < 0.0 {
        Some(e_mu.abs() * kf / w_bar)
    } else {
        None
    };
    Ok(BmuReport {
        mu,
        lambda,
        e_mu,
        w_bar,
        b_mu,
        a0: born_a0(v, lambda)?,
        lambda_star,
    })
}

/// Momentum reach needed for `∫ V̂(k)² dk` per potential shape.
fn born_k_max(v: &RadialPotential) -> f64 {
    match v.kind() {
        PotentialKind::Gaussian { range, .. } => 30.0 / range,
        PotentialKind::Exponential { range, .. } => 150.0 / range,
        PotentialKind::SquareWell { radius, .. } => 12_000.0 / radius,
        PotentialKind::SumOfGaussians { terms } => {
            30.0 / terms.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Second-Born scattering length
/// `a₀(λ) = (λ/4π)∫V - (λ/4π)² ∫∫ V(x)V(y)/|x-y| dx dy`,
/// with the double integral evaluated on the Fourier side as
/// `16π² ∫₀^∞ V̂(k)² dk`.
pub fn born_a0(v: &RadialPotential, lambda: f64) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must be nonnegative, got {lambda}"
        )));
    }
    let first = v.integral();
    let double = 16.0 * PI * PI * fourier_square_integral(v);
    let c = lambda / (4.0 * PI);
    Ok(c * first - c * c * double)
}

/// `∫₀^∞ V̂(k)² dk` by marching Gauss–Legendre panels.
pub(crate) fn fourier_square_integral(v: &RadialPotential) -> f64 {
    let (x, w) = gauss_legendre(24);
    let width = 0.45 / v.min_range();
    let k_stop = born_k_max(v);
    let f = |k: f64| {
        let vh = v.fourier(k);
        vh * vh
    };
    let mut total = 0.0;
    let mut a = 0.0;
    while a < k_stop {
        total += gl_panel(&f, a, a + width, &x, &w);
        a += width;
    }
    total
}

/// `m_μ(T) = max{ (1/4πμ) ∫ (1/K_{T,μ}(p) - 1/p²) dp, 0 }`, evaluated in the
/// radial form `(1/μ) ∫₀^∞ (r²/K_{T,μ}(r²) - 1) dr` with an analytic tail.
pub fn mmu(mu: f64, t: f64) -> Result<f64> {
    if !(mu > 0.0) || !(t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need mu > 0 and T > 0, got mu = {mu}, T = {t}"
        )));
    }
    let kf = mu.sqrt();
    // push the cutoff far enough that tanh saturates: (R²-μ)/(2T) >= 20
    let r_max = (mu + (40.0 * t).max(8.0 * mu)).sqrt();
    let w_min = (t / (10.0 * mu)).clamp(2e-14, 5e-2);
    let grid = build_fermi_grid(mu, r_max, 160, 240, w_min)?;
    let integral = grid.integrate(|r| r * r / k_symbol(r * r, mu, t) - 1.0);
    let tail = 0.5 * kf * ((r_max + kf) / (r_max - kf)).ln();
    Ok(((integral + tail) / mu).max(0.0))
}

/// `m̃_μ(Δ) = max{ (1/4πμ) ∫ (1/√((p²-μ)² + Δ(p)²) - 1/p²) dp, 0 }` for a
/// sampled gap function.
pub fn mtilde(delta: &GapFunction, mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let kf = mu.sqrt();
    let delta_f = delta.eval(kf).abs();
    if delta_f <= 0.0 {
        return Err(Error::UnsupportedRegime(
            "gap vanishes at the Fermi surface: the integrand diverges".into(),
        ));
    }
    let r_max = (mu + (40.0 * delta_f).max(8.0 * mu)).sqrt();
    let w_min = (delta_f / (10.0 * mu)).clamp(2e-14, 5e-2);
    let grid = build_fermi_grid(mu, r_max, 160, 240, w_min)?;
    let integral = grid.integrate(|r| {
        let x = r * r - mu;
        let d = delta.eval(r);
        r * r / (x * x + d * d).sqrt() - 1.0
    });
    // beyond r_max the gap contribution to the dispersion is negligible
    let tail = 0.5 * kf * ((r_max + kf) / (r_max - kf)).ln();
    Ok(((integral + tail) / mu).max(0.0))
}
