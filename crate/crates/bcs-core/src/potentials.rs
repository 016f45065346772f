//! Radial interaction potentials with Fourier transforms and
//! Legendre-projected momentum kernels.
//!
//! Conventions: `V̂(k) = (2π)^{-3/2} ∫ V(x) e^{-ikx} d³x`, which for radial
//! `V` reduces to `(2π)^{-3/2} (4π/k) ∫ r V(r) sin(kr) dr`. All potentials in
//! the catalog are in `L¹ ∩ L^{3/2}`; negative amplitude means attraction.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::gauss::{gauss_legendre, legendre_p};

const TWO_PI_POW_3_2: f64 = 15.749_609_945_722_419; // (2π)^{3/2}

/// Shape of a radial interaction.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    /// `A exp(-(r/a)²)`
    Gaussian { amplitude: f64, range: f64 },
    /// `A` for `r < R`, zero outside
    SquareWell { amplitude: f64, radius: f64 },
    /// `A exp(-r/a)`
    Exponential { amplitude: f64, range: f64 },
    /// Sum of Gaussian terms `(amplitude, range)`
    SumOfGaussians { terms: Vec<(f64, f64)> },
}

/// Structural flags established at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PotentialFlags {
    /// `∫ V < 0` (sufficient for a negative Fermi-sphere eigenvalue).
    pub has_negative_integral: bool,
    /// `V̂(k) <= 0` on the sampled grid (uniqueness regime for the gap).
    pub fourier_nonpositive: bool,
    /// `∫ |V(x)| |x|^{6/5} d³x` finite (decay needed for the gap theorems).
    pub weight_decay: bool,
}

/// A radial pair interaction with verified integrability.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPotential {
    kind: PotentialKind,
    flags: PotentialFlags,
}

impl RadialPotential {
    pub fn new(kind: PotentialKind) -> Result<Self> {
        match &kind {
            PotentialKind::Gaussian { range, .. } | PotentialKind::Exponential { range, .. } => {
                if !(*range > 0.0) || !range.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "range must be positive, got {range}"
                    )));
                }
            }
            PotentialKind::SquareWell { radius, .. } => {
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "radius must be positive, got {radius}"
                    )));
                }
            }
            PotentialKind::SumOfGaussians { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidParameter("mix needs at least one term".into()));
                }
                for (_, a) in terms {
                    if !(*a > 0.0) || !a.is_finite() {
                        return Err(Error::InvalidParameter(format!(
                            "range must be positive, got {a}"
                        )));
                    }
                }
            }
        }
        let amp_ok = |a: &f64| a.is_finite();
        let amps_finite = match &kind {
            PotentialKind::Gaussian { amplitude, .. }
            | PotentialKind::SquareWell { amplitude, .. }
            | PotentialKind::Exponential { amplitude, .. } => amp_ok(amplitude),
            PotentialKind::SumOfGaussians { terms } => terms.iter().all(|(a, _)| amp_ok(a)),
        };
        if !amps_finite {
            return Err(Error::InvalidParameter("amplitude must be finite".into()));
        }

        let mut pot = Self {
            kind,
            flags: PotentialFlags {
                has_negative_integral: false,
                fourier_nonpositive: false,
                weight_decay: false,
            },
        };
        // L¹ and L^{3/2} finiteness: certified by convergent radial quadrature.
        let (abs_int, conv1) = pot.radial_integral(|r, v| r * r * v.abs());
        let (l32, conv2) = pot.radial_integral(|r, v| r * r * v.abs().powf(1.5));
        if !(conv1 && conv2 && abs_int.is_finite() && l32.is_finite()) {
            return Err(Error::InvalidParameter(
                "potential is not integrable (L1 or L3/2 check failed)".into(),
            ));
        }
        let (weight, conv3) = pot.radial_integral(|r, v| r * r * v.abs() * r.powf(1.2));
        pot.flags = PotentialFlags {
            has_negative_integral: pot.integral() < 0.0,
            fourier_nonpositive: pot.certify_fourier_nonpositive(),
            weight_decay: conv3 && weight.is_finite(),
        };
        Ok(pot)
    }

    pub fn gaussian(amplitude: f64, range: f64) -> Result<Self> {
        Self::new(PotentialKind::Gaussian { amplitude, range })
    }

    pub fn square_well(amplitude: f64, radius: f64) -> Result<Self> {
        Self::new(PotentialKind::SquareWell { amplitude, radius })
    }

    pub fn exponential(amplitude: f64, range: f64) -> Result<Self> {
        Self::new(PotentialKind::Exponential { amplitude, range })
    }

    pub fn sum_of_gaussians(terms: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(PotentialKind::SumOfGaussians { terms })
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn flags(&self) -> PotentialFlags {
        self.flags
    }

    /// `V(r)`.
    pub fn value(&self, r: f64) -> f64 {
        match &self.kind {
            PotentialKind::Gaussian { amplitude, range } => {
                amplitude * (-(r / range) * (r / range)).exp()
            }
            PotentialKind::SquareWell { amplitude, radius } => {
                if r < *radius {
                    *amplitude
                } else {
                    0.0
                }
            }
            PotentialKind::Exponential { amplitude, range } => amplitude * (-r / range).exp(),
            PotentialKind::SumOfGaussians { terms } => terms
                .iter()
                .map(|(a, s)| a * (-(r / s) * (r / s)).exp())
                .sum(),
        }
    }

    /// Characteristic length of the shortest-range component.
    pub fn min_range(&self) -> f64 {
        match &self.kind {
            PotentialKind::Gaussian { range, .. } | PotentialKind::Exponential { range, .. } => {
                *range
            }
            PotentialKind::SquareWell { radius, .. } => *radius,
            PotentialKind::SumOfGaussians { terms } => {
                terms.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// `∫ V(x) d³x`, closed form.
    pub fn integral(&self) -> f64 {
        match &self.kind {
            PotentialKind::Gaussian { amplitude, range } => {
                amplitude * PI.powf(1.5) * range.powi(3)
            }
            PotentialKind::SquareWell { amplitude, radius } => {
                amplitude * 4.0 * PI / 3.0 * radius.powi(3)
            }
            PotentialKind::Exponential { amplitude, range } => {
                amplitude * 8.0 * PI * range.powi(3)
            }
            PotentialKind::SumOfGaussians { terms } => terms
                .iter()
                .map(|(a, s)| a * PI.powf(1.5) * s.powi(3))
                .sum(),
        }
    }

    /// `V̂(k)` in the `(2π)^{-3/2}` convention; closed form for each variant.
    pub fn fourier(&self, k: f64) -> f64 {
        let k = k.abs();
        match &self.kind {
            PotentialKind::Gaussian { amplitude, range } => {
                gaussian_fourier(*amplitude, *range, k)
            }
            PotentialKind::SquareWell { amplitude, radius } => {
                let x = k * radius;
                if x < 1e-4 {
                    // series of (sin x - x cos x)/x³ around 0
                    let corr = 1.0 / 3.0 - x * x / 30.0 + x.powi(4) / 840.0;
                    amplitude / TWO_PI_POW_3_2 * 4.0 * PI * radius.powi(3) * corr
                } else {
                    amplitude / TWO_PI_POW_3_2 * 4.0 * PI * (x.sin() - x * x.cos()) / (k * k * k)
                }
            }
            PotentialKind::Exponential { amplitude, range } => {
                let d = 1.0 + (k * range) * (k * range);
                amplitude / TWO_PI_POW_3_2 * 8.0 * PI * range.powi(3) / (d * d)
            }
            PotentialKind::SumOfGaussians { terms } => terms
                .iter()
                .map(|(a, s)| gaussian_fourier(*a, *s, k))
                .sum(),
        }
    }

    /// `V̂(k)` by direct radial sine quadrature; generic path used to verify
    /// the closed forms.
    pub fn fourier_numeric(&self, k: f64) -> f64 {
        if k <= 0.0 {
            // limit: (2π)^{-3/2} ∫ V
            let (v, _) = self.radial_integral(|r, val| r * r * val);
            return 4.0 * PI * v / TWO_PI_POW_3_2;
        }
        let max_range = match &self.kind {
            PotentialKind::SumOfGaussians { terms } => {
                terms.iter().map(|(_, s)| *s).fold(0.0, f64::max)
            }
            _ => self.min_range(),
        };
        // panel width resolves both the potential scale and the oscillation
        let len = self.min_range().min(PI / k);
        let (x, w) = gauss_legendre(24);
        let panel_integral = |a: f64, b: f64| {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let mut acc = 0.0;
            for (xi, wi) in x.iter().zip(w.iter()) {
                let r = mid + half * xi;
                acc += wi * r * self.value(r) * (k * r).sin();
            }
            half * acc
        };
        let mut total = 0.0;
        if let PotentialKind::SquareWell { radius, .. } = &self.kind {
            // the integrand is supported on [0, R]; keep panel edges off the jump
            let n = ((radius / len).ceil() as usize).max(4);
            for i in 0..n {
                let a = radius * i as f64 / n as f64;
                let b = radius * (i + 1) as f64 / n as f64;
                total += panel_integral(a, b);
            }
        } else {
            let mut a = 0.0;
            for _ in 0..100_000 {
                let b = a + len;
                let panel = panel_integral(a, b);
                total += panel;
                a = b;
                if a > 3.0 * max_range && panel.abs() < 1e-17 * total.abs().max(1e-30) {
                    break;
                }
                if a > 200.0 * max_range {
                    break;
                }
            }
        }
        4.0 * PI / k * total / TWO_PI_POW_3_2
    }

    /// Convergent radial quadrature `∫₀^∞ f(r, V(r)) dr`; returns the value
    /// and whether the tail converged.
    fn radial_integral(&self, f: impl Fn(f64, f64) -> f64) -> (f64, bool) {
        let len = self.min_range();
        let (x, w) = gauss_legendre(32);
        let mut total = 0.0;
        let mut a = 0.0;
        let mut converged = false;
        for _ in 0..200 {
            let b = a + len;
            let half = 0.5 * len;
            let mid = 0.5 * (a + b);
            let mut panel = 0.0;
            for (xi, wi) in x.iter().zip(w.iter()) {
                let r = mid + half * xi;
                panel += wi * f(r, self.value(r));
            }
            panel *= half;
            total += panel;
            a = b;
            if panel.abs() <= 1e-15 * total.abs().max(1e-30) {
                converged = true;
                break;
            }
        }
        (total, converged)
    }

    /// Nonpositivity of `V̂` on a 4096-point grid up to `40/min_range`, with
    /// sign knowledge for single-sign Gaussian/exponential shapes.
    fn certify_fourier_nonpositive(&self) -> bool {
        match &self.kind {
            PotentialKind::Gaussian { amplitude, .. }
            | PotentialKind::Exponential { amplitude, .. } => *amplitude <= 0.0,
            PotentialKind::SumOfGaussians { terms } if terms.iter().all(|(a, _)| *a <= 0.0) => {
                true
            }
            _ => {
                let k_max = 40.0 / self.min_range();
                let scale = self.fourier(0.0).abs().max(1e-300);
                (0..4096).all(|i| {
                    let k = k_max * i as f64 / 4095.0;
                    self.fourier(k) <= 1e-12 * scale
                })
            }
        }
    }
}

fn gaussian_fourier(amplitude: f64, range: f64, k: f64) -> f64 {
    amplitude * range.powi(3) / (2.0f64).powf(1.5) * (-k * k * range * range / 4.0).exp()
}

/// Diagnostics produced by [`integrability_report`].
#[derive(Debug, Clone)]
pub struct IntegrabilityReport {
    /// `∫ V d³x` (closed form).
    pub integral: f64,
    /// `∫ |V| d³x`.
    pub abs_integral: f64,
    /// `(∫ |V|^{3/2})^{2/3}`.
    pub l32_norm: f64,
    pub weight_decay: bool,
    pub fourier_nonpositive: bool,
    /// `|∫V - (2π)^{3/2} V̂(0)|` relative to scale.
    pub fourier_identity_dev: f64,
}

/// Integrability and sign diagnostics for a potential.
pub fn integrability_report(v: &RadialPotential) -> IntegrabilityReport {
    let integral = v.integral();
    let (abs_r, conv_abs) = v.radial_integral(|r, val| r * r * val.abs());
    let (l32_r, conv_l32) = v.radial_integral(|r, val| r * r * val.abs().powf(1.5));
    let abs_integral = if conv_abs { 4.0 * PI * abs_r } else { f64::INFINITY };
    let l32_norm = if conv_l32 {
        (4.0 * PI * l32_r).powf(2.0 / 3.0)
    } else {
        f64::INFINITY
    };
    let vhat0 = v.fourier(0.0);
    let scale = integral.abs().max(abs_integral).max(1e-300);
    IntegrabilityReport {
        integral,
        abs_integral,
        l32_norm,
        weight_decay: v.flags().weight_decay,
        fourier_nonpositive: v.flags().fourier_nonpositive,
        fourier_identity_dev: (integral - TWO_PI_POW_3_2 * vhat0).abs() / scale,
    }
}

/// Fourier transform of the potential at momentum `k >= 0`.
pub fn fourier_transform(v: &RadialPotential, k: f64) -> f64 {
    v.fourier(k)
}

/// Legendre projection of the momentum kernel,
/// `V̂_ℓ(p, q) = (2π)^{-3/2} 2π ∫_{-1}^{1} V̂(√(p²+q²-2pqt)) P_ℓ(t) dt`.
///
/// Fixed quadrature order; build through [`LegendreProjector::adaptive`] to
/// pick the order by self-convergence.
#[derive(Debug, Clone)]
pub struct LegendreProjector {
    ell: usize,
    nodes: Vec<f64>,
    /// weight × P_ℓ(node), premultiplied
    weighted_pl: Vec<f64>,
}

impl LegendreProjector {
    pub fn new(ell: usize, order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        let weighted_pl = nodes
            .iter()
            .zip(weights.iter())
            .map(|(t, w)| w * legendre_p(ell, *t))
            .collect();
        Self { ell, nodes, weighted_pl }
    }

    /// Doubles the order from 64 until two successive orders agree to
    /// `1e-11` relative on the probe pairs.
    pub fn adaptive(ell: usize, v: &RadialPotential, probes: &[(f64, f64)]) -> Self {
        let mut order = 64;
        let mut current = Self::new(ell, order);
        while order < 1024 {
            let next = Self::new(ell, order * 2);
            let agree = probes.iter().all(|(p, q)| {
                let a = current.kernel(v, *p, *q);
                let b = next.kernel(v, *p, *q);
                (a - b).abs() <= 1e-11 * a.abs().max(b.abs()).max(1e-300)
            });
            if agree {
                return current;
            }
            order *= 2;
            current = next;
        }
        current
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `V̂_ℓ(p, q)`; symmetric in `(p, q)` by construction.
    pub fn kernel(&self, v: &RadialPotential, p: f64, q: f64) -> f64 {
        let p2q2 = p * p + q * q;
        let two_pq = 2.0 * p * q;
        let mut acc = 0.0;
        for (t, wpl) in self.nodes.iter().zip(self.weighted_pl.iter()) {
            let arg2 = (p2q2 - two_pq * t).max(0.0);
            acc += wpl * v.fourier(arg2.sqrt());
        }
        2.0 * PI * acc / TWO_PI_POW_3_2
    }
}

/// One-shot adaptive evaluation of `V̂_ℓ(p, q)`.
pub fn angular_kernel(v: &RadialPotential, ell: usize, p: f64, q: f64) -> f64 {
    LegendreProjector::adaptive(ell, v, &[(p, q)]).kernel(v, p, q)
}

/// Named potentials exercised throughout the test and verification suites:
/// three attractive cores and one sign-indefinite mix.
pub fn catalog() -> Vec<(&'static str, RadialPotential)> {
    vec![
        (
            "gaussian_attractive",
            RadialPotential::gaussian(-5.0, 1.0).expect("valid"),
        ),
        (
            "exponential_attractive",
            RadialPotential::exponential(-3.0, 0.8).expect("valid"),
        ),
        (
            "square_well_attractive",
            RadialPotential::square_well(-2.0, 1.5).expect("valid"),
        ),
        (
            "gaussian_mix_indefinite",
            RadialPotential::sum_of_gaussians(vec![(-5.0, 1.0), (1.0, 0.5)]).expect("valid"),
        ),
    ]
}

/// Catalog entries in the nonpositive-transform regime required by the gap
/// solver.
pub fn gap_catalog() -> Vec<(&'static str, RadialPotential)> {
    catalog()
        .into_iter()
        .filter(|(_, v)| v.flags().fourier_nonpositive && v.fourier(0.0) < 0.0)
        .collect()
}

fn fmt_float(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for RadialPotential {
    /// Canonical spec-string form, the normalized grammar accepted by
    /// [`RadialPotential::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PotentialKind::Gaussian { amplitude, range } => {
                write!(f, "gaussian:amp={},range={}", fmt_float(*amplitude), fmt_float(*range))
            }
            PotentialKind::SquareWell { amplitude, radius } => {
                write!(
                    f,
                    "square_well:amp={},radius={}",
                    fmt_float(*amplitude),
                    fmt_float(*radius)
                )
            }
            PotentialKind::Exponential { amplitude, range } => {
                write!(
                    f,
                    "exponential:amp={},range={}",
                    fmt_float(*amplitude),
                    fmt_float(*range)
                )
            }
            PotentialKind::SumOfGaussians { terms } => {
                write!(f, "mix:[")?;
                for (i, (a, s)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "gaussian:amp={},range={}", fmt_float(*a), fmt_float(*s))?;
                }
                write!(f, "]")
            }
        }
    }
}

fn parse_kv(body: &str, expected: &[&str]) -> Result<Vec<f64>> {
    let mut out = vec![f64::NAN; expected.len()];
    let mut seen = vec![false; expected.len()];
    for item in body.split(',') {
        let (key, value) = item.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("expected key=value, got '{item}'"))
        })?;
        let key = key.trim();
        let idx = expected.iter().position(|e| *e == key).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown key '{key}', expected one of {expected:?}"
            ))
        })?;
        if seen[idx] {
            return Err(Error::InvalidParameter(format!("duplicate key '{key}'")));
        }
        out[idx] = value.trim().parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("cannot parse '{}' for key '{key}'", value.trim()))
        })?;
        seen[idx] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidParameter(format!("missing key '{}'", expected[i])));
    }
    Ok(out)
}

impl FromStr for RadialPotential {
    type Err = Error;

    /// Grammar: `gaussian:amp=A,range=R`, `square_well:amp=A,radius=R`,
    /// `exponential:amp=A,range=R`, or
    /// `mix:[gaussian:amp=A,range=R;gaussian:amp=B,range=S;...]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s.split_once(':').ok_or_else(|| {
            Error::InvalidParameter(format!("expected 'kind:params', got '{s}'"))
        })?;
        match head.trim() {
            "gaussian" => {
                let v = parse_kv(body, &["amp", "range"])?;
                RadialPotential::gaussian(v[0], v[1])
            }
            "square_well" => {
                let v = parse_kv(body, &["amp", "radius"])?;
                RadialPotential::square_well(v[0], v[1])
            }
            "exponential" => {
                let v = parse_kv(body, &["amp", "range"])?;
                RadialPotential::exponential(v[0], v[1])
            }
            "mix" => {
                let inner = body
                    .trim()
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| {
                        Error::InvalidParameter("mix terms must be bracketed: mix:[...]".into())
                    })?;
                let mut terms = Vec::new();
                for part in inner.split(';') {
                    let part = part.trim();
                    let rest = part.strip_prefix("gaussian:").ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "mix accepts gaussian terms only, got '{part}'"
                        ))
                    })?;
                    let v = parse_kv(rest, &["amp", "range"])?;
                    terms.push((v[0], v[1]));
                }
                RadialPotential::sum_of_gaussians(terms)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown potential kind '{other}'"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn gaussian_fourier_closed_form() {
        // V(r) = -V0 e^{-r²}  →  V̂(k) = -V0 2^{-3/2} e^{-k²/4}
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        for k in [0.0f64, 0.3, 1.0, 2.7, 8.0] {
            let expected = -5.0 * (2.0f64).powf(-1.5) * (-k * k / 4.0).exp();
            assert_relative_eq!(v.fourier(k), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn zero_potential_has_zero_transform() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        for k in [0.0, 0.5, 3.0] {
            assert_eq!(v.fourier(k), 0.0);
        }
    }

    #[test]
    fn square_well_fourier_matches_quadrature() {
        let v = RadialPotential::square_well(-2.0, 1.5).unwrap();
        for k in [0.1, 0.9, 2.3, 6.0] {
            let closed = v.fourier(k);
            let numeric = v.fourier_numeric(k);
            assert_relative_eq!(closed, numeric, max_relative = 1e-9);
        }
        // continuity through the k→0 series branch
        assert_relative_eq!(v.fourier(1e-5), v.fourier(0.0), max_relative = 1e-8);
    }

    #[test]
    fn gaussian_numeric_transform_agrees_on_wide_k_range() {
        let v = RadialPotential::gaussian(-5.0, 0.7).unwrap();
        for i in 0..12 {
            let k = 20.0 / 0.7 * i as f64 / 11.0;
            let a = v.fourier(k);
            let b = v.fourier_numeric(k);
            assert_abs_diff_eq!(a, b, epsilon = 1e-10 * v.fourier(0.0).abs());
        }
    }

    #[test]
    fn integral_identity_against_fourier_at_zero() {
        for (_, v) in catalog() {
            let rep = integrability_report(&v);
            assert!(
                rep.fourier_identity_dev <= 1e-10,
                "identity deviation {} for {v}",
                rep.fourier_identity_dev
            );
        }
    }

    #[test]
    fn gaussian_integral_value() {
        // ∫ -5 e^{-r²} d³x = -5 π^{3/2}
        let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
        assert_relative_eq!(v.integral(), -5.0 * PI.powf(1.5), max_relative = 1e-14);
        assert_relative_eq!(v.integral(), -27.841_639_984_158_539, max_relative = 1e-12);
        assert!(v.flags().fourier_nonpositive);
        assert!(v.flags().has_negative_integral);
    }

    #[test]
    fn exponential_integral_value() {
        // ∫ -e^{-r} d³x = -4π Γ(3) = -8π
        let v = RadialPotential::exponential(-1.0, 1.0).unwrap();
        assert_relative_eq!(v.integral(), -8.0 * PI, max_relative = 1e-14);
        let rep = integrability_report(&v);
        assert_relative_eq!(rep.abs_integral, 8.0 * PI, max_relative = 1e-10);
    }

    #[test]
    fn zero_report_is_all_zero() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        let rep = integrability_report(&v);
        assert_eq!(rep.integral, 0.0);
        assert_eq!(rep.abs_integral, 0.0);
        assert_eq!(rep.l32_norm, 0.0);
    }

    #[test]
    fn square_well_transform_changes_sign() {
        let v = RadialPotential::square_well(-2.0, 1.5).unwrap();
        assert!(!v.flags().fourier_nonpositive);
        assert!(v.flags().has_negative_integral);
    }

    #[test]
    fn indefinite_mix_flags() {
        let v = RadialPotential::sum_of_gaussians(vec![(-5.0, 1.0), (1.0, 0.5)]).unwrap();
        assert!(v.flags().has_negative_integral);
        assert!(!v.flags().fourier_nonpositive);
    }

    #[test]
    fn angular_kernel_zero_potential() {
        let v = RadialPotential::gaussian(0.0, 1.0).unwrap();
        assert_eq!(angular_kernel(&v, 0, 1.0, 2.0), 0.0);
        assert_eq!(angular_kernel(&v, 3, 0.5, 0.5), 0.0);
    }

    #[test]
    fn constant_transform_projects_to_zero_for_higher_waves() {
        // A constant integrand is annihilated by every ℓ >= 1 projection:
        // the premultiplied weights sum to ∫ P_ℓ = 0.
        for ell in 1..=5 {
            let proj = LegendreProjector::new(ell, 64);
            let s: f64 = proj.weighted_pl.iter().sum();
            assert!(s.abs() < 1e-14, "ell = {ell}: ∫P_ell quadrature = {s}");
        }
        // and an almost-constant transform (very wide Gaussian at small
        // momenta) projects to nearly zero relative to the s-wave
        let v = RadialPotential::gaussian(-1.0, 1e-3).unwrap();
        let p = 0.1;
        let l0 = angular_kernel(&v, 0, p, p);
        for ell in 1..=3 {
            let ll = angular_kernel(&v, ell, p, p);
            assert!((ll / l0).abs() < 1e-7, "ell = {ell}: ratio {}", ll / l0);
        }
    }

    #[test]
    fn parse_and_emit_round_trip() {
        for text in [
            "gaussian:amp=-5,range=1",
            "square_well:amp=-2,radius=1.5",
            "exponential:amp=-3,range=0.8",
            "mix:[gaussian:amp=-5,range=1;gaussian:amp=1,range=0.5]",
        ] {
            let v: RadialPotential = text.parse().unwrap();
            let emitted = v.to_string();
            assert_eq!(emitted, text);
            let reparsed: RadialPotential = emitted.parse().unwrap();
            assert_eq!(reparsed.to_string(), emitted);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("gaussian:amp=-5".parse::<RadialPotential>().is_err());
        assert!("gaussian:amp=-5,range=0".parse::<RadialPotential>().is_err());
        assert!("lennard_jones:amp=1,range=1".parse::<RadialPotential>().is_err());
        assert!("gaussian:amp=x,range=1".parse::<RadialPotential>().is_err());
        assert!("mix:[square_well:amp=-2,radius=1]".parse::<RadialPotential>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn transform_bounded_by_l1_norm(
            amp in -10.0f64..10.0,
            range in 0.2f64..3.0,
            k in 0.0f64..30.0,
        ) {
            let v = RadialPotential::gaussian(amp, range).unwrap();
            let rep = integrability_report(&v);
            let bound = rep.abs_integral / TWO_PI_POW_3_2;
            prop_assert!(v.fourier(k).abs() <= bound * (1.0 + 1e-9) + 1e-300);
            // evenness
            prop_assert_eq!(v.fourier(k), v.fourier(-k));
        }

        #[test]
        fn kernel_symmetry_is_exact(
            p in 0.05f64..4.0,
            q in 0.05f64..4.0,
            ell in 0usize..4,
        ) {
            let v = RadialPotential::gaussian(-5.0, 1.0).unwrap();
            let proj = LegendreProjector::new(ell, 64);
            prop_assert_eq!(proj.kernel(&v, p, q), proj.kernel(&v, q, p));
        }
    }
}
