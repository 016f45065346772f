//! Solver library for the BCS gap equation of superfluidity.
//!
//! The crate models a gas of spin-1/2 fermions at chemical potential `μ > 0`
//! interacting through a radial pair potential `2λV(x)`, in natural units
//! where the kinetic symbol is `p²`. It provides:
//!
//! - [`potentials`]: a catalog of radial interactions with analytic Fourier
//!   transforms and Legendre-projected momentum kernels,
//! - [`numerics`]: quadrature grids with Fermi-surface refinement, a dense
//!   symmetric eigensolver, and monotone bisection,
//! - [`fermi_ops`]: Fermi-sphere channel eigenvalues, the second-order
//!   quadratic form `⟨u|W_μ|u⟩`, the effective scattering quantity `b_μ(λ)`,
//!   the second-Born scattering length, and the scalar functions `m_μ(T)`
//!   and `m̃_μ(Δ)`,
//! - [`linear_criterion`]: the critical temperature as the zero crossing of
//!   the lowest eigenvalue of `K_{T,μ} + λV` in partial-wave channels,
//! - [`gap_solver`]: the nonlinear gap equation at `T ≥ 0` by damped
//!   fixed-point iteration, with the derived quasi-particle state,
//! - [`asymptotics`]: closed-form weak-coupling predictions and λ→0 limit
//!   extraction from computed ladders,
//! - [`verify`]: the self-verification suite run by `bcs verify`.

pub mod asymptotics;
pub mod error;
pub mod fermi_ops;
pub mod gap_solver;
pub mod linear_criterion;
pub mod numerics;
pub mod potentials;
pub mod verify;

pub use error::{Error, Result};

/// Euler–Mascheroni constant, used by the weak-coupling prefactors.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
