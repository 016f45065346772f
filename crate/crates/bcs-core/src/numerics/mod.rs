//! Reusable numerical kernels: quadrature grids with Fermi-surface
//! refinement, a dense symmetric lowest-eigenpair solver, and monotone
//! bisection.
//!
//! All operations are pure functions of immutable inputs with fixed
//! summation order (ascending node index), so results are bit-reproducible
//! regardless of thread scheduling.

mod bisect;
mod eigen;
pub mod gauss;
mod grid;

pub use bisect::{bisect_monotone, BisectionResult};
pub use eigen::{
    jacobi_eigen, lowest_eigenpair, lowest_eigenvalue, lowest_eigenvalues, SpectralResult,
    SymMatrix,
};
pub use grid::{build_fermi_grid, QuadratureGrid};
