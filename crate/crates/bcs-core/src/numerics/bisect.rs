//! Bisection for nondecreasing functions.

use crate::error::{Error, Result};

/// Outcome of a monotone bisection.
#[derive(Debug, Clone)]
pub struct BisectionResult {
    /// Midpoint of the final bracket.
    pub root: f64,
    /// Final bracket `(lo, hi)` with `f(lo) < 0 <= f(hi)`.
    pub bracket: (f64, f64),
    /// Number of function evaluations spent.
    pub evaluations: usize,
    /// Set when a sampled value violated the nondecreasing assumption.
    pub monotone_warning: bool,
}

/// Finds the sign change of a nondecreasing function on `[lo, hi]`.
///
/// Requires `f(lo) < 0 <= f(hi)`; shrinks the bracket until its width is at
/// most `rel_tol` times the root magnitude. Monotonicity violations observed
/// among the sampled values are reported on the result, not fatal.
pub fn bisect_monotone(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<BisectionResult> {
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "rel_tol must be positive, got {rel_tol}"
        )));
    }
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut evaluations = 2;
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut warning = false;
    for _ in 0..256 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break; // bracket at floating-point resolution
        }
        let f_mid = f(mid);
        evaluations += 1;
        let slack = 1e-13 * f_lo.abs().max(f_hi.abs()).max(f_mid.abs());
        if f_mid < f_lo - slack || f_mid > f_hi + slack {
            warning = true;
        }
        if f_mid < 0.0 {
            a = mid;
            f_lo = f_mid;
        } else {
            b = mid;
            f_hi = f_mid;
        }
        let mid_now = 0.5 * (a + b);
        if (b - a) <= rel_tol * mid_now.abs() {
            break;
        }
    }
    Ok(BisectionResult {
        root: 0.5 * (a + b),
        bracket: (a, b),
        evaluations,
        monotone_warning: warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn linear_root() {
        let r = bisect_monotone(|x| x - 2.0, 0.0, 5.0, 1e-12).unwrap();
        assert_relative_eq!(r.root, 2.0, max_relative = 1e-12);
        assert!(!r.monotone_warning);
    }

    #[test]
    fn logarithm_root() {
        let r = bisect_monotone(|x| x.ln(), 0.1, 10.0, 1e-12).unwrap();
        assert_relative_eq!(r.root, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn unbracketed_root_is_rejected() {
        assert!(matches!(
            bisect_monotone(|x| x + 10.0, 0.0, 1.0, 1e-8),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn non_monotone_samples_raise_warning() {
        // dips below f(lo) inside the bracket
        let r = bisect_monotone(|x| (x - 2.0) * (x - 0.2) * (x + 5.0), 0.5, 5.0, 1e-10).unwrap();
        assert!(r.monotone_warning);
        assert_relative_eq!(r.root, 2.0, max_relative = 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn doubling_the_bracket_moves_the_root_within_tolerance(
            root in 0.5f64..4.0,
            slope in 0.1f64..10.0,
        ) {
            let tol = 1e-10;
            let f = |x: f64| slope * (x - root);
            let base = bisect_monotone(f, 0.1, 8.0, tol).unwrap();
            let doubled = bisect_monotone(f, 0.1, 16.0, tol).unwrap();
            prop_assert!((base.root - doubled.root).abs() <= 2.0 * tol * root.abs());
        }
    }
}
