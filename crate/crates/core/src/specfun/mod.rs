//! Special-function kernel.
//!
//! Everything here works in `f64`/[`Complex64`]. Accuracy targets are
//! relative `1e-12` for Gamma and Riemann zeta in the window
//! `|Im s| ≤ 50`, `-40 ≤ Re s ≤ 40`, and absolute `1e-12` for the unit-circle
//! polylogarithm.

mod bernoulli;
mod gamma;
mod hurwitz_eta;
mod polylog;
mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_poly, BERNOULLI_POLY_MAX};
pub use gamma::{gamma_fn, ln_gamma};
pub use hurwitz_eta::{eta_hurw, eta_hurw_deriv_neg_odd, FractionalShift};
pub use polylog::{im_polylog_even, polylog_unit_circle};
pub use zeta::{hurwitz_zeta, riemann_zeta};

pub(crate) use zeta::{em_shift, hurwitz_em};

use num_complex::Complex64;

/// `b^(-s)` for a positive real base.
#[inline]
pub(crate) fn pow_neg(b: f64, s: Complex64) -> Complex64 {
    debug_assert!(b > 0.0);
    if s.im == 0.0 {
        Complex64::new(b.powf(-s.re), 0.0)
    } else {
        (-s * b.ln()).exp()
    }
}

/// `Some(n)` when `s` is exactly the nonpositive integer `-n`.
pub(crate) fn as_nonpositive_integer(s: Complex64) -> Option<u64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() && s.re > -1e15 {
        Some((-s.re) as u64)
    } else {
        None
    }
}

/// `Some(k)` when `s` is exactly the integer `k`.
pub(crate) fn as_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re == s.re.round() && s.re.abs() < 1e15 {
        Some(s.re as i64)
    } else {
        None
    }
}
