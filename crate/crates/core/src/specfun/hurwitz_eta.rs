use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{bernoulli_number, bernoulli_poly, BERNOULLI_POLY_MAX};
use super::gamma::ln_gamma;
use super::polylog::{im_polylog_even, polylog_unit_circle};
use super::{as_nonpositive_integer, em_shift, pow_neg};
use crate::error::{check_finite, check_finite_real, Error, Result};

/// Left of this abscissa the reflection formula with a direct sine series
/// replaces Euler–Maclaurin. Between it and zero the sine series is summed
/// through the polylogarithm.
const REFLECTION_ABSCISSA: f64 = -4.0;

/// A real shift `a ∉ ℤ`, stored together with its fractional part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalShift {
    a: f64,
    frac: f64,
}

impl FractionalShift {
    pub fn new(a: f64) -> Result<Self> {
        check_finite_real(a, "FractionalShift")?;
        let frac = a - a.floor();
        if frac == 0.0 {
            return Err(Error::domain(format!("shift a = {a} must not be an integer")));
        }
        Ok(FractionalShift { a, frac })
    }

    pub fn value(self) -> f64 {
        self.a
    }

    /// `a - ⌊a⌋ ∈ (0, 1)`.
    pub fn reduced(self) -> f64 {
        self.frac
    }
}

/// `(e^z - 1)/z`, accurate for small `z`.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 0.1 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..16 {
            term *= z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// Bernoulli corrections of the Euler–Maclaurin tail at `x`, without the
/// integral term: `x^(-s)/2 + Σ_k B_2k/(2k)! (s)_{2k-1} x^(-s-2k+1)`.
fn em_corrections(s: Complex64, x: f64) -> Complex64 {
    let xs = pow_neg(x, s);
    let mut acc = xs * 0.5;
    let xinv = 1.0 / x;
    let mut poch = s;
    let mut fact = 2.0;
    let mut pw = xs * xinv;
    for k in 1..=12 {
        acc += poch * pw * (bernoulli_number(2 * k) / fact);
        let k2 = (2 * k) as f64;
        poch *= (s + (k2 - 1.0)) * (s + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        pw *= xinv * xinv;
    }
    acc
}

/// `ζ(s,b) - ζ(s,1-b)` from two Euler–Maclaurin expansions sharing the same
/// cut. The integral terms are combined before division by `s - 1`, which
/// makes the expression regular at `s = 1`.
fn em_difference(s: Complex64, b: f64) -> Complex64 {
    let m = em_shift(s);
    let c = 1.0 - b;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..m {
        acc += pow_neg(n as f64 + b, s) - pow_neg(n as f64 + c, s);
    }
    let x = m as f64 + b;
    let y = m as f64 + c;
    // (x^u - y^u)/(s-1) with u = 1 - s
    let u = 1.0 - s;
    let ratio = (x / y).ln();
    let y_u = (u * y.ln()).exp();
    acc -= y_u * ratio * expm1_over(u * ratio);
    acc + em_corrections(s, x) - em_corrections(s, y)
}

/// Reflection route: with `σ = 1 - s`,
/// `η_Hurw(s,b) = 4 (2π)^(-σ) sin(πσ/2) Γ(σ) Σ_{n≥1} sin(2πnb) n^(-σ)`.
fn reflected(s: Complex64, b: f64) -> Result<Complex64> {
    let sigma = 1.0 - s;
    let p = sigma.re - 1.0;
    // tail after N terms is below N^(-p)/p
    let n_terms = (1e-17 * p).powf(-1.0 / p).ceil().clamp(16.0, 1e6) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=n_terms).rev() {
        acc += pow_neg(n as f64, sigma) * (2.0 * PI * n as f64 * b).sin();
    }
    let log_scale = ln_gamma(sigma)? - sigma * (2.0 * PI).ln();
    Ok(log_scale.exp() * (sigma * (PI / 2.0)).sin() * acc * 4.0)
}

/// Reflection with the sine series summed through `Li_σ(e^{±2πib})`, for
/// `1 < Re σ ≤ 5` where the direct series converges too slowly.
fn reflected_polylog(s: Complex64, b: f64) -> Result<Complex64> {
    let sigma = 1.0 - s;
    let sine_sum = (polylog_unit_circle(sigma, b)? - polylog_unit_circle(sigma, -b)?)
        / Complex64::new(0.0, 2.0);
    let log_scale = ln_gamma(sigma)? - sigma * (2.0 * PI).ln();
    Ok(log_scale.exp() * (sigma * (PI / 2.0)).sin() * sine_sum * 4.0)
}

/// Two-sided Hurwitz eta `η_Hurw(s,a) = Σ_{n∈ℤ} sign(n+a)|n+a|^(-s)`, i.e.
/// `ζ(s,a) - ζ(s,1-a)` after reducing `a` into (0,1). Entire in `s`.
///
/// At `s = -n` the Bernoulli closed form is used: zero for odd `n`,
/// `-2 B_{n+1}(a)/(n+1)` for even `n`.
pub fn eta_hurw(s: Complex64, a: f64) -> Result<Complex64> {
    check_finite(s, "eta_hurw")?;
    let b = FractionalShift::new(a)?.reduced();
    if b == 0.5 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if let Some(n) = as_nonpositive_integer(s) {
        if n % 2 == 1 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if n < BERNOULLI_POLY_MAX as u64 {
            let n1 = n as u32 + 1;
            return Ok(Complex64::new(
                -2.0 * bernoulli_poly(n1, b)? / n1 as f64,
                0.0,
            ));
        }
    }
    if s.re < REFLECTION_ABSCISSA {
        return reflected(s, b);
    }
    if s.re < 0.0 {
        // Euler–Maclaurin cancels terms of size m^(-Re s) here
        return reflected_polylog(s, b);
    }
    Ok(em_difference(s, b))
}

/// `η'_Hurw(-2l-1, a) = (-1)^l (2π)^(-2l-1) (2l+1)! Im Li_{2l+2}(e^{2πia})`.
pub fn eta_hurw_deriv_neg_odd(l: u32, a: f64) -> Result<f64> {
    let shift = FractionalShift::new(a)?;
    let k = 2 * l + 1;
    let mut scale = (2.0 * PI).powi(-(k as i32));
    for j in 2..=k {
        scale *= j as f64;
    }
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * scale * im_polylog_even(l, shift.reduced())?)
}
