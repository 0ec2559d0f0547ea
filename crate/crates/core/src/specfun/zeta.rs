use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{bernoulli_number, bernoulli_poly, BERNOULLI_POLY_MAX};
use super::gamma::ln_gamma;
use super::{as_nonpositive_integer, pow_neg};
use crate::error::{check_finite, check_finite_real, Error, Result};

/// Number of Bernoulli correction terms `B_2 .. B_24`.
const EM_ORDER: usize = 12;

/// Explicit-term count for the Euler–Maclaurin tail of ζ(s, a).
///
/// For Re s ≥ 0 the tail is cut at `16 + ⌈|Im s|⌉`. Left of the axis the
/// explicit terms grow like `(M + a)^(1 - Re s)`, so the cut moves in to keep
/// the rounding error of the sum small.
pub(crate) fn em_shift(s: Complex64) -> usize {
    let im = s.im.abs().ceil() as usize;
    if s.re >= 0.0 {
        16 + im
    } else {
        6 + (1.2 * s.im.abs()).ceil() as usize
    }
}

/// Euler–Maclaurin evaluation of `Σ_{n≥0} (n + a)^(-s)` for any `a > 0`,
/// summing the first `m` terms explicitly.
pub(crate) fn hurwitz_em(s: Complex64, a: f64, m: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..m {
        acc += pow_neg(n as f64 + a, s);
    }
    let x = m as f64 + a;
    let xs = pow_neg(x, s); // x^(-s)
    acc += xs * x / (s - 1.0) + xs * 0.5;
    // Σ_k B_2k/(2k)! · s(s+1)…(s+2k-2) · x^(-s-2k+1)
    let xinv = 1.0 / x;
    let mut poch = s; // s(s+1)…(s+2k-2)
    let mut fact = 2.0; // (2k)!
    let mut pw = xs * xinv; // x^(-s-2k+1)
    for k in 1..=EM_ORDER {
        acc += poch * pw * (bernoulli_number(2 * k) / fact);
        let k2 = (2 * k) as f64;
        poch *= (s + (k2 - 1.0)) * (s + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        pw *= xinv * xinv;
    }
    acc
}

/// Riemann zeta function ζ(s).
///
/// Euler–Maclaurin on the right of `Re s = 1/2`, the functional equation on
/// the left, Bernoulli numbers at the nonpositive integers.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    check_finite(s, "riemann_zeta")?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "riemann_zeta",
            at: s,
        });
    }
    if let Some(n) = as_nonpositive_integer(s) {
        if n == 0 {
            return Ok(Complex64::new(-0.5, 0.0));
        }
        if n % 2 == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if (n as usize) < 160 {
            let n1 = n as usize + 1;
            return Ok(Complex64::new(-bernoulli_number(n1) / n1 as f64, 0.0));
        }
    }
    if s.re < 0.5 {
        // ζ(s) = 2^s π^(s-1) sin(πs/2) Γ(1-s) ζ(1-s)
        let t = 1.0 - s;
        let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_gamma(t)?;
        let sin = (s * (PI / 2.0)).sin();
        return Ok(log_factor.exp() * sin * hurwitz_em(t, 1.0, em_shift(t)));
    }
    Ok(hurwitz_em(s, 1.0, em_shift(s)))
}

/// Hurwitz zeta function `ζ(s, a) = Σ_{n≥0} (n + a)^(-s)` for `0 < a ≤ 1`.
///
/// At `s = -n` the closed form `-B_{n+1}(a)/(n+1)` is used.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    check_finite(s, "hurwitz_zeta")?;
    check_finite_real(a, "hurwitz_zeta")?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!(
            "hurwitz_zeta: shift a = {a} outside (0, 1]"
        )));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: s,
        });
    }
    if let Some(n) = as_nonpositive_integer(s) {
        if n < BERNOULLI_POLY_MAX as u64 {
            let n1 = n as u32 + 1;
            let b = bernoulli_poly(n1, a)?;
            return Ok(Complex64::new(-b / n1 as f64, 0.0));
        }
    }
    Ok(hurwitz_em(s, a, em_shift(s)))
}
