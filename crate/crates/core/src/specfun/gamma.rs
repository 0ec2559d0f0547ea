use std::f64::consts::PI;

use num_complex::Complex64;

use super::{as_nonpositive_integer, bernoulli::bernoulli_number};
use crate::error::{check_finite, Error, Result};

/// Stirling series is used once |z| reaches this radius.
const STIRLING_RADIUS: f64 = 15.0;
const STIRLING_TERMS: usize = 10;

/// ln Γ(z) by the Stirling series, valid for |z| ≥ STIRLING_RADIUS, Re z > 0.
fn stirling(z: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut acc = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut pw = zinv;
    for k in 1..=STIRLING_TERMS {
        let k2 = 2 * k;
        acc += pw * (bernoulli_number(k2) / (k2 * (k2 - 1)) as f64);
        pw *= zinv2;
    }
    acc
}

/// Shift count `n` with `|z + n| ≥ STIRLING_RADIUS`.
fn shift_for(z: Complex64) -> usize {
    let mut n = 0usize;
    while (z + n as f64).norm() < STIRLING_RADIUS {
        n += 1;
    }
    n
}

/// Γ(s) for complex `s` off the poles at the nonpositive integers.
pub fn gamma_fn(s: Complex64) -> Result<Complex64> {
    check_finite(s, "gamma_fn")?;
    if as_nonpositive_integer(s).is_some() {
        return Err(Error::Pole {
            function: "gamma",
            at: s,
        });
    }
    if s.re < 0.5 {
        // reflection
        let sin = (s * PI).sin();
        return Ok(Complex64::new(PI, 0.0) / (sin * gamma_fn(1.0 - s)?));
    }
    let n = shift_for(s);
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..n {
        prod *= s + k as f64;
    }
    Ok(stirling(s + n as f64).exp() / prod)
}

/// A logarithm of Γ(s); the imaginary part is not reduced to the principal
/// branch, so only `exp` of the result is meaningful for complex `s`.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    check_finite(s, "ln_gamma")?;
    if as_nonpositive_integer(s).is_some() {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: s,
        });
    }
    if s.re < 0.5 {
        let sin = (s * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - ln_gamma(1.0 - s)?);
    }
    let n = shift_for(s);
    let mut acc = stirling(s + n as f64);
    for k in 0..n {
        acc -= (s + k as f64).ln();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn classical_values() {
        assert!(rel(gamma_fn(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma_fn(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma_fn(c(6.0, 0.0)).unwrap(), c(120.0, 0.0)) < 1e-14);
        assert!(rel(gamma_fn(c(21.0, 0.0)).unwrap(), c(2.43290200817664e18, 0.0)) < 1e-14);
    }

    #[test]
    fn reference_values() {
        // high-precision reference evaluations
        let cases = [
            (c(0.5, 3.0), c(0.021445670552430646, 0.006865364837261678)),
            (c(-2.5, 0.0), c(-0.945_308_720_482_941_9, 0.0)),
            (c(10.0, 20.0), c(-0.133_713_977_828_472_03, 0.123_674_975_271_245_25)),
            (c(30.0, -40.0), c(1.874199767303780188e21, 1.5108445033328678686e21)),
            (c(-20.5, 1.5), c(7.7197666643591069243e-22, 5.3166992402133110809e-21)),
            (c(0.1, 49.0), c(-1.8868440807995173572e-34, 5.8692838469050665604e-35)),
        ];
        for (s, want) in cases {
            let got = gamma_fn(s).unwrap();
            assert!(rel(got, want) < 1e-12, "Γ({s}) = {got}, want {want}");
            let via_log = ln_gamma(s).unwrap().exp();
            assert!(rel(via_log, want) < 1e-12, "exp lnΓ({s}) = {via_log}");
        }
    }

    #[test]
    fn poles() {
        for n in 0..5 {
            assert!(matches!(gamma_fn(c(-(n as f64), 0.0)), Err(Error::Pole { .. })));
        }
        assert!(gamma_fn(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn recurrence() {
        for &s in &[c(0.3, 0.7), c(-4.2, 2.0), c(12.5, -30.0)] {
            let lhs = gamma_fn(s + 1.0).unwrap();
            let rhs = s * gamma_fn(s).unwrap();
            assert!(rel(lhs, rhs) < 1e-13);
        }
    }
}
