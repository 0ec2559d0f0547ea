use std::f64::consts::PI;

use num_complex::Complex64;

use super::{as_integer, riemann_zeta};
use crate::error::{check_finite, check_finite_real, Error, Result};

/// Terms of the logarithmic expansion; the ratio is at most 1/2.
const LOG_SERIES_TERMS: usize = 64;

/// Orders from here on are summed directly.
const DIRECT_ORDER: u32 = 14;

/// Reduce `2πa` to the interval (-π, π].
fn reduced_angle(a: f64) -> f64 {
    let f = a - a.round();
    let f = if f == -0.5 { 0.5 } else { f };
    2.0 * PI * f
}

/// `Li_s(e^{2πia})` on the unit circle.
///
/// Uses the expansion of `Li_s(e^μ)` in powers of `μ = iθ`, `|θ| ≤ π`,
/// with the `ln(-μ)` term at integer `s` and the `Γ(1-s)(-μ)^(s-1)` term
/// otherwise. For integer `a` the value is `ζ(s)`, which needs `Re s > 1`.
pub fn polylog_unit_circle(s: Complex64, a: f64) -> Result<Complex64> {
    check_finite(s, "polylog_unit_circle")?;
    check_finite_real(a, "polylog_unit_circle")?;
    let theta = reduced_angle(a);
    if theta == 0.0 {
        if s.re <= 1.0 {
            return Err(Error::domain(format!(
                "polylog_unit_circle: Li_s(1) diverges for Re s = {} ≤ 1",
                s.re
            )));
        }
        return riemann_zeta(s);
    }
    let mu = Complex64::new(0.0, theta);
    // principal log of -μ = -iθ
    let log_neg_mu = Complex64::new(theta.abs().ln(), -theta.signum() * PI / 2.0);
    let integer = as_integer(s).filter(|&n| n >= 1);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0); // μ^k / k!
    for k in 0..LOG_SERIES_TERMS {
        match integer {
            Some(n) if k as i64 == n - 1 => {
                let harmonic: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
                acc += pw * (Complex64::new(harmonic, 0.0) - log_neg_mu);
            }
            _ => acc += pw * riemann_zeta(s - k as f64)?,
        }
        pw *= mu / (k + 1) as f64;
    }
    if integer.is_none() {
        acc += super::gamma_fn(1.0 - s)? * ((s - 1.0) * log_neg_mu).exp();
    }
    Ok(acc)
}

/// `Im Li_{2l+2}(e^{2πia}) = Σ_{n≥1} sin(2πna)/n^(2l+2)`.
pub fn im_polylog_even(l: u32, a: f64) -> Result<f64> {
    check_finite_real(a, "im_polylog_even")?;
    let order = 2 * l + 2;
    let theta = reduced_angle(a);
    if theta == 0.0 || theta == PI {
        return Ok(0.0);
    }
    if order >= DIRECT_ORDER {
        // n^(1-order)/(order-1) < 1e-18 well before n = 30
        let mut acc = 0.0;
        for n in (1..=30u32).rev() {
            acc += (n as f64 * theta).sin() / (n as f64).powi(order as i32);
        }
        return Ok(acc);
    }
    Ok(polylog_unit_circle(Complex64::new(order as f64, 0.0), a)?.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: f64 = 0.915_965_594_177_219_015;
    const BETA4: f64 = 0.988_944_551_741_105_336;

    #[test]
    fn dirichlet_beta_values() {
        assert!((im_polylog_even(0, 0.25).unwrap() - CATALAN).abs() < 1e-15);
        assert!((im_polylog_even(1, 0.25).unwrap() - BETA4).abs() < 1e-15);
        assert!((im_polylog_even(1, 0.75).unwrap() + BETA4).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0, 1.0 / 3.0, 0.676_627_737_606_435_75),
            (2, 0.1, 0.604_069_030_574_470_79),
            (0, 0.9, -0.923_755_168_100_535_31),
            (4, 0.37, 0.728_004_837_750_423_47),
            (2, 0.3, 0.941_283_652_492_805_22),
            (3, 0.1, 0.591_653_662_626_787_54),
            (5, 0.37, 0.728_726_172_545_795_77),
            (7, 0.05, 0.309_025_982_288_407_08),
        ];
        for (l, a, want) in cases {
            let got = im_polylog_even(l, a).unwrap();
            assert!((got - want).abs() < 1e-14, "l={l} a={a}: {got} vs {want}");
        }
    }

    #[test]
    fn vanishes_at_half_and_integers() {
        for l in 0..6 {
            assert_eq!(im_polylog_even(l, 0.5).unwrap(), 0.0);
            assert_eq!(im_polylog_even(l, 3.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn periodic_and_odd() {
        for &a in &[0.13, 0.41, 0.77] {
            for l in 0..4 {
                let v = im_polylog_even(l, a).unwrap();
                assert!((im_polylog_even(l, a + 2.0).unwrap() - v).abs() < 1e-13);
                assert!((im_polylog_even(l, -a).unwrap() + v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn non_integer_order() {
        let cases = [
            (2.5, 0.2, Complex64::new(0.137_826_249_643_782_2, 0.997_750_138_386_989_17)),
            (3.5, 0.7, Complex64::new(-0.363_414_721_105_097_95, -0.892_894_247_957_569_03)),
        ];
        for (s, a, want) in cases {
            let got = polylog_unit_circle(Complex64::new(s, 0.0), a).unwrap();
            assert!((got - want).norm() < 1e-13, "Li_{s}: {got} vs {want}");
        }
    }

    #[test]
    fn at_one_is_zeta() {
        let v = polylog_unit_circle(Complex64::new(2.0, 0.0), 0.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-15);
        assert!(polylog_unit_circle(Complex64::new(1.0, 0.0), 0.0).is_err());
    }
}
