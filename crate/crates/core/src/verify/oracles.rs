//! Reference computations that share no code path with the library
//! routines they check: plain partial sums with explicit tail bounds,
//! quadrature, and exact rational sums.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A partial sum together with a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: Complex64,
    pub bound: f64,
}

fn power(x: f64, s: Complex64) -> Complex64 {
    (-s * x.ln()).exp()
}

/// `Σ_{n≥0} (n+a)^(-s)` for `Re s > 1`: `n_terms` terms, then the integral,
/// the half-term and the first Bernoulli correction. The bound is the next
/// Euler–Maclaurin remainder.
pub fn hurwitz_direct(s: Complex64, a: f64, n_terms: u64) -> Bounded {
    assert!(s.re > 1.0 && a > 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (0..n_terms).rev() {
        acc += power(n as f64 + a, s);
    }
    let x = n_terms as f64 + a;
    let p = power(x, s);
    let tail = p * x / (s - 1.0) + 0.5 * p + s * p / (12.0 * x);
    let sigma = s.re;
    let bound = 0.01 * (s * (s + 1.0) * (s + 2.0)).norm() / (sigma + 2.0) * x.powf(-sigma - 2.0);
    Bounded {
        value: acc + tail,
        bound,
    }
}

/// `Li_s(e^{2πia}) = Σ_{n≥1} e^{2πina} n^(-s)` for `Re s > 1`, summed over
/// `n < n_terms`. The tail bound uses summation by parts when `a ∉ ℤ`.
pub fn polylog_direct(s: Complex64, a: f64, n_terms: u64) -> Bounded {
    assert!(s.re > 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..n_terms).rev() {
        // reduce n·a mod 1 exactly enough before scaling by 2π
        let phase = 2.0 * PI * (n as f64 * a).rem_euclid(1.0);
        acc += Complex64::from_polar(1.0, phase) * power(n as f64, s);
    }
    let sigma = s.re;
    let nf = n_terms as f64;
    let lead = nf.powf(-sigma);
    let sine = (PI * a).sin().abs();
    let bound = if sine > 1e-12 {
        (lead + s.norm() * lead / sigma) / sine
    } else {
        lead + nf.powf(1.0 - sigma) / (sigma - 1.0)
    };
    Bounded { value: acc, bound }
}

/// The right side of the reflection formula
/// `η_Hurw(1-s, a) = -2i (2π)^(-s) sin(πs/2) Γ(s) (Li_s(e^{2πia}) - Li_s(e^{-2πia}))`
/// for real `s > 1`, with `Γ(s)` from [`gamma_stirling`] and both
/// polylogarithms from [`polylog_direct`].
pub fn reflection_rhs(s: f64, a: f64, n_terms: u64) -> Bounded {
    let sc = Complex64::new(s, 0.0);
    let plus = polylog_direct(sc, a, n_terms);
    let minus = polylog_direct(sc, -a, n_terms);
    let factor = Complex64::new(0.0, -2.0) * (2.0 * PI).powf(-s) * (PI * s / 2.0).sin() * gamma_stirling(s);
    Bounded {
        value: factor * (plus.value - minus.value),
        bound: factor.norm() * (plus.bound + minus.bound),
    }
}

/// `Γ(x)` for real `x > 0`: shift up past 20 by the recurrence, then the
/// Stirling series to order `x^-9`.
pub fn gamma_stirling(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut y = x;
    let mut prod = 1.0;
    while y < 20.0 {
        prod *= y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    let ln = (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series;
    ln.exp() / prod
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gauss_on(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Adaptive composite Gauss–Legendre: an interval is accepted when the rule
/// on it agrees with the sum over its halves to `tol`.
pub fn adaptive_gauss(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let rule = gauss_legendre(20);
    let mut total = 0.0;
    let mut stack = vec![(lo, hi, gauss_on(f, lo, hi, &rule), 0u32)];
    while let Some((a, b, whole, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = gauss_on(f, a, m, &rule);
        let right = gauss_on(f, m, b, &rule);
        if (left + right - whole).abs() <= tol || depth >= 40 {
            total += left + right;
        } else {
            stack.push((a, m, left, depth + 1));
            stack.push((m, b, right, depth + 1));
        }
    }
    total
}

/// `Im Li_{2l+2}(e^{2πia})` from
/// `(2l+1)!·Im Li_{2l+2}(e^{2πia}) = sin(2πa) ∫₀^∞ x^(2l+1) e^x / |e^x - e^{2πia}|² dx`,
/// integrated up to the first `X` with `e^{-X} X^{2l+1} < 1e-16`.
pub fn im_polylog_quadrature(l: u32, a: f64) -> f64 {
    let k = (2 * l + 1) as i32;
    let cos = (2.0 * PI * a).cos();
    let f = move |x: f64| {
        let e = (-x).exp();
        x.powi(k) * e / (1.0 - 2.0 * e * cos + e * e)
    };
    let mut upper = (k as f64).max(1.0);
    while (-upper).exp() * upper.powi(k) >= 1e-16 {
        upper += 1.0;
    }
    let integral = adaptive_gauss(&f, 0.0, upper, 1e-15);
    let fact: f64 = (1..=k).map(f64::from).product();
    (2.0 * PI * a).sin() * integral / fact
}

/// `B_n = Σ_{k=0}^n 1/(k+1) Σ_{j=0}^k (-1)^j C(k,j) j^n`, exactly.
pub fn bernoulli_double_sum(n: u32) -> BigRational {
    let mut total = BigRational::zero();
    for k in 0..=n {
        let mut inner = BigInt::zero();
        let mut binom = BigInt::one();
        for j in 0..=k {
            let term = &binom * BigInt::from(j).pow(n);
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        total += BigRational::new(inner, BigInt::from(k + 1));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(20);
        let exact = 2.0 / 39.0;
        let got = gauss_on(&|x: f64| x.powi(38), -1.0, 1.0, &rule);
        assert!((got - exact).abs() < 1e-15);
        assert!((rule.1.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn stirling_gamma() {
        assert!((gamma_stirling(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_stirling(6.0) - 120.0).abs() < 1e-12);
    }

    #[test]
    fn double_sum_small() {
        assert_eq!(bernoulli_double_sum(0), BigRational::one());
        assert_eq!(
            bernoulli_double_sum(1),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(
            bernoulli_double_sum(12),
            BigRational::new(BigInt::from(-691), BigInt::from(2730))
        );
    }

    #[test]
    fn catalan_by_quadrature() {
        let catalan = 0.915_965_594_177_219_015;
        assert!((im_polylog_quadrature(0, 0.25) - catalan).abs() < 1e-12);
    }
}
