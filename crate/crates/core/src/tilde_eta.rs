//! The two-sided series
//!
//! ```text
//! η̃(s,a) = Σ_{n≥0} sign(a+λ_n)|a+λ_n|^(-s) + Σ_{n≥0} sign(a-λ_n)|a-λ_n|^(-s),
//! λ_n = √(8(2n+1)² + 9)/4,
//! ```
//!
//! its meromorphic continuation, residues and special values.
//!
//! The continuation splits off the first `m` levels and expands the rest in
//! the binomial series
//!
//! ```text
//! ζ_m(s,a) - ζ_m(s,-a) = Σ_{l odd} 2·C(-s,l)·a^l·ζ_m(s+l),   ζ_m(t) = Σ_{n≥m} λ_n^(-t),
//! ```
//!
//! with `ζ_m` continued through Hurwitz zeta values at half-integer shifts.

use num_complex::Complex64;

use crate::error::{check_finite, check_finite_real, Error, Result};
use crate::specfun::{
    as_integer, as_nonpositive_integer, bernoulli_poly, em_shift, hurwitz_em, pow_neg, BERNOULLI_POLY_MAX,
};

/// `λ_n = √(8(2n+1)² + 9)/4`.
pub fn lambda_n(n: u64) -> f64 {
    let k = (2 * n + 1) as f64;
    (8.0 * k * k + 9.0).sqrt() / 4.0
}

/// Number of `n` with `λ_n < x`.
pub fn count_below(x: f64) -> u64 {
    let mut n = 0;
    while lambda_n(n) < x {
        n += 1;
    }
    n
}

fn check_shift(a: f64, what: &'static str) -> Result<()> {
    check_finite_real(a, what)?;
    let n = count_below(a.abs());
    if lambda_n(n) == a.abs() {
        return Err(Error::domain(format!(
            "{what}: a = {a} coincides with ±λ_{n}"
        )));
    }
    Ok(())
}

/// Partial sum of `η̃(s,a)` with an integral-comparison estimate of the tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectSum {
    /// Partial sum over `n < N` plus the tail estimate `-√2·a·(√2 N)^(-s)`.
    pub value: Complex64,
    /// Bound on `|η̃(s,a) - value|`.
    pub tail_bound: f64,
}

/// Sum both series of `η̃(s,a)` over `n < n_terms`, for `Re s > 1`.
pub fn tilde_eta_direct(s: Complex64, a: f64, n_terms: u64) -> Result<DirectSum> {
    check_finite(s, "tilde_eta_direct")?;
    check_shift(a, "tilde_eta_direct")?;
    if s.re <= 1.0 {
        return Err(Error::domain(format!(
            "tilde_eta_direct: the series diverges for Re s = {} ≤ 1",
            s.re
        )));
    }
    if lambda_n(n_terms) <= a.abs() + 1.0 {
        return Err(Error::domain(format!(
            "tilde_eta_direct: {n_terms} terms do not reach past |a| = {}",
            a.abs()
        )));
    }
    let signed = |x: f64| -> Complex64 {
        let p = pow_neg(x.abs(), s);
        if x > 0.0 {
            p
        } else {
            -p
        }
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (0..n_terms).rev() {
        let l = lambda_n(n);
        acc += signed(a + l) + signed(a - l);
    }
    let sigma = s.re;
    let nf = n_terms as f64;
    let estimate = -(2f64.sqrt() * a) * pow_neg(2f64.sqrt() * nf, s);
    // |(λ+a)^(-s) - (λ-a)^(-s)| ≤ 2|a||s|(λ-|a|)^(-σ-1), summed by comparison
    let lead = (lambda_n(n_terms) - a.abs()).powf(-sigma - 1.0);
    let integral = 0.5 * 2f64.sqrt() * ((2.0 * nf + 1.0) / 2f64.sqrt() - a.abs()).powf(-sigma) / sigma;
    let tail = 2.0 * a.abs() * s.norm() * (lead + integral);
    Ok(DirectSum {
        value: acc + estimate,
        tail_bound: tail + estimate.norm(),
    })
}

/// Value of `η̃` at a point, or its residue when the point is a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeEtaPoint {
    pub s: Complex64,
    pub a: f64,
    /// `None` exactly at a pole.
    pub value: Option<Complex64>,
    pub is_pole: bool,
    /// Residue at `s`; zero unless `is_pole`.
    pub residue: f64,
}

/// Default split: smallest `m` with `λ_m > |a| + 1/2`.
pub fn default_split(a: f64) -> u64 {
    count_below(a.abs() + 0.5)
}

/// Meromorphic continuation of `η̃(s,a)` to all `s`.
///
/// Poles are simple and sit at `s = -2, -4, …`; there the returned point has
/// `is_pole` set, no value, and the residue.
pub fn tilde_eta(s: Complex64, a: f64) -> Result<TildeEtaPoint> {
    tilde_eta_split(s, a, default_split(a))
}

/// [`tilde_eta`] with an explicit split index `m`, which needs `λ_m > |a|`.
/// The result does not depend on `m` beyond rounding.
pub fn tilde_eta_split(s: Complex64, a: f64, m: u64) -> Result<TildeEtaPoint> {
    check_finite(s, "tilde_eta")?;
    check_shift(a, "tilde_eta")?;
    let lam_m = lambda_n(m);
    if lam_m <= a.abs() {
        return Err(Error::domain(format!(
            "tilde_eta: split m = {m} needs λ_m = {lam_m} > |a| = {}",
            a.abs()
        )));
    }
    let mut point = TildeEtaPoint {
        s,
        a,
        value: None,
        is_pole: false,
        residue: 0.0,
    };
    if a == 0.0 {
        point.value = Some(Complex64::new(0.0, 0.0));
        return Ok(point);
    }

    let mut head = Complex64::new(0.0, 0.0);
    for n in 0..m {
        let l = lambda_n(n);
        for x in [a + l, a - l] {
            let p = pow_neg(x.abs(), s);
            head += if x > 0.0 { p } else { -p };
        }
    }

    match as_nonpositive_integer(s) {
        Some(k) => {
            let (value, residue) = at_nonpositive_integer(k, a, m)?;
            if k > 0 && k % 2 == 0 {
                point.is_pole = true;
                point.residue = residue;
            } else {
                point.value = Some(head + value);
            }
        }
        None => point.value = Some(head + odd_binomial_series(s, a, m)?),
    }
    Ok(point)
}

/// `Σ_{l odd} 2·C(-s,l)·a^l·ζ_m(s+l)` for `s` off the nonpositive integers.
///
/// Coefficients are carried in the scaled form `2·C(-s,l)·(a/λ_m)^l·λ_m^(-s)`
/// and paired with `λ_m^t ζ_m(t)` so that neither factor overflows.
fn odd_binomial_series(s: Complex64, a: f64, m: u64) -> Result<Complex64> {
    let lam_m = lambda_n(m);
    let q = a / lam_m;
    let min_terms = 2 * s.re.abs().ceil() as u64 + 6;
    const MAX_TERMS: u64 = 200_000;

    let mut coeff = pow_neg(lam_m, s) * 2.0; // 2·C(-s,0)·λ_m^(-s)
    let mut acc = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for l in 0..MAX_TERMS {
        // advance to C(-s,l+1)
        let next = coeff * (-s - l as f64) * (q / (l + 1) as f64);
        coeff = next;
        let l = l + 1;
        if l % 2 == 0 {
            continue;
        }
        let term = coeff * scaled_zeta_m(s + l as f64, m)?;
        acc += term;
        if l >= min_terms {
            if term.norm() <= 1e-18 * acc.norm() || coeff == Complex64::new(0.0, 0.0) {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(acc);
                }
            } else {
                quiet = 0;
            }
        }
    }
    Err(Error::Inconsistency(format!(
        "tilde_eta: binomial series at s = {s}, a = {a} did not converge in {MAX_TERMS} terms"
    )))
}

/// Value and residue contributions of the binomial part at `s = -k`.
///
/// The series terminates after `l = k`. For even `k` the term `l = k+1`
/// pairs a zero of `C(-s,l)` with the pole of `ζ_m` at 1 and contributes
/// `-√2·a^(k+1)/(k+1)`; for even `k ≥ 2` the terms with `ζ_m` at a negative
/// odd integer are genuine poles and only their residues are collected.
fn at_nonpositive_integer(k: u64, a: f64, m: u64) -> Result<(Complex64, f64)> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut residue = 0.0;
    let mut binom = 1.0; // C(k,l)
    let mut apow = 1.0; // a^l
    for l in 1..=k {
        binom *= (k - l + 1) as f64 / l as f64;
        apow *= a;
        if l % 2 == 0 {
            continue;
        }
        let t = l as i64 - k as i64;
        if k % 2 == 0 {
            // t = 1 - 2j
            let j = ((1 - t) / 2) as u64;
            residue += 2.0 * binom * apow * zeta_m_residue(j);
        } else {
            let t = Complex64::new(t as f64, 0.0);
            value += zeta_m(t, m)? * (2.0 * binom * apow);
        }
    }
    if k % 2 == 0 {
        value -= Complex64::new(2f64.sqrt() * a.powi(k as i32 + 1) / (k + 1) as f64, 0.0);
    }
    Ok((value, residue))
}

/// `res_{t=1-2j} ζ_m(t) = C(2j,j)(9/64)^j / √2`, independent of `m`.
fn zeta_m_residue(j: u64) -> f64 {
    let mut c = 1.0;
    for i in 0..j {
        c *= (2 * j - i) as f64 / (i + 1) as f64;
    }
    c * (9.0f64 / 64.0).powi(j as i32) / 2f64.sqrt()
}

/// Split from which `ζ_m` is continued through Hurwitz zeta at `K + 1/2`;
/// the expansion in `(9/8)(2n+1)^(-2)` converges fast for `n ≥ K`.
fn hurwitz_split(m: u64) -> u64 {
    m.max(4)
}

/// Abscissa from which `ζ_m(t)` is summed directly.
const DIRECT_ABSCISSA: f64 = 30.0;

/// `λ_m^t ζ_m(t)`.
fn scaled_zeta_m(t: Complex64, m: u64) -> Result<Complex64> {
    let lam_m = lambda_n(m);
    if t.re >= DIRECT_ABSCISSA {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut n = m;
        loop {
            let r = lam_m / lambda_n(n);
            let term = pow_neg(r, -t);
            acc += term;
            if term.norm() < 1e-19 {
                return Ok(acc);
            }
            n += 1;
        }
    }
    Ok(zeta_m(t, m)? * pow_neg(lam_m, -t))
}

/// Continuation of `ζ_m(t) = Σ_{n≥m} λ_n^(-t)`.
///
/// With `λ_n^(-t) = 2^(t/2)(2n+1)^(-t)(1 + (9/8)(2n+1)^(-2))^(-t/2)`,
///
/// ```text
/// Σ_{n≥K} λ_n^(-t) = 2^(-t/2) Σ_j C(-t/2,j) (9/32)^j ζ(t+2j, K+1/2).
/// ```
pub(crate) fn zeta_m(t: Complex64, m: u64) -> Result<Complex64> {
    let big_k = hurwitz_split(m);
    // at even integers λ_n^(-t) is a power of the exactly representable λ_n²
    let even = as_integer(t).filter(|k| k % 2 == 0 && k.abs() <= 64);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in m..big_k {
        acc += match even {
            Some(k) => {
                let k2 = (2 * n + 1) as f64;
                Complex64::new(((8.0 * k2 * k2 + 9.0) / 16.0).powi((-k / 2) as i32), 0.0)
            }
            None => pow_neg(lambda_n(n), t),
        };
    }
    let shift = big_k as f64 + 0.5;
    let half = -t * 0.5;
    let mut binom = Complex64::new(1.0, 0.0); // C(-t/2, j)
    let mut scale = 1.0; // (9/32)^j
    let mut block = Complex64::new(0.0, 0.0);
    for j in 0..400u32 {
        let u = t + 2.0 * j as f64;
        let term = binom * scale * hurwitz_block(u, shift)?;
        block += term;
        if !block.re.is_finite() || !block.im.is_finite() {
            return Err(Error::Inconsistency(format!(
                "tilde_eta: ζ_m({t}) hit a pole of the Hurwitz building block"
            )));
        }
        if binom == Complex64::new(0.0, 0.0) || (j > 2 && term.norm() < 1e-18 * block.norm()) {
            return Ok(acc + block * pow_neg(2.0, t * 0.5));
        }
        binom *= (half - j as f64) / (j + 1) as f64;
        scale *= 9.0 / 32.0;
    }
    Err(Error::Inconsistency(format!(
        "tilde_eta: expansion of ζ_m({t}) did not converge"
    )))
}

/// `ζ_Hurw(u, x)`, exact through `-B_{n+1}(x)/(n+1)` at `u = -n`.
fn hurwitz_block(u: Complex64, x: f64) -> Result<Complex64> {
    match as_nonpositive_integer(u) {
        Some(n) if n < BERNOULLI_POLY_MAX as u64 => {
            let b = bernoulli_poly(n as u32 + 1, x)?;
            Ok(Complex64::new(-b / (n + 1) as f64, 0.0))
        }
        _ => Ok(hurwitz_em(u, x, em_shift(u))),
    }
}

/// `res_{s=-2l} η̃(s,a) = √2 Σ_{j<l} C(2l,2j+1) C(2l-2j,l-j) (9/64)^(l-j) a^(2j+1)`.
pub fn tilde_eta_residue(l: u32, a: f64) -> Result<f64> {
    check_finite_real(a, "tilde_eta_residue")?;
    if l == 0 {
        return Err(Error::domain("tilde_eta_residue: l must be positive"));
    }
    let l = l as u64;
    let mut acc = 0.0;
    for j in 0..l {
        let c1 = binomial(2 * l, 2 * j + 1);
        let c2 = binomial(2 * l - 2 * j, l - j);
        acc += c1 * c2 * (9.0f64 / 64.0).powi((l - j) as i32) * a.powi(2 * j as i32 + 1);
    }
    Ok(2f64.sqrt() * acc)
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// `η̃(0,a) = 2·sign(a)·#{n : λ_n < |a|} - √2·a`.
pub fn tilde_eta_at_zero(a: f64) -> Result<f64> {
    check_shift(a, "tilde_eta_at_zero")?;
    let count = count_below(a.abs()) as f64;
    let sign = if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        0.0
    };
    Ok(2.0 * sign * count - 2f64.sqrt() * a)
}

/// Residue at `s = -2l` estimated from values near the pole: `ε·η̃(-2l+ε, a)`
/// at `ε = 1e-3` and `1e-4`, Richardson-extrapolated to `ε = 0`.
pub fn residue_by_limit(l: u32, a: f64) -> Result<f64> {
    let s0 = -2.0 * l as f64;
    let g = |eps: f64| -> Result<f64> {
        let p = tilde_eta(Complex64::new(s0 + eps, 0.0), a)?;
        let v = p.value.ok_or_else(|| {
            Error::Inconsistency("tilde_eta: unexpected pole off the pole set".into())
        })?;
        Ok(eps * v.re)
    };
    let (e1, e2) = (1e-3, 1e-4);
    let (g1, g2) = (g(e1)?, g(e2)?);
    Ok((e1 * g2 - e2 * g1) / (e1 - e2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn value(s: Complex64, a: f64) -> Complex64 {
        tilde_eta(s, a).unwrap().value.unwrap()
    }

    #[test]
    fn lambda_values() {
        assert!((lambda_n(0) - 17f64.sqrt() / 4.0).abs() < 1e-16);
        assert_eq!(lambda_n(1), 2.25);
        assert!((0..100).all(|n| lambda_n(n + 1) > lambda_n(n)));
    }

    #[test]
    fn against_frozen_direct_sums() {
        let cases = [
            (c(2.0, 0.0), 0.3, c(-1.4654075017928284, 0.0)),
            (c(2.0, 0.0), 1.25, c(19.843322121605615, 0.0)),
            (c(2.0, 0.0), 2.7, c(3.9192641337514420, 0.0)),
            (c(3.0, 0.0), 0.3, c(-2.2285773560259829, 0.0)),
            (c(3.0, 0.0), 1.25, c(93.931349673013762, 0.0)),
            (c(3.0, 0.0), 2.7, c(9.7998858800494439, 0.0)),
            (c(4.0, 2.0), 0.3, c(-2.5904567923807717, -2.1817987242886003)),
            (c(4.0, 2.0), 1.25, c(-431.52032880332005, 45.916059170712083)),
            (c(4.0, 2.0), 2.7, c(-1.9777585182085484, 24.047887567272406)),
            (c(1.5, 0.0), 0.3, c(-1.1547643647429569, 0.0)),
            (c(1.5, 0.0), 1.25, c(8.797305401057525, 0.0)),
            (c(1.5, 0.0), 2.7, c(2.3618957973234016, 0.0)),
        ];
        for (s, a, want) in cases {
            let got = value(s, a);
            assert!((got - want).norm() < 1e-11, "η̃({s}, {a}) = {got}, want {want}");
        }
    }

    #[test]
    fn special_values() {
        let z = value(c(0.0, 0.0), 1.25);
        assert!((z.re - (2.0 - 5.0 * 2f64.sqrt() / 4.0)).abs() < 1e-13);
        for &a in &[0.5, 1.25, 2.5] {
            let z = value(c(0.0, 0.0), a).re;
            assert!((z - tilde_eta_at_zero(a).unwrap()).abs() < 1e-12);
        }
        for l in 0..3 {
            for &a in &[0.3, 1.25] {
                let v = value(c(-(2 * l + 1) as f64, 0.0), a);
                assert!(v.norm() < 1e-10, "η̃(-{}, {a}) = {v}", 2 * l + 1);
            }
        }
    }

    #[test]
    fn poles_carry_residues() {
        let p = tilde_eta(c(-2.0, 0.0), 1.25).unwrap();
        assert!(p.is_pole && p.value.is_none());
        assert!((p.residue - 45.0 * 2f64.sqrt() / 64.0).abs() < 1e-14);
        for l in 1..5 {
            let p = tilde_eta(c(-2.0 * l as f64, 0.0), 0.9).unwrap();
            assert!((p.residue - tilde_eta_residue(l, 0.9).unwrap()).abs() < 1e-12);
        }
        let lim = residue_by_limit(2, 1.25).unwrap();
        let want = tilde_eta_residue(2, 1.25).unwrap();
        assert!((lim - want).abs() < 1e-6 * want);
    }

    #[test]
    fn residue_closed_forms() {
        let r1 = tilde_eta_residue(1, 1.25).unwrap();
        assert!((r1 - 0.994_368_911_043_582_46).abs() < 1e-15);
        assert_eq!(tilde_eta_residue(1, 0.0).unwrap(), 0.0);
        let r2 = tilde_eta_residue(2, 1.0).unwrap();
        let want = 2f64.sqrt() * (4.0 * 6.0 * (9.0f64 / 64.0).powi(2) + 4.0 * 2.0 * 9.0 / 64.0);
        assert!((r2 - want).abs() < 1e-15);
        assert!((r2 - 2.262_189_272_624_150_1).abs() < 1e-15);
    }

    #[test]
    fn split_independence() {
        for &(s, a) in &[(c(0.7, 1.0), 1.25), (c(-3.5, 0.0), 2.7), (c(2.0, 0.0), 0.3)] {
            let m = default_split(a);
            let v0 = tilde_eta_split(s, a, m).unwrap().value.unwrap();
            let v3 = tilde_eta_split(s, a, m + 3).unwrap().value.unwrap();
            assert!((v0 - v3).norm() < 1e-10 * v0.norm().max(1.0), "{v0} vs {v3}");
        }
    }

    #[test]
    fn singular_shift_rejected() {
        assert!(matches!(tilde_eta(c(2.0, 0.0), 2.25), Err(Error::Domain(_))));
        assert!(matches!(tilde_eta_at_zero(-2.25), Err(Error::Domain(_))));
        assert!(tilde_eta_direct(c(1.0, 0.0), 0.3, 100).is_err());
    }

    #[test]
    fn direct_sum_is_odd_and_bounded() {
        let d = tilde_eta_direct(c(3.0, 0.0), 0.0, 1000).unwrap();
        assert_eq!(d.value, c(0.0, 0.0));
        let p = tilde_eta_direct(c(2.5, 0.5), 0.8, 20_000).unwrap();
        let q = tilde_eta_direct(c(2.5, 0.5), -0.8, 20_000).unwrap();
        assert!((p.value + q.value).norm() < 1e-13);
        let exact = value(c(2.5, 0.5), 0.8);
        assert!((p.value - exact).norm() <= p.tail_bound);
    }
}
