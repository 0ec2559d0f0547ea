//! Eta function of `S` on a (2,3,5) nilmanifold twisted by a character.
//!
//! The lattice enters only through the invariants `r`, `c` and `g(γ,γ)`.
//! If the character is nontrivial on the center, or trivial on the
//! commutator, the eta function vanishes identically. Otherwise
//!
//! ```text
//! η_S(s) = r · (2π/√g(γ,γ))^(-s) · η_Hurw(s-1, c/r) · η̃(s, 5/4).
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_finite, check_finite_real, Error, Result};
use crate::specfun::{eta_hurw, eta_hurw_deriv_neg_odd, im_polylog_even, pow_neg};
use crate::tilde_eta::{binomial, lambda_n, tilde_eta, tilde_eta_residue};

/// Shift at which `η̃` enters the product formula.
pub const SPECTRAL_SHIFT: f64 = 1.25;

/// Case split on the character: two vanishing cases and the generic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// The character is nontrivial on the center: `η_S ≡ 0`.
    CenterNontrivial,
    /// The character is trivial on the commutator subgroup: `η_S ≡ 0`.
    CommutatorTrivial,
    /// The product formula applies; `c ≢ 0 (mod r)`.
    Generic,
}

/// Determine the case from the two triviality flags.
pub fn classify_case(center_trivial: bool, commutator_trivial: bool, c: i64, r: u64) -> Result<CaseTag> {
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    if commutator_trivial && !center_trivial {
        return Err(Error::domain(
            "a character trivial on the commutator is trivial on the center",
        ));
    }
    if !center_trivial {
        return Ok(CaseTag::CenterNontrivial);
    }
    if commutator_trivial {
        return Ok(CaseTag::CommutatorTrivial);
    }
    if c.rem_euclid(r as i64) == 0 {
        return Err(Error::domain(format!(
            "c = {c} is divisible by r = {r}, so the character is trivial on the commutator"
        )));
    }
    Ok(CaseTag::Generic)
}

/// Lattice and character invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeCharacterData {
    /// Order of the finite cyclic group.
    pub r: u64,
    /// Character exponent, `χ(γ) = e^{2πic/r}`.
    pub c: i64,
    /// `g(γ,γ) > 0`.
    pub gamma_norm: f64,
    pub case_tag: CaseTag,
}

impl LatticeCharacterData {
    pub fn new(r: u64, c: i64, gamma_norm: f64, case_tag: CaseTag) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("r must be positive"));
        }
        check_finite_real(gamma_norm, "LatticeCharacterData")?;
        if gamma_norm <= 0.0 {
            return Err(Error::domain(format!(
                "gamma norm {gamma_norm} must be positive"
            )));
        }
        let divisible = c.rem_euclid(r as i64) == 0;
        match case_tag {
            CaseTag::Generic if divisible => {
                return Err(Error::domain(format!(
                    "generic case needs c ≢ 0 mod r, got c = {c}, r = {r}"
                )))
            }
            CaseTag::CommutatorTrivial if !divisible => {
                return Err(Error::domain(format!(
                    "commutator-trivial case needs c ≡ 0 mod r, got c = {c}, r = {r}"
                )))
            }
            _ => {}
        }
        Ok(LatticeCharacterData {
            r,
            c,
            gamma_norm,
            case_tag,
        })
    }

    /// Data for the product-formula case.
    pub fn generic(r: u64, c: i64, gamma_norm: f64) -> Result<Self> {
        LatticeCharacterData::new(r, c, gamma_norm, CaseTag::Generic)
    }

    /// `c mod r ∈ [0, r)`.
    fn c_reduced(&self) -> i64 {
        self.c.rem_euclid(self.r as i64)
    }

    /// `c/r` reduced into `[0, 1)`.
    pub fn shift(&self) -> f64 {
        self.c_reduced() as f64 / self.r as f64
    }

    fn require_generic(&self, what: &str) -> Result<()> {
        if self.case_tag != CaseTag::Generic {
            return Err(Error::domain(format!(
                "{what} needs the generic case, got {:?}",
                self.case_tag
            )));
        }
        Ok(())
    }
}

/// Multiplicity `|c + r·k|` of the Schrödinger representation with
/// `ℏ = (c + r·k)/r`.
pub fn multiplicity(k: i64, d: &LatticeCharacterData) -> Result<u64> {
    if d.case_tag == CaseTag::CenterNontrivial {
        return Err(Error::domain(
            "no Schrödinger representations occur when the character is nontrivial on the center",
        ));
    }
    Ok((d.c as i128 + d.r as i128 * k as i128).unsigned_abs() as u64)
}

/// An eta value at `s`, with pole information and, for truncated sums, a
/// bound on the omitted part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaEvaluation {
    pub s: Complex64,
    pub value: Complex64,
    pub is_pole: bool,
    /// Residue at `s`; zero unless `is_pole`.
    pub residue: f64,
    pub tail_bound: Option<f64>,
}

impl EtaEvaluation {
    fn regular(s: Complex64, value: Complex64) -> Self {
        EtaEvaluation {
            s,
            value,
            is_pole: false,
            residue: 0.0,
            tail_bound: None,
        }
    }
}

/// `η_S(s)` through the product formula.
///
/// At `s = -2l` the factor `η̃(s, 5/4)` has a pole and `η_Hurw(s-1, c/r)` a
/// zero. The point is flagged, the residue of the product (zero) reported,
/// and the finite value taken from [`eta_nil_neg_even`].
pub fn eta_nil(s: Complex64, d: &LatticeCharacterData) -> Result<EtaEvaluation> {
    check_finite(s, "eta_nil")?;
    if d.case_tag != CaseTag::Generic {
        return Ok(EtaEvaluation::regular(s, Complex64::new(0.0, 0.0)));
    }
    let a = d.shift();
    let base = 2.0 * PI / d.gamma_norm.sqrt();
    let hurw = eta_hurw(s - 1.0, a)?;
    let tilde = tilde_eta(s, SPECTRAL_SHIFT)?;
    let prefactor = pow_neg(base, s) * d.r as f64;
    if tilde.is_pole {
        let l = (-s.re / 2.0).round() as u32;
        let residue = (prefactor * hurw * tilde.residue).re;
        return Ok(EtaEvaluation {
            s,
            value: Complex64::new(eta_nil_neg_even(l, d)?, 0.0),
            is_pole: true,
            residue,
            tail_bound: None,
        });
    }
    let value = tilde.value.expect("regular point carries a value");
    Ok(EtaEvaluation::regular(s, prefactor * hurw * value))
}

/// `η_S(-2l)` in closed form,
///
/// ```text
/// (-1)^l √2 r / (2π g(γ,γ)^l) · (2l+1)! · Im Li_{2l+2}(e^{2πic/r})
///     · Σ_{j<l} C(2l,2j+1) C(2l-2j,l-j) (9/64)^(l-j) (5/4)^(2j+1),
/// ```
///
/// checked against `r (2π/√g(γ,γ))^(2l) · res_{s=-2l} η̃(s,5/4) · η'_Hurw(-2l-1, c/r)`.
/// A relative disagreement above `1e-9` is reported as an inconsistency.
pub fn eta_nil_neg_even(l: u32, d: &LatticeCharacterData) -> Result<f64> {
    let (closed, product) = eta_nil_neg_even_routes(l, d)?;
    let scale = closed.abs().max(product.abs());
    if (closed - product).abs() > ROUTE_TOLERANCE * scale {
        return Err(Error::Inconsistency(format!(
            "η_S(-{}) routes disagree: closed form {closed:e}, residue·derivative {product:e}",
            2 * l
        )));
    }
    Ok(closed)
}

/// Relative tolerance between the two routes of [`eta_nil_neg_even`].
pub const ROUTE_TOLERANCE: f64 = 1e-9;

/// Both routes to `η_S(-2l)`: the closed form and the residue·derivative
/// product, unchecked.
pub fn eta_nil_neg_even_routes(l: u32, d: &LatticeCharacterData) -> Result<(f64, f64)> {
    d.require_generic("eta_nil_neg_even")?;
    if l == 0 {
        return Err(Error::domain("eta_nil_neg_even: l must be positive"));
    }
    let a = d.shift();
    let r = d.r as f64;
    let l64 = l as u64;

    let mut fact = 1.0;
    for j in 2..=(2 * l64 + 1) {
        fact *= j as f64;
    }
    let mut sum = 0.0;
    for j in 0..l64 {
        sum += binomial(2 * l64, 2 * j + 1)
            * binomial(2 * l64 - 2 * j, l64 - j)
            * (9.0f64 / 64.0).powi((l64 - j) as i32)
            * SPECTRAL_SHIFT.powi(2 * j as i32 + 1);
    }
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    let closed = sign * 2f64.sqrt() * r / (2.0 * PI * d.gamma_norm.powi(l as i32))
        * fact
        * im_polylog_even(l, a)?
        * sum;

    let base = 2.0 * PI / d.gamma_norm.sqrt();
    let product = r
        * base.powi(2 * l as i32)
        * tilde_eta_residue(l, SPECTRAL_SHIFT)?
        * eta_hurw_deriv_neg_odd(l, a)?;

    Ok((closed, product))
}

/// `(η_S(-2l+ε) + η_S(-2l-ε))/2`, which tends to `η_S(-2l)` with error
/// `O(ε²)`.
pub fn eta_nil_symmetric_limit(l: u32, d: &LatticeCharacterData, eps: f64) -> Result<f64> {
    let s0 = -2.0 * l as f64;
    let up = eta_nil(Complex64::new(s0 + eps, 0.0), d)?;
    let down = eta_nil(Complex64::new(s0 - eps, 0.0), d)?;
    Ok(0.5 * (up.value.re + down.value.re))
}

/// Values of `η_S` at the points where it is known to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialValuesReport {
    /// `(s, η_S(s))` for `s = 0, -1, -3, -5`.
    pub values: Vec<(f64, Complex64)>,
    /// Largest modulus among the values.
    pub max_deviation: f64,
}

/// Evaluate `η_S` at `0, -1, -3, -5`, where it vanishes.
pub fn eta_nil_special(d: &LatticeCharacterData) -> Result<SpecialValuesReport> {
    let mut values = Vec::new();
    for s in [0.0, -1.0, -3.0, -5.0] {
        values.push((s, eta_nil(Complex64::new(s, 0.0), d)?.value));
    }
    let max_deviation = values.iter().fold(0.0f64, |m, (_, v)| m.max(v.norm()));
    Ok(SpecialValuesReport {
        values,
        max_deviation,
    })
}

/// `η_S(s)` as the explicit double sum over Schrödinger representations
/// `|k| ≤ K` (multiplicity `|c+rk|`, `ℏ = (c+rk)/r`) and their eigenvalues
/// `(2πℏ/√g(γ,γ))·(5/4 ± λ_n)`, `n < n_max`. Needs `Re s > 5`.
///
/// The reported tail bound covers both omitted ranges by integral comparison.
pub fn eta_direct_sum(s: Complex64, d: &LatticeCharacterData, k_max: u64, n_max: u64) -> Result<EtaEvaluation> {
    check_finite(s, "eta_direct_sum")?;
    if s.re <= 5.0 {
        return Err(Error::domain(format!(
            "eta_direct_sum: the double sum diverges for Re s = {} ≤ 5",
            s.re
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    if d.case_tag == CaseTag::CenterNontrivial {
        return Ok(EtaEvaluation {
            tail_bound: Some(0.0),
            ..EtaEvaluation::regular(s, zero)
        });
    }
    let a = SPECTRAL_SHIFT;
    if lambda_n(n_max) <= a + 1.0 || k_max == 0 {
        return Err(Error::domain("eta_direct_sum: cutoffs too small"));
    }
    let r = d.r as f64;
    let unit = 2.0 * PI / (r * d.gamma_norm.sqrt());
    let lambdas: Vec<f64> = (0..n_max).map(lambda_n).collect();
    let sigma = s.re;

    // Σ_n sign(μ)|μ|^(-s) over the eigenvalues of one representation
    let level = |m: i64| -> Complex64 {
        let h = unit * m as f64;
        let mut acc = zero;
        for &lam in lambdas.iter().rev() {
            for mu in [h * (a + lam), h * (a - lam)] {
                let p = pow_neg(mu.abs(), s);
                acc += if mu > 0.0 { p } else { -p };
            }
        }
        acc
    };
    let weight_sum_term = |m: i64| (m.unsigned_abs() as f64) * (unit * m.unsigned_abs() as f64).powf(-sigma);

    // only c mod r matters; reducing it makes levels m and -m meet in a pair
    let c = d.c_reduced();
    let ri = d.r as i64;
    let mut value = zero;
    let mut weights = 0.0;
    let add = |m: i64, value: &mut Complex64, weights: &mut f64| {
        if m != 0 {
            *value += level(m) * m.unsigned_abs() as f64;
            *weights += weight_sum_term(m);
        }
    };
    add(c, &mut value, &mut weights);
    for k in 1..=k_max as i64 {
        // the two sides are combined before accumulation so that opposite
        // levels cancel exactly when c ≡ 0
        let (mp, mm) = (c + ri * k, c - ri * k);
        let mut pair = zero;
        let mut w = 0.0;
        add(mp, &mut pair, &mut w);
        add(mm, &mut pair, &mut w);
        value += pair;
        weights += w;
    }

    // n ≥ n_max: |(λ+a)^(-s) - (λ-a)^(-s)| ≤ 2a|s|(λ-a)^(-σ-1)
    let nf = n_max as f64;
    let n_tail = 2.0
        * a
        * s.norm()
        * ((lambda_n(n_max) - a).powf(-sigma - 1.0)
            + 0.5 * 2f64.sqrt() * ((2.0 * nf + 1.0) / 2f64.sqrt() - a).powf(-sigma) / sigma);
    // |k| > K: Σ |m|^(1-σ) ≤ 2(rK - |c|)^(2-σ)/(r(σ-2)), times Σ_n |5/4 ± λ_n|^(-σ)
    let mut abs_series = 0.0;
    for &lam in &lambdas {
        abs_series += (a + lam).powf(-sigma) + (lam - a).abs().powf(-sigma);
    }
    abs_series += 2.0
        * ((lambda_n(n_max) - a).powf(-sigma)
            + 0.5 * 2f64.sqrt() * ((2.0 * nf + 1.0) / 2f64.sqrt() - a).powf(1.0 - sigma) / (sigma - 1.0));
    // 0 ≤ c < r, so the edge is positive
    let edge = r * k_max as f64 - c as f64;
    let k_tail = 2.0 * edge.powf(2.0 - sigma) / (r * (sigma - 2.0)) * unit.powf(-sigma) * abs_series;
    Ok(EtaEvaluation {
        tail_bound: Some(weights * n_tail + k_tail),
        ..EtaEvaluation::regular(s, value)
    })
}

/// Predicted sign of `η_S(-2l)`: `(-1)^l` when `c/r mod 1 ∈ (0, 1/2)`, the
/// opposite on `(1/2, 1)`, and `0` at `1/2`.
pub fn sign_prediction(l: u32, d: &LatticeCharacterData) -> Result<i8> {
    d.require_generic("sign_prediction")?;
    let twice = 2 * d.c_reduced();
    let r = d.r as i64;
    let base: i8 = if l % 2 == 0 { 1 } else { -1 };
    Ok(match twice.cmp(&r) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => base,
        std::cmp::Ordering::Greater => -base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(r: u64, c: i64, g: f64) -> LatticeCharacterData {
        LatticeCharacterData::generic(r, c, g).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify_case(false, false, 3, 4).unwrap(), CaseTag::CenterNontrivial);
        assert_eq!(classify_case(true, true, 0, 4).unwrap(), CaseTag::CommutatorTrivial);
        assert_eq!(classify_case(true, false, 1, 4).unwrap(), CaseTag::Generic);
        assert!(classify_case(false, true, 1, 4).is_err());
        assert!(classify_case(true, false, 8, 4).is_err());
        assert!(LatticeCharacterData::new(4, 1, 1.0, CaseTag::CommutatorTrivial).is_err());
    }

    #[test]
    fn multiplicities() {
        let d = data(4, 1, 1.0);
        assert_eq!(multiplicity(0, &d).unwrap(), 1);
        assert_eq!(multiplicity(-1, &d).unwrap(), 3);
        let a = LatticeCharacterData::new(4, 1, 1.0, CaseTag::CenterNontrivial).unwrap();
        assert!(multiplicity(0, &a).is_err());
    }

    #[test]
    fn negative_even_reference_values() {
        let cases = [
            (4, 1, [-3.7562185506397185, 301.08649280466918, -46284.846315581518]),
            (4, 3, [3.7562185506397185, -301.08649280466918, 46284.846315581518]),
            (5, 2, [-2.5543199260222426, 216.34911570577613, -33804.950620623865]),
            (7, 3, [-2.6202368395057708, 223.07165635418698, -34912.762666868012]),
        ];
        for (r, c, want) in cases {
            let d = data(r, c, 1.0);
            for (l, w) in (1..=3).zip(want) {
                let v = eta_nil_neg_even(l, &d).unwrap();
                assert!((v - w).abs() < 1e-12 * w.abs(), "({r},{c}) l={l}: {v} vs {w}");
            }
        }
    }

    #[test]
    fn pole_points_are_flagged() {
        let d = data(4, 1, 1.0);
        let e = eta_nil(Complex64::new(-2.0, 0.0), &d).unwrap();
        assert!(e.is_pole);
        assert_eq!(e.residue, 0.0);
        assert!((e.value.re + 3.7562185506397185).abs() < 1e-12);
    }

    #[test]
    fn symmetric_limit_reaches_the_value() {
        let d = data(5, 2, 1.7);
        for l in 1..=2 {
            let lim = eta_nil_symmetric_limit(l, &d, 1e-4).unwrap();
            let v = eta_nil_neg_even(l, &d).unwrap();
            assert!((lim - v).abs() < 1e-6 * v.abs(), "l={l}: {lim} vs {v}");
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sign_prediction(1, &data(4, 1, 1.0)).unwrap(), -1);
        assert_eq!(sign_prediction(2, &data(4, 1, 1.0)).unwrap(), 1);
        assert_eq!(sign_prediction(1, &data(2, 1, 1.0)).unwrap(), 0);
        assert_eq!(sign_prediction(1, &data(4, 3, 1.0)).unwrap(), 1);
        assert_eq!(sign_prediction(1, &data(4, -3, 1.0)).unwrap(), -1);
    }

    #[test]
    fn vanishing_cases() {
        let a = LatticeCharacterData::new(3, 1, 2.0, CaseTag::CenterNontrivial).unwrap();
        let b = LatticeCharacterData::new(3, 6, 2.0, CaseTag::CommutatorTrivial).unwrap();
        let half = data(2, 1, 1.0);
        for s in [Complex64::new(6.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(0.3, 4.0)] {
            assert_eq!(eta_nil(s, &a).unwrap().value, Complex64::new(0.0, 0.0));
            assert_eq!(eta_nil(s, &b).unwrap().value, Complex64::new(0.0, 0.0));
            assert!(eta_nil(s, &half).unwrap().value.norm() <= 1e-12);
        }
        let direct = eta_direct_sum(Complex64::new(6.0, 0.0), &b, 50, 50).unwrap();
        assert_eq!(direct.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn direct_sum_small_cutoffs() {
        let d = data(4, 1, 1.0);
        let s = Complex64::new(7.5, 0.0);
        let direct = eta_direct_sum(s, &d, 200, 200).unwrap();
        let formula = eta_nil(s, &d).unwrap().value;
        let bound = direct.tail_bound.unwrap();
        assert!((direct.value - formula).norm() <= bound + 1e-12 * formula.norm());
    }
}
