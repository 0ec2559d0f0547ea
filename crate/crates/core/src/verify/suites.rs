use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::oracles::{
    bernoulli_double_sum, hurwitz_direct, im_polylog_quadrature, reflection_rhs,
};
use super::{max_of, Recorder, VerifyOptions};
use crate::error::{Error, Result};
use crate::nilmanifold::{
    eta_direct_sum, eta_nil, eta_nil_neg_even, eta_nil_neg_even_routes, eta_nil_special,
    eta_nil_symmetric_limit, sign_prediction, CaseTag, LatticeCharacterData,
};
use crate::rep_oracle::{
    closed_form_schrodinger_spectrum, generic_S, hermitian_eigenvalues, max_pairing_error,
    nearest_relative_errors, scalar_S, schrodinger_S, spectral_eta_partial, split_spectrum,
    GenericRepParams, GradedMetric, SchrodingerParams, TruncationConfig,
};
use crate::specfun::{
    bernoulli_number, bernoulli_poly, eta_hurw, eta_hurw_deriv_neg_odd, gamma_fn,
    hurwitz_zeta, im_polylog_even, riemann_zeta,
};
use crate::tilde_eta::{
    default_split, residue_by_limit, tilde_eta, tilde_eta_at_zero, tilde_eta_direct,
    tilde_eta_residue, tilde_eta_split,
};

const SEED: u64 = 0x2355;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

fn value_of(s: Complex64, a: f64) -> Result<Complex64> {
    tilde_eta(s, a)?
        .value
        .ok_or_else(|| Error::domain(format!("η̃ has a pole at s = {s}")))
}

pub(super) fn specfun_suite(rec: &mut Recorder) {
    rec.error_at_most(
        "gamma at 1, 1/2, 6",
        1e-12,
        max_of([
            gamma_fn(c(1.0, 0.0)).map(|v| rel(v, c(1.0, 0.0))),
            gamma_fn(c(0.5, 0.0)).map(|v| rel(v, c(PI.sqrt(), 0.0))),
            gamma_fn(c(6.0, 0.0)).map(|v| (v - 120.0).norm() / 120.0),
        ]),
    );
    rec.error_at_most(
        "riemann zeta at 2, 0, -2",
        1e-12,
        max_of([
            riemann_zeta(c(2.0, 0.0)).map(|v| rel(v, c(PI * PI / 6.0, 0.0))),
            riemann_zeta(c(0.0, 0.0)).map(|v| rel(v, c(-0.5, 0.0))),
            riemann_zeta(c(-2.0, 0.0)).map(|v| v.norm()),
        ]),
    );

    let mut worst_bound = 0.0f64;
    let hz = max_of(
        [c(2.0, 0.0), c(3.0, 0.0), c(2.5, 3.0)]
            .into_iter()
            .flat_map(|s| [0.3, 1.0].map(move |a| (s, a)))
            .map(|(s, a)| {
                let direct = hurwitz_direct(s, a, 1_000_000);
                worst_bound = worst_bound.max(direct.bound);
                hurwitz_zeta(s, a).map(|v| (v - direct.value).norm())
            })
            .collect::<Vec<_>>(),
    );
    rec.error_at_most_with(
        "hurwitz zeta against 10^6-term sums",
        1e-9,
        hz,
        format!("largest tail bound {worst_bound:.3e}"),
    );
    // ζ(3, 1/2) = 7ζ(3); the reference is the direct sum of ζ(3)
    let zeta3 = hurwitz_direct(c(3.0, 0.0), 1.0, 1_000_000).value;
    rec.error_at_most(
        "hurwitz zeta duplication at s = 3",
        1e-12,
        hurwitz_zeta(c(3.0, 0.0), 0.5).map(|v| rel(v, 7.0 * zeta3)),
    );

    rec.error_at_most(
        "bernoulli numbers against the double sum",
        0.0,
        max_of((0..=30u32).map(|n| {
            let want = bernoulli_double_sum(n).to_f64().unwrap_or(f64::NAN);
            Ok((bernoulli_number(n as usize) - want).abs())
        })),
    );
    rec.error_at_most(
        "bernoulli polynomials against the double sum",
        1e-15,
        max_of(
            (0..=20u32)
                .flat_map(|n| [0.25, 2.0 / 3.0, 0.9].map(move |x| (n, x)))
                .map(|(n, x)| {
                    let xr = BigRational::from_float(x).expect("finite");
                    let mut acc = BigRational::from_integer(0.into());
                    let mut binom = num_bigint::BigInt::from(1);
                    for k in 0..=n {
                        acc += bernoulli_double_sum(k) * BigRational::from_integer(binom.clone()) * pow_rational(&xr, n - k);
                        binom = binom * (n - k) / (k + 1);
                    }
                    let want = acc.to_f64().unwrap_or(f64::NAN);
                    bernoulli_poly(n, x).map(|v| (v - want).abs() / want.abs().max(1.0))
                })
                .collect::<Vec<_>>(),
        ),
    );
    let mut rng = StdRng::seed_from_u64(SEED);
    let draws: Vec<(u32, f64)> = (0..=10).map(|n| (n, rng.gen_range(0.0..1.0))).collect();
    rec.error_at_most(
        "bernoulli reflection B_n(1-x) = (-1)^n B_n(x)",
        1e-13,
        max_of(draws.iter().map(|&(n, x)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok((bernoulli_poly(n, 1.0 - x)? - sign * bernoulli_poly(n, x)?).abs())
        })),
    );

    let samples: Vec<(Complex64, f64)> = (0..20)
        .map(|_| {
            let s = c(rng.gen_range(-6.0..6.0), rng.gen_range(-10.0..10.0));
            (s, rng.gen_range(0.05..0.95))
        })
        .collect();
    rec.error_at_most(
        "eta_hurw periodicity in a",
        1e-12,
        max_of(samples.iter().map(|&(s, a)| Ok(rel(eta_hurw(s, a + 1.0)?, eta_hurw(s, a)?)))),
    );
    rec.error_at_most(
        "eta_hurw oddness in a",
        1e-12,
        max_of(samples.iter().map(|&(s, a)| Ok(rel(eta_hurw(s, -a)?, -eta_hurw(s, a)?)))),
    );
    rec.error_at_most(
        "eta_hurw regular at s = 1",
        1e-4,
        max_of([0.25, 0.3].map(|a| {
            Ok((eta_hurw(c(1.0 + 1e-6, 0.0), a)? - eta_hurw(c(1.0 - 1e-6, 0.0), a)?).norm())
        })),
    );
    rec.error_at_most(
        "eta_hurw vanishes at -1, -3, -5, -7",
        1e-10,
        max_of(
            [1.0, 3.0, 5.0, 7.0]
                .into_iter()
                .flat_map(|n| [0.25, 0.3, 0.7].map(move |a| (n, a)))
                .map(|(n, a)| eta_hurw(c(-n, 0.0), a).map(|v| v.norm()))
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "eta_hurw at (0, 1/4) and (3.7, 1/2)",
        1e-14,
        max_of([
            eta_hurw(c(0.0, 0.0), 0.25).map(|v| (v - 0.5).norm()),
            eta_hurw(c(3.7, 0.0), 0.5).map(|v| v.norm()),
        ]),
    );
    rec.error_at_most(
        "reflection formula through direct polylog series",
        1e-9,
        max_of(
            [2.5, 3.5]
                .into_iter()
                .flat_map(|s| [0.2, 0.7].map(move |a| (s, a)))
                .map(|(s, a)| {
                    let rhs = reflection_rhs(s, a, 1_000_000);
                    eta_hurw(c(1.0 - s, 0.0), a).map(|v| (v - rhs.value).norm())
                })
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "derivative at -2l-1 against central differences",
        1e-6,
        max_of(
            (0..=2u32)
                .flat_map(|l| [0.25, 1.0 / 3.0].map(move |a| (l, a)))
                .map(|(l, a)| {
                    let s0 = -((2 * l + 1) as f64);
                    let h = 1e-4;
                    let fd = (eta_hurw(c(s0 + h, 0.0), a)? - eta_hurw(c(s0 - h, 0.0), a)?).re / (2.0 * h);
                    let d = eta_hurw_deriv_neg_odd(l, a)?;
                    Ok((d - fd).abs() / d.abs().max(1.0))
                })
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "Im Li_{2l+2} series against quadrature",
        1e-8,
        max_of(
            (0..=1u32)
                .flat_map(|l| [0.25, 1.0 / 3.0].map(move |a| (l, a)))
                .map(|(l, a)| im_polylog_even(l, a).map(|v| (v - im_polylog_quadrature(l, a)).abs()))
                .collect::<Vec<_>>(),
        ),
    );
}

fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    let mut out = BigRational::from_integer(1.into());
    for _ in 0..k {
        out *= x;
    }
    out
}

pub(super) fn tilde_eta_suite(rec: &mut Recorder) {
    let exact = 2.0 - 5.0 * 2f64.sqrt() / 4.0;
    rec.error_at_most(
        "tilde eta at (0, 5/4)",
        1e-9,
        value_of(c(0.0, 0.0), 1.25).map(|v| (v - exact).norm()),
    );
    rec.error_at_most(
        "tilde eta at 0 against the counting formula",
        1e-10,
        max_of([0.5, 1.25, 2.5].map(|a| Ok((value_of(c(0.0, 0.0), a)? - tilde_eta_at_zero(a)?).norm()))),
    );
    rec.error_at_most(
        "tilde eta vanishes at -1, -3, -5",
        1e-8,
        max_of(
            [1.0, 3.0, 5.0]
                .into_iter()
                .flat_map(|n| [0.3, 1.25, 2.7].map(move |a| (n, a)))
                .map(|(n, a)| value_of(c(-n, 0.0), a).map(|v| v.norm()))
                .collect::<Vec<_>>(),
        ),
    );

    let mut worst_bound = 0.0f64;
    let agreement = max_of(
        [c(1.5, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 2.0)]
            .into_iter()
            .flat_map(|s| [0.3, 1.25, 2.7].map(move |a| (s, a)))
            .map(|(s, a)| {
                let direct = tilde_eta_direct(s, a, 1_000_000)?;
                worst_bound = worst_bound.max(direct.tail_bound);
                Ok((value_of(s, a)? - direct.value).norm())
            })
            .collect::<Vec<_>>(),
    );
    rec.error_at_most_with(
        "continuation against direct sums",
        1e-8,
        agreement,
        format!("largest tail bound {worst_bound:.3e}"),
    );
    rec.error_at_most("direct sum tail bounds", 1e-8, Ok(worst_bound));
    rec.error_at_most(
        "direct sum at a = 0",
        0.0,
        tilde_eta_direct(c(3.0, 0.0), 0.0, 1000).map(|d| d.value.norm()),
    );
    rec.error_at_most(
        "oddness in a",
        1e-10,
        max_of(
            [c(2.5, 0.0), c(0.5, 3.0), c(-1.5, 0.0)]
                .into_iter()
                .flat_map(|s| [0.3, 2.7].map(move |a| (s, a)))
                .map(|(s, a)| Ok(rel(value_of(s, -a)?, -value_of(s, a)?)))
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "residue at -2 for a = 5/4 equals 45√2/64",
        1e-12,
        tilde_eta_residue(1, 1.25).map(|r| (r - 45.0 * 2f64.sqrt() / 64.0).abs() / r),
    );
    rec.error_at_most(
        "residue formula against (s+2l)-limit",
        1e-6,
        max_of([1u32, 2].map(|l| {
            let f = tilde_eta_residue(l, 1.25)?;
            Ok((residue_by_limit(l, 1.25)? - f).abs() / f.abs())
        })),
    );
    let want21 = 2f64.sqrt() * (4.0 * 6.0 * (9.0f64 / 64.0).powi(2) + 4.0 * 2.0 * 9.0 / 64.0);
    rec.error_at_most(
        "residue at (2, 1)",
        1e-14,
        tilde_eta_residue(2, 1.0).map(|r| (r - want21).abs() / want21),
    );
    rec.holds(
        "pole flagged at s = -2",
        tilde_eta(c(-2.0, 0.0), 1.25).map(|p| p.is_pole && p.value.is_none()),
    );
    rec.error_at_most(
        "independence of the split index",
        1e-10,
        max_of(
            [c(-3.5, 0.0), c(0.5, 0.0), c(2.0, 5.0)]
                .into_iter()
                .flat_map(|s| [0.3, 1.25, 2.7].map(move |a| (s, a)))
                .map(|(s, a)| {
                    let m = default_split(a);
                    let one = tilde_eta_split(s, a, m)?.value;
                    let two = tilde_eta_split(s, a, m + 3)?.value;
                    match (one, two) {
                        (Some(x), Some(y)) => Ok(rel(y, x)),
                        _ => Ok(f64::NAN),
                    }
                })
                .collect::<Vec<_>>(),
        ),
    );
}

/// Spectrum of a Schrödinger truncation, split by the default configuration.
fn schrodinger_spectrum(hbar: f64, g: &GradedMetric, n: usize) -> Result<(Vec<f64>, crate::rep_oracle::TruncatedSpectrum)> {
    let p = SchrodingerParams::new(hbar, 1)?;
    let cfg = TruncationConfig::for_schrodinger(&p, g, n)?;
    let m = schrodinger_S(&p, g, n)?;
    let eig = hermitian_eigenvalues(&m)?;
    Ok((eig.clone(), split_spectrum(eig, &cfg)))
}

pub(super) fn oracle_suite(rec: &mut Recorder, options: &VerifyOptions) {
    let n = options.basis_size;
    let small = n.min(64);
    let id = GradedMetric::identity();
    let one = SchrodingerParams { hbar: 1.0, orientation_sign: 1 };

    match schrodinger_spectrum(1.0, &id, n) {
        Ok((_, sp)) => {
            let closed = closed_form_schrodinger_spectrum(&one, &id, n).unwrap_or_default();
            let window: Vec<f64> = sp.trusted.iter().copied().take(8).collect();
            let errs = nearest_relative_errors(&window, &closed);
            rec.error_at_most_with(
                format!("schrodinger trusted spectrum against closed form (N = {n})"),
                1e-3,
                Ok(errs.iter().copied().fold(0.0, f64::max)),
                format!("{} trusted values compared", window.len()),
            );
            let targets = [-2.0 * PI, 7.0 * PI];
            let hits = nearest_relative_errors(&targets, &window);
            rec.error_at_most(
                "schrodinger n = 1 pair at -2π and 7π",
                1e-3,
                Ok(hits.iter().copied().fold(0.0, f64::max)),
            );
            rec.error_at_most_with(
                "schrodinger kernel size |K - N|/√N",
                2.0,
                Ok((sp.kernel_count as f64 - n as f64).abs() / (n as f64).sqrt()),
                format!("kernel {} of {}", sp.kernel_count, 3 * n),
            );
        }
        Err(e) => rec.error_at_most("schrodinger trusted spectrum against closed form", 1e-3, Err(e)),
    }

    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut scalar_worst = [0.0f64; 4];
    let scalar = (|| -> Result<()> {
        for _ in 0..20 {
            let g = GradedMetric::new(rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0))?;
            let m = scalar_S(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), &g)?;
            let size = m.max_abs().max(f64::MIN_POSITIVE);
            let ev = hermitian_eigenvalues(&m)?;
            let x = ev[2];
            scalar_worst[0] = scalar_worst[0].max(m.trace().abs() / size);
            scalar_worst[1] = scalar_worst[1].max(m.determinant().norm() / size.powi(3));
            scalar_worst[2] = scalar_worst[2].max(((ev[0] + x).abs() + ev[1].abs()) / size);
            let eta = spectral_eta_partial(&ev, c(3.0, 0.0), 1e-9 * size);
            scalar_worst[3] = scalar_worst[3].max(eta.norm() * x.abs().powi(3));
        }
        Ok(())
    })();
    for (i, name) in [
        "scalar trace",
        "scalar determinant",
        "scalar spectrum {-x, 0, x}",
        "scalar partial eta at s = 3",
    ]
    .into_iter()
    .enumerate()
    {
        rec.error_at_most(name, 1e-12, scalar.clone().map(|_| scalar_worst[i]));
    }

    let generic = |p: GenericRepParams, g: GradedMetric, n: usize| -> Result<f64> {
        let cfg = TruncationConfig::for_generic(&p, &g, n)?;
        let m = generic_S(&p, &g, n)?;
        let sp = split_spectrum(hermitian_eigenvalues(&m)?, &cfg);
        Ok(max_pairing_error(&sp.trusted, &sp.eigenvalues))
    };
    rec.error_at_most(
        format!("generic (1, 1, 0) spectrum pairs to ±λ (N = {n})"),
        1e-6,
        generic(GenericRepParams { lambda: 1.0, mu: 1.0, nu: 0.0 }, id, n),
    );
    rec.error_at_most(
        format!("generic (0.4, -0.9, 0.5), g = (1.5, 2, 2), pairs to ±λ (N = {})", n.min(128)),
        1e-6,
        GradedMetric::new(1.5, 2.0, 2.0).and_then(|g| {
            generic(GenericRepParams { lambda: 0.4, mu: -0.9, nu: 0.5 }, g, n.min(128))
        }),
    );
    rec.error_at_most(
        format!("generic (λ, μ) → (-λ, -μ) negates the trusted spectrum (N = {small})"),
        1e-6,
        (|| {
            let g = GradedMetric::new(1.2, 0.7, 0.7)?;
            let p = GenericRepParams::new(0.8, -0.5, 0.3)?;
            let q = GenericRepParams::new(-0.8, 0.5, 0.3)?;
            let cfg = TruncationConfig::for_generic(&p, &g, small)?;
            let a = split_spectrum(hermitian_eigenvalues(&generic_S(&p, &g, small)?)?, &cfg);
            let b = hermitian_eigenvalues(&generic_S(&q, &g, small)?)?;
            let negated: Vec<f64> = a.trusted.iter().map(|x| -x).collect();
            Ok(nearest_relative_errors(&negated, &b).into_iter().fold(0.0, f64::max))
        })(),
    );
    rec.error_at_most(
        format!("ħ → -ħ negates the spectrum (N = {small})"),
        1e-12,
        (|| {
            let g = GradedMetric::new(1.3, 0.8, 0.8)?;
            let (a, _) = schrodinger_spectrum(0.7, &g, small)?;
            let (b, _) = schrodinger_spectrum(-0.7, &g, small)?;
            let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            Ok(a.iter()
                .zip(b.iter().rev())
                .map(|(x, y)| (x + y).abs() / scale)
                .fold(0.0, f64::max))
        })(),
    );
    rec.error_at_most(
        format!("g33 → 4·g33 halves the trusted spectrum (N = {small})"),
        1e-10,
        (|| {
            let (_, a) = schrodinger_spectrum(1.0, &id, small)?;
            let (_, b) = schrodinger_spectrum(1.0, &GradedMetric::new(4.0, 1.0, 1.0)?, small)?;
            Ok(a.trusted
                .iter()
                .zip(&b.trusted)
                .map(|(x, y)| (2.0 * y / x - 1.0).abs())
                .fold(0.0, f64::max))
        })(),
    );
    rec.error_at_most(
        "closed-form spectral eta at s = 3 against (2π)^-3 η̃(3, 5/4)",
        1e-6,
        (|| {
            let list = closed_form_schrodinger_spectrum(&one, &id, 50)?;
            let partial = spectral_eta_partial(&list, c(3.0, 0.0), 1e-9);
            let want = value_of(c(3.0, 0.0), 1.25)? * (2.0 * PI).powi(-3);
            Ok((partial - want).norm())
        })(),
    );
}

fn data(r: u64, c: i64, g: f64) -> Result<LatticeCharacterData> {
    LatticeCharacterData::generic(r, c, g)
}

const SIGN_DATA: [(u64, i64); 4] = [(4, 1), (4, 3), (5, 2), (7, 3)];

pub(super) fn nilmanifold_suite(rec: &mut Recorder) {
    for (r, cc, g) in [(4, 1, 1.0), (5, 2, 2.0)] {
        rec.error_at_most(
            format!("η_S vanishes at 0, -1, -3, -5 for (r, c, γ) = ({r}, {cc}, {g})"),
            1e-9,
            data(r, cc, g).and_then(|d| eta_nil_special(&d)).map(|rep| rep.max_deviation),
        );
    }
    rec.error_at_most(
        "η_S special values vanish exactly in the commutator-trivial case",
        0.0,
        LatticeCharacterData::new(4, 8, 1.0, CaseTag::CommutatorTrivial)
            .and_then(|d| eta_nil_special(&d))
            .map(|rep| rep.max_deviation),
    );
    rec.error_at_most(
        "two routes to η_S(-2l), l = 1..3",
        1e-9,
        max_of(
            SIGN_DATA
                .iter()
                .flat_map(|&(r, cc)| (1..=3u32).map(move |l| (r, cc, l)))
                .map(|(r, cc, l)| {
                    let (a, b) = eta_nil_neg_even_routes(l, &data(r, cc, 1.0)?)?;
                    Ok((a - b).abs() / a.abs().max(b.abs()))
                })
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "η_S(-2) for (4, 1, 1) against the high-precision value",
        1e-10,
        data(4, 1, 1.0)
            .and_then(|d| eta_nil_neg_even(1, &d))
            .map(|v| (v + 3.7562185506397185).abs() / 3.7562185506397185),
    );
    rec.holds(
        "sign of η_S(-2l) matches the prediction",
        (|| {
            for &(r, cc) in &SIGN_DATA {
                let d = data(r, cc, 1.0)?;
                for l in 1..=3 {
                    let v = eta_nil_neg_even(l, &d)?;
                    if v.signum() as i8 != sign_prediction(l, &d)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })(),
    );
    rec.error_at_most(
        "symmetric ε-limit at -2l against the closed value",
        1e-6,
        max_of([1u32, 2].map(|l| {
            let d = data(5, 2, 1.7)?;
            let v = eta_nil_neg_even(l, &d)?;
            Ok((eta_nil_symmetric_limit(l, &d, 1e-4)? - v).abs() / v.abs())
        })),
    );

    for s in [c(6.0, 0.0), c(7.5, 0.0), c(6.0, 1.0)] {
        let outcome = (|| {
            let d = data(4, 1, 1.0)?;
            let direct = eta_direct_sum(s, &d, 2000, 2000)?;
            let formula = eta_nil(s, &d)?.value;
            Ok(((direct.value - formula).norm(), direct.tail_bound.unwrap_or(f64::NAN)))
        })();
        let (measured, bound) = match outcome {
            Ok((m, b)) => (Ok(m), b),
            Err(e) => (Err(e), 0.0),
        };
        rec.error_at_most_with(
            format!("direct double sum at s = {} + {}i", s.re, s.im),
            1e-6 + bound,
            measured,
            format!("tail bound {bound:.3e}"),
        );
    }

    let samples = [
        c(6.0, 0.0),
        c(7.5, 0.0),
        c(2.5, 0.0),
        c(0.5, 0.0),
        c(-0.5, 0.0),
        c(-1.5, 0.0),
        c(-2.0, 0.0),
        c(-3.3, 0.0),
        c(1.0, 4.0),
        c(-2.0, 1.5),
    ];
    let zero_cases = [
        LatticeCharacterData::new(3, 1, 2.0, CaseTag::CenterNontrivial),
        LatticeCharacterData::new(3, 0, 2.0, CaseTag::CommutatorTrivial),
    ];
    rec.error_at_most(
        "η_S ≡ 0 in cases (a) and (b)",
        0.0,
        max_of(
            zero_cases
                .iter()
                .flat_map(|d| samples.iter().map(move |&s| (d, s)))
                .map(|(d, s)| Ok(eta_nil(s, d.as_ref().map_err(Clone::clone)?)?.value.norm()))
                .collect::<Vec<_>>(),
        ),
    );
    rec.error_at_most(
        "η_S ≡ 0 for c/r = 1/2",
        1e-12,
        max_of(samples.iter().map(|&s| Ok(eta_nil(s, &data(2, 1, 1.0)?)?.value.norm()))),
    );
    rec.error_at_most(
        "direct double sum cancels in case (b)",
        0.0,
        LatticeCharacterData::new(3, 0, 2.0, CaseTag::CommutatorTrivial)
            .and_then(|d| eta_direct_sum(c(6.0, 0.0), &d, 100, 100))
            .map(|e| e.value.norm()),
    );
    rec.error_at_most(
        "γ-scaling covariance",
        1e-12,
        max_of([c(6.0, 0.0), c(0.5, 2.0), c(-2.5, 0.0)].map(|s| {
            let base = eta_nil(s, &data(4, 1, 1.3)?)?.value;
            let scaled = eta_nil(s, &data(4, 1, 4.0 * 1.3)?)?.value;
            let factor = (s * 2f64.ln()).exp();
            Ok(rel(scaled, factor * base))
        })),
    );
    rec.error_at_most(
        "periodicity c → c + r and oddness c → -c",
        1e-10,
        max_of([c(6.0, 0.0), c(0.5, 2.0), c(-2.5, 0.0)].map(|s| {
            let v = eta_nil(s, &data(5, 2, 1.0)?)?.value;
            let shifted = eta_nil(s, &data(5, 7, 1.0)?)?.value;
            let negated = eta_nil(s, &data(5, -2, 1.0)?)?.value;
            Ok(rel(shifted, v).max(rel(negated, -v)))
        })),
    );
}
