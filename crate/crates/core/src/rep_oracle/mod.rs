//! Spectral oracle: explicit matrices of `ρ(S) = i ⋆₃ ρ(D₂)` in the
//! irreducible unitary representations of the (2,3,5) group, truncated in
//! the Hermite basis of `L²(ℝ)` and diagonalized.
//!
//! With `X₁, X₂, X₃` acting on `L²(ℝ)`, the operator on `H² ⊗ L²(ℝ)` is
//!
//! ```text
//! D₂ = [ -X₁X₂-X₃     X₁X₁/√2    0         ]
//!      [ -X₂X₂/√2    -3/2·X₃     X₁X₁/√2   ]
//!      [  0          -X₂X₂/√2    X₂X₁-X₃   ]
//! ```
//!
//! and `S` is made Hermitian by conjugation with `diag(h₂)^(1/2)`.
//! Products of the `Xᵢ` are taken from the infinite matrices, not from
//! products of truncated factors, so each block is the exact restriction of
//! an infinite matrix and the assembled matrix is exactly Hermitian.

mod eigen;
mod ladder;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use eigen::{hermitian_eigenvalues, symmetric_eigenvalues};
use ladder::Banded;

use crate::error::{check_finite, check_finite_real, Error, Result};

/// Graded inner product in normal form: `X₁, X₂` orthonormal,
/// `g(X₄,X₅) = 0`, and the diagonal entries `g₃₃, g₄₄, g₅₅`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedMetric {
    pub g33: f64,
    pub g44: f64,
    pub g55: f64,
}

impl GradedMetric {
    pub fn new(g33: f64, g44: f64, g55: f64) -> Result<Self> {
        for (v, name) in [(g33, "g33"), (g44, "g44"), (g55, "g55")] {
            check_finite_real(v, "GradedMetric")?;
            if v <= 0.0 {
                return Err(Error::domain(format!(
                    "metric entry {name} = {v} must be positive"
                )));
            }
        }
        Ok(GradedMetric { g33, g44, g55 })
    }

    pub fn identity() -> Self {
        GradedMetric {
            g33: 1.0,
            g44: 1.0,
            g55: 1.0,
        }
    }

    /// `b_g` proportional to `g` on the first layer, i.e. `g₄₄ = g₅₅`.
    pub fn bg_proportional(&self) -> bool {
        (self.g44 - self.g55).abs() <= 1e-12 * self.g44.max(self.g55)
    }

    /// `√(g₄₄/g₅₅)`.
    fn rho(&self) -> f64 {
        (self.g44 / self.g55).sqrt()
    }

    /// `√(g₄₄g₅₅)/((g₄₄+g₅₅)/2)`.
    fn tau(&self) -> f64 {
        (self.g44 * self.g55).sqrt() / ((self.g44 + self.g55) / 2.0)
    }
}

/// `⋆₃ = (1/√g₃₃)·antidiag(√(g₄₄/g₅₅), -√(g₄₄g₅₅)/((g₄₄+g₅₅)/2), √(g₅₅/g₄₄))`.
pub fn hodge_star3(g: &GradedMetric) -> [[f64; 3]; 3] {
    let c = 1.0 / g.g33.sqrt();
    [
        [0.0, 0.0, c * g.rho()],
        [0.0, -c * g.tau(), 0.0],
        [c / g.rho(), 0.0, 0.0],
    ]
}

/// Diagonal of the Hermitian inner product `h₂` on `H² ⊗ ℂ`.
pub fn h2(g: &GradedMetric) -> [f64; 3] {
    let c = 1.0 / (g.g44 * g.g55).sqrt();
    [c / g.rho(), c / g.tau(), c * g.rho()]
}

/// Schrödinger representation `ρ_ℏ` together with the orientation `𝔬(X₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerParams {
    pub hbar: f64,
    pub orientation_sign: i8,
}

impl SchrodingerParams {
    pub fn new(hbar: f64, orientation_sign: i8) -> Result<Self> {
        check_finite_real(hbar, "SchrodingerParams")?;
        if hbar == 0.0 {
            return Err(Error::domain("Schrödinger parameter ħ must be nonzero"));
        }
        if orientation_sign != 1 && orientation_sign != -1 {
            return Err(Error::domain("orientation sign must be +1 or -1"));
        }
        Ok(SchrodingerParams {
            hbar,
            orientation_sign,
        })
    }
}

/// Generic representation `ρ_{λ,μ,ν}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericRepParams {
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
}

impl GenericRepParams {
    pub fn new(lambda: f64, mu: f64, nu: f64) -> Result<Self> {
        for v in [lambda, mu, nu] {
            check_finite_real(v, "GenericRepParams")?;
        }
        if lambda == 0.0 && mu == 0.0 {
            return Err(Error::domain("generic representation needs (λ, μ) ≠ (0, 0)"));
        }
        Ok(GenericRepParams { lambda, mu, nu })
    }

    /// `(λ² + μ²)^(1/3)`.
    fn scale(&self) -> f64 {
        (self.lambda * self.lambda + self.mu * self.mu).cbrt()
    }
}

/// Dense Hermitian matrix; conjugate symmetry is checked exactly on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianOperatorMatrix {
    /// Row-major entries; fails unless `entries[j][k] == conj(entries[k][j])`
    /// holds bit for bit.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {dim}×{dim} entries, got {}",
                entries.len()
            )));
        }
        for z in &entries {
            check_finite(*z, "HermitianOperatorMatrix")?;
        }
        for j in 0..dim {
            for k in j..dim {
                if entries[j * dim + k] != entries[k * dim + j].conj() {
                    return Err(Error::Inconsistency(format!(
                        "matrix is not Hermitian at ({j}, {k}): {} vs {}",
                        entries[j * dim + k],
                        entries[k * dim + j]
                    )));
                }
            }
        }
        Ok(HermitianOperatorMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.dim + k]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.get(j, j).re).sum()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[piv * n + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for k in col..n {
                    let v = a[col * n + k];
                    a[r * n + k] -= f * v;
                }
            }
        }
        det
    }

    /// `max |entries|`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Truncation parameters for the spectral oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    /// Hermite modes per `H²` component; the matrix has size `3N`.
    pub basis_size: usize,
    /// Eigenvalues with `|λ| < kernel_eps` count as kernel.
    pub kernel_eps: f64,
    /// Number of smallest-`|λ|` nonzero eigenvalues that are trusted.
    pub trusted_count: usize,
}

impl TruncationConfig {
    pub fn new(basis_size: usize, kernel_eps: f64, trusted_count: usize) -> Result<Self> {
        if basis_size < 8 {
            return Err(Error::domain(format!(
                "basis size {basis_size} is below the minimum of 8"
            )));
        }
        check_finite_real(kernel_eps, "TruncationConfig")?;
        if kernel_eps <= 0.0 {
            return Err(Error::domain("kernel threshold must be positive"));
        }
        if trusted_count == 0 || trusted_count > basis_size / 8 {
            return Err(Error::domain(format!(
                "trusted count {trusted_count} must lie in 1..={}",
                basis_size / 8
            )));
        }
        Ok(TruncationConfig {
            basis_size,
            kernel_eps,
            trusted_count,
        })
    }

    /// Defaults for `ρ_ℏ`: kernel threshold `1e-6·2π|ℏ|/√g₃₃`, trusted
    /// window `N/8`.
    pub fn for_schrodinger(p: &SchrodingerParams, g: &GradedMetric, basis_size: usize) -> Result<Self> {
        let eps = 1e-6 * 2.0 * PI * p.hbar.abs() / g.g33.sqrt();
        TruncationConfig::new(basis_size, eps, (basis_size / 8).max(1))
    }

    /// Defaults for `ρ_{λ,μ,ν}`: kernel threshold `1e-6·2π(λ²+μ²)^(1/3)/√g₃₃`.
    pub fn for_generic(p: &GenericRepParams, g: &GradedMetric, basis_size: usize) -> Result<Self> {
        let eps = 1e-6 * 2.0 * PI * p.scale() / g.g33.sqrt();
        TruncationConfig::new(basis_size, eps, (basis_size / 8).max(1))
    }
}

/// Restrictions of `X₁X₂, X₂X₁, X₁X₁, X₂X₂, X₃` to the first `n` modes.
struct Products {
    n: usize,
    x1x2: Banded,
    x2x1: Banded,
    x1x1: Banded,
    x2x2: Banded,
    x3: Banded,
}

impl Products {
    fn new(n: usize, x1: &Banded, x2: &Banded, x3: Banded) -> Self {
        Products {
            n,
            x1x2: x1.mul(x2),
            x2x1: x2.mul(x1),
            x1x1: x1.mul(x1),
            x2x2: x2.mul(x2),
            x3,
        }
    }
}

/// `i·c·z` written out componentwise, so that the result for `(-c, conj z)`
/// is exactly the conjugate of the result for `(c, z)`.
#[inline]
fn i_times(c: f64, z: Complex64) -> Complex64 {
    Complex64::new(-(c * z.im), c * z.re)
}

/// Assemble `diag(h₂)^(1/2) · i ⋆₃ D₂ · diag(h₂)^(-1/2)` from the products,
/// with the orientation sign folded into the prefactor.
///
/// With `ρ = √(g₄₄/g₅₅)` and `τ = √(g₄₄g₅₅)/((g₄₄+g₅₅)/2)` the blocks are
/// `i/√g₃₃` times
///
/// ```text
/// [  0                    -√(ρτ/2)·X₂X₂      X₂X₁-X₃          ]
/// [  √(ρτ/2)·X₂X₂          3/2·τ·X₃         -√(τ/(2ρ))·X₁X₁   ]
/// [ -X₁X₂-X₃               √(τ/(2ρ))·X₁X₁    0                ]
/// ```
fn assemble(p: &Products, g: &GradedMetric, orientation: f64) -> Result<HermitianOperatorMatrix> {
    let n = p.n;
    let dim = 3 * n;
    let pref = orientation / g.g33.sqrt();
    let (rho, tau) = (g.rho(), g.tau());
    let c01 = pref * (rho * tau / 2.0).sqrt();
    let c12 = pref * (tau / (2.0 * rho)).sqrt();
    let c11 = pref * 1.5 * tau;
    let mut e = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut put = |bi: usize, bj: usize, j: usize, k: usize, z: Complex64| {
        e[(bi * n + j) * dim + bj * n + k] = z;
    };
    for j in 0..n {
        for k in j.saturating_sub(4)..(j + 5).min(n) {
            put(0, 1, j, k, i_times(-c01, p.x2x2.get(j, k)));
            put(1, 0, j, k, i_times(c01, p.x2x2.get(j, k)));
            put(0, 2, j, k, i_times(pref, p.x2x1.get(j, k) - p.x3.get(j, k)));
            put(2, 0, j, k, i_times(pref, -p.x1x2.get(j, k) - p.x3.get(j, k)));
            put(1, 1, j, k, i_times(c11, p.x3.get(j, k)));
            put(1, 2, j, k, i_times(-c12, p.x1x1.get(j, k)));
            put(2, 1, j, k, i_times(c12, p.x1x1.get(j, k)));
        }
    }
    HermitianOperatorMatrix::new(dim, e)
}

/// Extra modes kept while multiplying, beyond the band width of the factors.
const PAD: usize = 4;

/// `ρ_{α,β}(S)` on `H² ⊗ ℂ`: `X₁ = 2πiα`, `X₂ = 2πiβ`, `X₃ = 0`.
#[allow(non_snake_case)]
pub fn scalar_S(alpha: f64, beta: f64, g: &GradedMetric) -> Result<HermitianOperatorMatrix> {
    check_finite_real(alpha, "scalar_S")?;
    check_finite_real(beta, "scalar_S")?;
    let x1 = Banded::identity(1, Complex64::new(0.0, 2.0 * PI * alpha));
    let x2 = Banded::identity(1, Complex64::new(0.0, 2.0 * PI * beta));
    let x3 = Banded::identity(1, Complex64::new(0.0, 0.0));
    assemble(&Products::new(1, &x1, &x2, x3), g, 1.0)
}

/// Truncation of `ρ_ℏ(S)` to `N` Hermite modes per component.
///
/// With `ω = 2π|ℏ|`: `X₁ = √(ω/2)(a - a†)`, `X₂ = i·sign(ℏ)·√(ω/2)(a + a†)`,
/// `X₃ = i·sign(ℏ)·ω`.
#[allow(non_snake_case)]
pub fn schrodinger_S(
    p: &SchrodingerParams,
    g: &GradedMetric,
    basis_size: usize,
) -> Result<HermitianOperatorMatrix> {
    if basis_size < 8 {
        return Err(Error::domain("basis size must be at least 8"));
    }
    let nb = basis_size + PAD;
    let omega = 2.0 * PI * p.hbar.abs();
    let sg = p.hbar.signum();
    let half = (omega / 2.0).sqrt();
    let x1 = Banded::ladder(nb, Complex64::new(half, 0.0), -1.0);
    let x2 = Banded::ladder(nb, Complex64::new(0.0, sg * half), 1.0);
    let x3 = Banded::identity(nb, Complex64::new(0.0, sg * omega));
    let prods = Products::new(basis_size, &x1, &x2, x3);
    assemble(&prods, g, p.orientation_sign as f64)
}

/// Truncation of `ρ_{λ,μ,ν}(S)` to `N` Hermite modes per component.
///
/// With `r = (λ²+μ²)^(1/3)`, `ω = 2πr`, `θ = (a + a†)/√(2ω)`,
/// `∂ = √(ω/2)(a - a†)` and `Q = (θ² + ν r^(-2))/2`:
/// `X₁ = (λ/r)∂ - (2πiμ/r)Q`, `X₂ = (μ/r)∂ + (2πiλ/r)Q`, `X₃ = 2πi·r·θ`.
#[allow(non_snake_case)]
pub fn generic_S(
    p: &GenericRepParams,
    g: &GradedMetric,
    basis_size: usize,
) -> Result<HermitianOperatorMatrix> {
    if basis_size < 8 {
        return Err(Error::domain("basis size must be at least 8"));
    }
    let nb = basis_size + PAD;
    let r = p.scale();
    let omega = 2.0 * PI * r;
    let one = Complex64::new(1.0, 0.0);
    let theta = Banded::ladder(nb, Complex64::new(1.0 / (2.0 * omega).sqrt(), 0.0), 1.0);
    let d = Banded::ladder(nb, Complex64::new((omega / 2.0).sqrt(), 0.0), -1.0);
    let shift = Banded::identity(nb, Complex64::new(p.nu / (r * r), 0.0));
    let q = theta.mul(&theta).combine(Complex64::new(0.5, 0.0), &shift, Complex64::new(0.5, 0.0));
    let x1 = d.combine(
        Complex64::new(p.lambda / r, 0.0),
        &q,
        Complex64::new(0.0, -2.0 * PI * p.mu / r),
    );
    let x2 = d.combine(
        Complex64::new(p.mu / r, 0.0),
        &q,
        Complex64::new(0.0, 2.0 * PI * p.lambda / r),
    );
    let x3 = theta.combine(Complex64::new(0.0, 2.0 * PI * r), &Banded::zeros(nb, 0), one);
    let prods = Products::new(basis_size, &x1, &x2, x3);
    assemble(&prods, g, 1.0)
}

/// Eigenvalues of `ρ_ℏ(S)` for `g₄₄ = g₅₅`, as `count` pairs
/// `(2πℏ/(𝔬√g₃₃))·(5 ∓ √(8(2n+1)²+9))/4`, ordered by `n` and within a pair
/// minus before plus.
pub fn closed_form_schrodinger_spectrum(
    p: &SchrodingerParams,
    g: &GradedMetric,
    count: usize,
) -> Result<Vec<f64>> {
    if !g.bg_proportional() {
        return Err(Error::domain(
            "closed-form spectrum needs g44 = g55",
        ));
    }
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    let scale = 2.0 * PI * p.hbar / (p.orientation_sign as f64 * g.g33.sqrt());
    let mut out = Vec::with_capacity(2 * count);
    for n in 0..count {
        let k = (2 * n + 1) as f64;
        let root = (8.0 * k * k + 9.0).sqrt();
        out.push(scale * (5.0 - root) / 4.0);
        out.push(scale * (5.0 + root) / 4.0);
    }
    Ok(out)
}

/// `Σ_{|λ| ≥ kernel_eps} sign(λ)|λ|^(-s)`.
pub fn spectral_eta_partial(eigs: &[f64], s: Complex64, kernel_eps: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in eigs {
        if x.abs() >= kernel_eps {
            let p = (-s * x.abs().ln()).exp();
            acc += if x > 0.0 { p } else { -p };
        }
    }
    acc
}

/// Eigenvalues of a truncation, split into kernel and trusted window.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSpectrum {
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues below the kernel threshold.
    pub kernel_count: usize,
    /// The `trusted_count` nonzero eigenvalues of smallest modulus, by
    /// increasing `|λ|`.
    pub trusted: Vec<f64>,
}

pub fn truncated_spectrum(m: &HermitianOperatorMatrix, cfg: &TruncationConfig) -> Result<TruncatedSpectrum> {
    let eigenvalues = hermitian_eigenvalues(m)?;
    Ok(split_spectrum(eigenvalues, cfg))
}

pub fn split_spectrum(eigenvalues: Vec<f64>, cfg: &TruncationConfig) -> TruncatedSpectrum {
    let kernel_count = eigenvalues.iter().filter(|x| x.abs() < cfg.kernel_eps).count();
    let mut nonzero: Vec<f64> = eigenvalues
        .iter()
        .copied()
        .filter(|x| x.abs() >= cfg.kernel_eps)
        .collect();
    nonzero.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    nonzero.truncate(cfg.trusted_count);
    TruncatedSpectrum {
        eigenvalues,
        kernel_count,
        trusted: nonzero,
    }
}

/// Relative distance from each value to the nearest entry of `reference`.
pub fn nearest_relative_errors(values: &[f64], reference: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&x| {
            reference
                .iter()
                .map(|&r| (x - r).abs() / r.abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Largest relative mismatch between each trusted value `λ` and the
/// eigenvalue of `all` closest to `-λ`.
pub fn max_pairing_error(trusted: &[f64], all: &[f64]) -> f64 {
    trusted
        .iter()
        .map(|&x| {
            all.iter()
                .map(|&y| (y + x).abs() / x.abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> f64 {
        2f64.sqrt()
    }

    #[test]
    fn star_and_h() {
        let id = hodge_star3(&GradedMetric::identity());
        assert_eq!(id, [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]);
        let s = hodge_star3(&GradedMetric::new(4.0, 1.0, 1.0).unwrap());
        assert_eq!(s, [[0.0, 0.0, 0.5], [0.0, -0.5, 0.0], [0.5, 0.0, 0.0]]);
        assert_eq!(h2(&GradedMetric::identity()), [1.0, 1.0, 1.0]);
    }

    #[test]
    fn star_scales_with_g33() {
        let a = hodge_star3(&GradedMetric::new(1.0, 0.7, 1.9).unwrap());
        let b = hodge_star3(&GradedMetric::new(9.0, 0.7, 1.9).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - 3.0 * b[i][j]).abs() < 1e-15);
            }
        }
        // middle entry is -1 exactly when g44 = g55
        let c = hodge_star3(&GradedMetric::new(1.0, 2.0, 2.0).unwrap());
        assert_eq!(c[1][1], -1.0);
    }

    #[test]
    fn scalar_matches_displayed_matrix() {
        let g = GradedMetric::new(1.7, 0.6, 2.3).unwrap();
        let (a, b) = (0.8, -1.3);
        let m = scalar_S(a, b, &g).unwrap();
        let r = (g.g44 / g.g55).sqrt();
        let t = (g.g44 * g.g55).sqrt() / ((g.g44 + g.g55) / 2.0);
        let c = 4.0 * PI * PI / g.g33.sqrt();
        // i·c·P with P as displayed
        let pmat = [
            [0.0, r * b * b / sqrt2(), -r * a * b],
            [-t * b * b / sqrt2(), 0.0, t * a * a / sqrt2()],
            [a * b / r, -a * a / (r * sqrt2()), 0.0],
        ];
        let h = h2(&g);
        for i in 0..3 {
            for j in 0..3 {
                let want = Complex64::new(0.0, c * pmat[i][j] * (h[i] / h[j]).sqrt());
                assert!((m.get(i, j) - want).norm() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn scalar_spectrum() {
        let m = scalar_S(1.0, 0.0, &GradedMetric::identity()).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        let x = 2.0 * sqrt2() * PI * PI;
        assert!((ev[0] + x).abs() < 1e-12 && ev[1].abs() < 1e-12 && (ev[2] - x).abs() < 1e-12);
        let z = scalar_S(0.0, 0.0, &GradedMetric::new(2.0, 3.0, 0.5).unwrap()).unwrap();
        assert!(z.entries().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn schrodinger_low_modes() {
        let p = SchrodingerParams::new(1.0, 1).unwrap();
        let g = GradedMetric::identity();
        let m = schrodinger_S(&p, &g, 64).unwrap();
        let cfg = TruncationConfig::for_schrodinger(&p, &g, 64).unwrap();
        let sp = truncated_spectrum(&m, &cfg).unwrap();
        let cf = closed_form_schrodinger_spectrum(&p, &g, 40).unwrap();
        let err = nearest_relative_errors(&sp.trusted, &cf);
        assert!(err.iter().all(|&e| e < 1e-10), "{err:?}");
        assert!((sp.trusted[1] + 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn negating_hbar_negates_up_to_block_signs() {
        let g = GradedMetric::new(1.3, 0.8, 0.8).unwrap();
        let n = 16;
        let a = schrodinger_S(&SchrodingerParams::new(0.7, 1).unwrap(), &g, n).unwrap();
        let b = schrodinger_S(&SchrodingerParams::new(-0.7, 1).unwrap(), &g, n).unwrap();
        // b = -U a U with U = diag(1, -1, 1) ⊗ 1
        let u = |i: usize| if i / n == 1 { -1.0 } else { 1.0 };
        for i in 0..3 * n {
            for j in 0..3 * n {
                assert_eq!(b.get(i, j), -(a.get(i, j) * (u(i) * u(j))));
            }
        }
    }

    #[test]
    fn generic_is_exactly_hermitian() {
        let g = GradedMetric::new(1.0, 0.5, 2.0).unwrap();
        let m = generic_S(&GenericRepParams::new(0.7, -1.2, 0.3).unwrap(), &g, 24);
        assert!(m.is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(TruncationConfig::new(64, 1e-6, 9).is_err());
        assert!(TruncationConfig::new(64, 1e-6, 8).is_ok());
        assert!(TruncationConfig::new(4, 1e-6, 1).is_err());
        assert!(GenericRepParams::new(0.0, 0.0, 1.0).is_err());
        assert!(SchrodingerParams::new(0.0, 1).is_err());
        assert!(GradedMetric::new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn eta_partial_sums() {
        assert_eq!(spectral_eta_partial(&[-2.0, -1.0, 1.0, 2.0], Complex64::new(2.0, 0.0), 1e-9), Complex64::new(0.0, 0.0));
        assert_eq!(spectral_eta_partial(&[1.0], Complex64::new(2.0, 0.0), 1e-9), Complex64::new(1.0, 0.0));
    }
}
