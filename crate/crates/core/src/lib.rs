//! Eta functions of the middle-degree Rumin operator `S = i ⋆₃ D₂` on
//! (2,3,5) nilmanifolds.
//!
//! The crate evaluates the nilmanifold eta function through its closed
//! product form
//!
//! ```text
//! η_S(s) = r · (2π/√g(γ,γ))^(-s) · η_Hurw(s-1, c/r) · η̃(s, 5/4)
//! ```
//!
//! and checks it against an independent spectral route: explicit matrices of
//! `ρ(S)` in the irreducible unitary representations of the (2,3,5) group,
//! truncated in a Hermite basis and diagonalized.
//!
//! Layout:
//!
//! | module | contents |
//! |--------|----------|
//! | [`specfun`] | Gamma, Riemann/Hurwitz zeta, Bernoulli polynomials, unit-circle polylogarithm, `η_Hurw` |
//! | [`tilde_eta`] | the two-sided series `η̃(s,a)` over `λ_n`, its continuation, residues and special values |
//! | [`rep_oracle`] | representation matrices of `ρ(S)`, Hermitian eigensolver, truncated spectra |
//! | [`nilmanifold`] | lattice/character data, the product formula, special values, direct double sums |
//! | [`report`] | JSON records and CSV output with fixed 17-digit formatting |
//! | [`verify`] | independent oracles and the verification batteries run by the CLI |
//!
//! ```
//! use eta235::tilde_eta::tilde_eta_at_zero;
//! let v = tilde_eta_at_zero(1.25).unwrap();
//! assert!((v - (2.0 - 5.0 * 2f64.sqrt() / 4.0)).abs() < 1e-15);
//! ```

pub mod error;
pub mod nilmanifold;
pub mod rep_oracle;
pub mod report;
pub mod specfun;
pub mod tilde_eta;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex argument `s` of the eta-type functions.
pub type ComplexScalar = Complex64;

/// Shorthand for a real point on the complex plane.
pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
