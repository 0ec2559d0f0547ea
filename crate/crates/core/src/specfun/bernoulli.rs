use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_finite_real, Error, Result};

/// Largest degree accepted by [`bernoulli_poly`].
pub const BERNOULLI_POLY_MAX: u32 = 64;

/// Bernoulli numbers are tabulated up to this index for the Euler–Maclaurin
/// corrections and the polylogarithm expansion.
const TABLE_LEN: usize = 161;

struct Table {
    exact: Vec<BigRational>,
    float: Vec<f64>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let exact = akiyama_tanigawa(TABLE_LEN);
        let float = exact
            .iter()
            .map(|b| b.to_f64().expect("Bernoulli number fits in f64"))
            .collect();
        Table { exact, float }
    })
}

/// Exact Bernoulli numbers `B_0..B_{len-1}` with the `B_1 = -1/2` convention.
fn akiyama_tanigawa(len: usize) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(len);
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * BigInt::from(j);
        }
        out.push(row[0].clone());
    }
    // the recurrence produces B_1 = +1/2
    if len > 1 {
        out[1] = -out[1].clone();
    }
    out
}

/// Bernoulli number `B_n` (`B_1 = -1/2`), for `n ≤ 160`.
pub fn bernoulli_number(n: usize) -> f64 {
    table().float[n]
}

/// Bernoulli polynomial `B_n(x) = Σ_k C(n,k) B_k x^(n-k)`.
///
/// The sum is evaluated exactly in rational arithmetic on the binary value of
/// `x` and rounded once, so the result is correctly rounded up to the final
/// conversion.
pub fn bernoulli_poly(n: u32, x: f64) -> Result<f64> {
    if n > BERNOULLI_POLY_MAX {
        return Err(Error::domain(format!(
            "bernoulli_poly: degree {n} exceeds supported maximum {BERNOULLI_POLY_MAX}"
        )));
    }
    check_finite_real(x, "bernoulli_poly")?;
    let xr = BigRational::from_float(x).expect("finite float is rational");
    let t = table();
    let n = n as usize;
    // Horner in x; coefficient of x^j is C(n, j) B_{n-j}
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one(); // C(n, n)
    for j in (0..=n).rev() {
        acc = acc * &xr + &t.exact[n - j] * &binom;
        if j > 0 {
            binom = binom * BigInt::from(j) / BigInt::from(n - j + 1);
        }
    }
    Ok(acc.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_numbers() {
        assert_eq!(bernoulli_number(0), 1.0);
        assert_eq!(bernoulli_number(1), -0.5);
        assert!((bernoulli_number(2) - 1.0 / 6.0).abs() < 1e-17);
        assert_eq!(bernoulli_number(3), 0.0);
        assert!((bernoulli_number(4) + 1.0 / 30.0).abs() < 1e-17);
        assert!((bernoulli_number(12) + 691.0 / 2730.0).abs() < 1e-15);
        assert_eq!(bernoulli_number(101), 0.0);
    }

    #[test]
    fn degree_limit() {
        assert!(bernoulli_poly(64, 0.3).is_ok());
        assert!(matches!(bernoulli_poly(65, 0.3), Err(Error::Domain(_))));
        assert!(matches!(bernoulli_poly(3, f64::NAN), Err(Error::NonFinite(_))));
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli_poly(0, 0.7).unwrap(), 1.0);
        assert_eq!(bernoulli_poly(1, 0.25).unwrap(), -0.25);
        // B_7(1/4) = 427/16384
        assert_eq!(bernoulli_poly(7, 0.25).unwrap(), 427.0 / 16384.0);
        let b20 = bernoulli_poly(20, 0.3).unwrap();
        assert!((b20 - 163.508_635_180_763_12).abs() < 1e-12 * 163.5);
        let b64 = bernoulli_poly(64, 0.9).unwrap();
        assert!((b64 / -1.693_920_261_060_233e38 - 1.0).abs() < 1e-14);
    }
}
