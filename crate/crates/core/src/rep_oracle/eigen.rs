//! Real eigenvalues of Hermitian matrices through the symmetric embedding
//! `H = A + iB ↦ [[A, -B], [B, A]]`, Householder tridiagonalization and
//! implicit-shift QL.

use super::HermitianOperatorMatrix;
use crate::error::{Error, Result};

/// Reduce a dense symmetric matrix (row-major) to tridiagonal form. Only the
/// lower triangle is read and updated. Returns the diagonal and the
/// subdiagonal (`e[k]` couples `k` and `k+1`; the last entry is zero). The
/// input is overwritten.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        d[k] = a[k * n + k];
        let mut scale = 0.0;
        for i in lo..n {
            v[i] = a[i * n + k];
            scale += v[i].abs();
        }
        if scale == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let mut sq = 0.0;
        for vi in &mut v[lo..] {
            *vi /= scale;
            sq += *vi * *vi;
        }
        let alpha = if v[lo] > 0.0 { -sq.sqrt() } else { sq.sqrt() };
        e[k] = alpha * scale;
        // v = x/scale - alpha·e_1, H = I - v vᵀ/h
        let h = sq - v[lo] * alpha;
        v[lo] -= alpha;
        if h == 0.0 {
            continue;
        }
        // p = A22 v / h from the lower triangle: row i contributes to p_i by
        // a dot product and to p_j (j < i) through the mirrored entries
        p[lo..].fill(0.0);
        for i in lo..n {
            let row = &a[i * n + lo..i * n + i];
            let vi = v[i];
            let mut s = a[i * n + i] * vi;
            for ((r, vj), pj) in row.iter().zip(&v[lo..i]).zip(&mut p[lo..i]) {
                s += r * vj;
                *pj += r * vi;
            }
            p[i] += s;
        }
        for pi in &mut p[lo..] {
            *pi /= h;
        }
        // w = p - (pᵀv / 2h) v
        let kappa: f64 = p[lo..].iter().zip(&v[lo..]).map(|(pi, vi)| pi * vi).sum::<f64>() / (2.0 * h);
        for i in lo..n {
            p[i] -= kappa * v[i];
        }
        // A22 -= v wᵀ + w vᵀ on the lower triangle
        for i in lo..n {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[i * n + lo..=i * n + i];
            for ((r, vj), wj) in row.iter_mut().zip(&v[lo..=i]).zip(&p[lo..=i]) {
                *r -= vi * wj + wi * vj;
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2];
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        d[n - 1] = a[n * n - 1];
    }
    (d, e)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts. `e[k]` couples `k` and `k+1`.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    e[n - 1] = 0.0;
    // deflation also happens at an absolute level set by the matrix norm,
    // otherwise clusters of near-zero eigenvalues never split off
    let anorm = d
        .iter()
        .zip(&e)
        .fold(0.0f64, |m, (x, y)| m.max(x.abs() + 2.0 * y.abs()));
    let floor = f64::EPSILON * anorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                return Err(Error::Inconsistency(
                    "QL iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Eigenvalues of a dense real symmetric matrix (row-major), ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let (d, e) = tridiagonalize(&mut a, n);
    let mut ev = tridiagonal_eigenvalues(d, e)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// Every eigenvalue of the real embedding occurs twice; consecutive sorted
/// values are paired (tolerance `1e-10·max|λ|`) and each pair reported once.
pub fn hermitian_eigenvalues(m: &HermitianOperatorMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let big = 2 * n;
    let mut a = vec![0.0; big * big];
    for j in 0..n {
        for k in 0..n {
            let z = m.get(j, k);
            a[j * big + k] = z.re;
            a[(j + n) * big + k + n] = z.re;
            a[(j + n) * big + k] = z.im;
            a[j * big + k + n] = -z.im;
        }
    }
    let ev = symmetric_eigenvalues(a, big)?;
    let norm = ev.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let tol = 1e-10 * norm.max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    for pair in ev.chunks_exact(2) {
        if (pair[0] - pair[1]).abs() > tol {
            return Err(Error::Inconsistency(format!(
                "embedded eigenvalues {} and {} do not pair",
                pair[0], pair[1]
            )));
        }
        out.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    #[test]
    fn diagonal() {
        let mut e = vec![Complex64::new(0.0, 0.0); 9];
        e[0] = Complex64::new(3.0, 0.0);
        e[4] = Complex64::new(1.0, 0.0);
        e[8] = Complex64::new(2.0, 0.0);
        let m = HermitianOperatorMatrix::new(3, e).unwrap();
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn small_symmetric() {
        // [[2,1],[1,2]] → {1, 3}
        let ev = symmetric_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 3.0).abs() < 1e-15);
        // path graph on 6 vertices: 2cos(kπ/7)
        let n = 6;
        let mut a = vec![0.0; n * n];
        for i in 0..n - 1 {
            a[i * n + i + 1] = 1.0;
            a[(i + 1) * n + i] = 1.0;
        }
        let ev = symmetric_eigenvalues(a, n).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let want = 2.0 * (std::f64::consts::PI * (n - k) as f64 / 7.0).cos();
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn random_hermitian_trace() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let n = 64;
        let mut e = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            e[j * n + j] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for k in j + 1..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                e[j * n + k] = z;
                e[k * n + j] = z.conj();
            }
        }
        let m = HermitianOperatorMatrix::new(n, e).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        let tr: f64 = (0..n).map(|j| m.get(j, j).re).sum();
        let sum: f64 = ev.iter().sum();
        assert!((tr - sum).abs() < 1e-9 * tr.abs().max(1.0));
        let fro: f64 = m.entries().iter().map(|z| z.norm_sqr()).sum();
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        assert!((fro - sq).abs() < 1e-10 * fro);
    }
}
