//! Banded operators in the Hermite basis.
//!
//! Products are formed in a slightly larger basis and then restricted, so the
//! retained entries are exactly those of the infinite matrices.

use num_complex::Complex64;

/// Square matrix with nonzero entries only for `|i - j| ≤ bw`.
#[derive(Debug, Clone)]
pub(crate) struct Banded {
    n: usize,
    bw: usize,
    data: Vec<Complex64>,
}

impl Banded {
    pub fn zeros(n: usize, bw: usize) -> Self {
        Banded {
            n,
            bw,
            data: vec![Complex64::new(0.0, 0.0); n * (2 * bw + 1)],
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        i * (2 * self.bw + 1) + (j + self.bw - i)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i.abs_diff(j) > self.bw || i >= self.n || j >= self.n {
            Complex64::new(0.0, 0.0)
        } else {
            self.data[self.slot(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let k = self.slot(i, j);
        self.data[k] = z;
    }

    /// `a + a†` (with `scale`) and `a - a†` are the building blocks:
    /// entries `(k, k+1)` and `(k+1, k)` equal to `scale·√(k+1)` and
    /// `sign·scale·√(k+1)`.
    pub fn ladder(n: usize, scale: Complex64, lower_sign: f64) -> Self {
        let mut m = Banded::zeros(n, 1);
        for k in 0..n - 1 {
            let v = scale * ((k + 1) as f64).sqrt();
            m.set(k, k + 1, v);
            m.set(k + 1, k, v * lower_sign);
        }
        m
    }

    pub fn identity(n: usize, z: Complex64) -> Self {
        let mut m = Banded::zeros(n, 0);
        for k in 0..n {
            m.set(k, k, z);
        }
        m
    }

    /// Entrywise combination `α·self + β·other`.
    pub fn combine(&self, alpha: Complex64, other: &Banded, beta: Complex64) -> Banded {
        let bw = self.bw.max(other.bw);
        let mut out = Banded::zeros(self.n, bw);
        for i in 0..self.n {
            for j in i.saturating_sub(bw)..(i + bw + 1).min(self.n) {
                out.set(i, j, alpha * self.get(i, j) + beta * other.get(i, j));
            }
        }
        out
    }

    /// Matrix product; the inner index runs in ascending order.
    pub fn mul(&self, other: &Banded) -> Banded {
        let bw = self.bw + other.bw;
        let mut out = Banded::zeros(self.n, bw);
        for i in 0..self.n {
            for j in i.saturating_sub(bw)..(i + bw + 1).min(self.n) {
                let lo = i.saturating_sub(self.bw).max(j.saturating_sub(other.bw));
                let hi = (i + self.bw).min(j + other.bw).min(self.n - 1);
                let mut acc = Complex64::new(0.0, 0.0);
                for k in lo..=hi {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}
