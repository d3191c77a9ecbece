use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Panics unless `data.len() == n * n`.
    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n, "expected {n}x{n} entries");
        Self { n, data }
    }

    pub fn from_real(n: usize, data: &[f64]) -> Self {
        Self::from_rows(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute imaginary part of any entry.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// LU factorization with partial pivoting. Returns the packed factors, the
    /// row permutation sign, and `None` when a pivot vanishes.
    fn lu(&self) -> Option<(Vec<Complex64>, Vec<usize>, f64)> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))?;
            if a[p * n + k].norm() == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                a[i * n + k] = f;
                for j in k + 1..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn det(&self) -> Complex64 {
        match self.lu() {
            None => Complex64::new(0.0, 0.0),
            Some((a, _, sign)) => (0..self.n).fold(Complex64::new(sign, 0.0), |acc, i| acc * a[i * self.n + i]),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let (a, perm, _) = self.lu()?;
        let mut inv = Self::zeros(n);
        for col in 0..n {
            // Solve L U x = P e_col.
            let mut x: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(if perm[i] == col { 1.0 } else { 0.0 }, 0.0))
                .collect();
            for i in 0..n {
                for j in 0..i {
                    let t = a[i * n + j] * x[j];
                    x[i] -= t;
                }
            }
            for i in (0..n).rev() {
                for j in i + 1..n {
                    let t = a[i * n + j] * x[j];
                    x[i] -= t;
                }
                x[i] /= a[i * n + i];
            }
            for (i, v) in x.into_iter().enumerate() {
                inv[(i, col)] = v;
            }
        }
        inv.data.iter().all(|z| z.is_finite()).then_some(inv)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        let n = self.n;
        assert_eq!(n, rhs.n);
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        m
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_and_inverse() {
        let m = CMat::from_rows(2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)]);
        // (1+i)(3+0.5i) - 2(-i) = 2.5 + 3.5i + 2i
        let d = m.det();
        assert!((d - c(2.5, 5.5)).norm() < 1e-12);
        let inv = m.inverse().unwrap();
        assert!((&(&m * &inv) - &CMat::identity(2)).norm() < 1e-12);
        let singular = CMat::from_real(2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(singular.inverse().is_none() || singular.det().norm() < 1e-12);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = CMat::from_real(3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 2.0]);
        assert!((m.det() - c(-2.0, 0.0)).norm() < 1e-12);
        let inv = m.inverse().unwrap();
        assert!((&(&inv * &m) - &CMat::identity(3)).norm() < 1e-12);
    }
}
