//! Dense matrices, sample covariance, spectra and trace powers.
//!
//! Desk-scale only: the eigensolvers are Householder tridiagonalization
//! followed by implicit-shift QL, capped at order [`DIMENSION_CAP`].

mod eig;

pub use eig::{eig_herm, eig_sym};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix order the eigensolvers accept.
pub const DIMENSION_CAP: usize = 4096;

/// Row-major dense real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RealMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn transposed(&self) -> RealMatrix {
        let mut out = RealMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn squared_entry_sum(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn squared_entry_sum(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Symmetric matrix in packed upper-triangular storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, packed: vec![0.0; n * (n + 1) / 2] }
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.n);
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.packed[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let idx = self.index(i, j);
        self.packed[idx] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.packed[self.index(i, j)];
                acc += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        acc.sqrt()
    }

    /// Unpacks into a full row-major square array.
    pub(crate) fn to_full(&self) -> Vec<f64> {
        let n = self.n;
        let mut full = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.packed[self.index(i, j)];
                full[i * n + j] = v;
                full[j * n + i] = v;
            }
        }
        full
    }
}

/// Hermitian matrix in packed upper-triangular storage.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    packed: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix { n, packed: vec![Complex64::new(0.0, 0.0); n * (n + 1) / 2] }
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.n);
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i <= j {
            self.packed[self.index(i, j)]
        } else {
            self.packed[self.index(j, i)].conj()
        }
    }

    pub fn set_upper(&mut self, i: usize, j: usize, value: Complex64) {
        debug_assert!(i <= j);
        let idx = self.index(i, j);
        self.packed[idx] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.packed[self.index(i, j)].norm_sqr();
                acc += if i == j { v } else { 2.0 * v };
            }
        }
        acc.sqrt()
    }

    pub(crate) fn to_full(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut full = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.packed[self.index(i, j)];
                full[i * n + j] = v;
                full[j * n + i] = v.conj();
            }
        }
        full
    }
}

/// Eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub(crate) fn from_unsorted(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_unstable_by(|a, b| b.total_cmp(a));
        Spectrum { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The largest eigenvalue.
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    // Four independent accumulators so the loop vectorizes.
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        sum += a[i] * b[i];
    }
    sum
}

/// `(1/denom) X X^T` in packed symmetric storage.
pub fn sample_covariance(x: &RealMatrix, denom: usize) -> Result<SymmetricMatrix> {
    if denom == 0 {
        return Err(Error::Domain("covariance denominator must be positive".into()));
    }
    let n = x.rows();
    let inv = 1.0 / denom as f64;
    let mut m = SymmetricMatrix::zeros(n);
    for i in 0..n {
        let row_i = x.row(i);
        for j in i..n {
            let v = dot(row_i, x.row(j)) * inv;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// `(1/denom) X X^*` in packed Hermitian storage.
pub fn sample_covariance_complex(x: &ComplexMatrix, denom: usize) -> Result<HermitianMatrix> {
    if denom == 0 {
        return Err(Error::Domain("covariance denominator must be positive".into()));
    }
    let n = x.rows();
    let inv = 1.0 / denom as f64;
    let mut m = HermitianMatrix::zeros(n);
    for i in 0..n {
        let row_i = x.row(i);
        for j in i..n {
            let row_j = x.row(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row_i.iter().zip(row_j) {
                acc += a * b.conj();
            }
            m.set_upper(i, j, acc * inv);
        }
    }
    Ok(m)
}

/// `sum_i (lambda_i / scale)^s`.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero here (and only here):
/// sample covariance matrices are positive semidefinite and tiny negative
/// values are eigensolver noise. Powers above 64 go through log space.
pub fn trace_power(spectrum: &Spectrum, s: u32, scale: f64) -> Result<f64> {
    if s == 0 {
        return Err(Error::Domain("trace power wants s >= 1".into()));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Domain(format!("trace power wants scale > 0, got {scale}")));
    }
    let magnitude = spectrum
        .eigenvalues()
        .iter()
        .fold(0f64, |m, v| m.max(v.abs()));
    let floor = -1e-10 * magnitude;
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &lambda in spectrum.eigenvalues() {
        let lambda = if lambda < 0.0 && lambda >= floor { 0.0 } else { lambda };
        let ratio = lambda / scale;
        let term = if ratio == 0.0 {
            0.0
        } else if s <= 64 {
            ratio.powi(s as i32)
        } else {
            let sign = if ratio < 0.0 && s % 2 == 1 { -1.0 } else { 1.0 };
            sign * (s as f64 * ratio.abs().ln()).exp()
        };
        // Kahan.
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replica_rng;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn random_real(rows: usize, cols: usize, seed: u64) -> RealMatrix {
        let mut rng = replica_rng(seed, 0);
        let mut x = RealMatrix::zeros(rows, cols);
        for i in 0..rows {
            for v in x.row_mut(i) {
                *v = rng.gen_range(-1.0..1.0);
            }
        }
        x
    }

    #[test]
    fn packed_storage_round_trip() {
        let mut m = SymmetricMatrix::zeros(4);
        m.set(1, 3, 5.0);
        m.set(3, 1, 7.0); // overwrites the same slot
        assert_eq!(m.get(1, 3), 7.0);
        assert_eq!(m.get(3, 1), 7.0);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn covariance_of_identity_like_matrix() {
        let x = RealMatrix::from_rows(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let m = sample_covariance(&x, 2).unwrap();
        assert_eq!(m.get(0, 0), 0.5);
        assert_eq!(m.get(1, 1), 0.5);
        assert_eq!(m.get(0, 1), 0.0);
    }

    #[test]
    fn covariance_trace_is_entry_sum() {
        let x = random_real(5, 9, 3);
        let m = sample_covariance(&x, 5).unwrap();
        assert_relative_eq!(
            m.trace(),
            x.squared_entry_sum() / 5.0,
            max_relative = 1e-12
        );
        assert!(sample_covariance(&x, 0).is_err());
    }

    #[test]
    fn trace_power_basics() {
        let spectrum = Spectrum::from_unsorted(vec![1.0, 3.0]);
        assert_relative_eq!(trace_power(&spectrum, 1, 1.0).unwrap(), 4.0, max_relative = 1e-14);
        assert_relative_eq!(trace_power(&spectrum, 3, 1.0).unwrap(), 28.0, max_relative = 1e-12);
        assert!(trace_power(&spectrum, 0, 1.0).is_err());
        assert!(trace_power(&spectrum, 2, 0.0).is_err());
    }

    #[test]
    fn trace_power_log_space_agrees_with_direct() {
        let spectrum = Spectrum::from_unsorted(vec![0.9, 1.02, 0.4]);
        let direct: f64 = spectrum
            .eigenvalues()
            .iter()
            .map(|l| l.powi(100))
            .sum();
        assert_relative_eq!(
            trace_power(&spectrum, 100, 1.0).unwrap(),
            direct,
            max_relative = 1e-11
        );
    }

    #[test]
    fn trace_power_clamps_psd_noise() {
        let spectrum = Spectrum::from_unsorted(vec![2.0, -1e-14]);
        assert_relative_eq!(trace_power(&spectrum, 3, 1.0).unwrap(), 8.0, max_relative = 1e-13);
    }

    #[test]
    fn trace_power_matches_matrix_powers() {
        // Repeated-multiplication oracle on a random 4x4 symmetric matrix.
        let n = 4;
        let mut rng = replica_rng(9, 0);
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let full = m.to_full();
        let mut power = full.clone();
        for _ in 0..4 {
            let mut next = vec![0.0; n * n];
            for i in 0..n {
                for k in 0..n {
                    let a = power[i * n + k];
                    for j in 0..n {
                        next[i * n + j] += a * full[k * n + j];
                    }
                }
            }
            power = next;
        }
        let trace5: f64 = (0..n).map(|i| power[i * n + i]).sum();
        let spectrum = eig_sym(&m).unwrap();
        assert_relative_eq!(
            trace_power(&spectrum, 5, 1.0).unwrap(),
            trace5,
            max_relative = 1e-9
        );
    }

    #[test]
    fn companion_spectra_coincide() {
        // Nonzero eigenvalues of XX*/c and X*X/c agree.
        for trial in 0..20 {
            let x = random_real(3, 5, 100 + trial);
            let narrow = eig_sym(&sample_covariance(&x, 3).unwrap()).unwrap();
            let wide = eig_sym(&sample_covariance(&x.transposed(), 3).unwrap()).unwrap();
            for (a, b) in narrow.eigenvalues().iter().zip(wide.eigenvalues()) {
                assert_relative_eq!(a, b, max_relative = 1e-9);
            }
            // The trailing eigenvalues of the wide side are numerically zero.
            let scale = wide.largest();
            for &tail in &wide.eigenvalues()[3..] {
                assert!(tail.abs() <= 1e-10 * scale.max(1.0));
            }
        }
    }
}
