//! Householder tridiagonalization and implicit-shift QL, eigenvalues only.

use num_complex::Complex64;

use super::{HermitianMatrix, Spectrum, SymmetricMatrix, DIMENSION_CAP};
use crate::error::{Error, Result};

/// QL iterations allowed per eigenvalue.
const MAX_QL_ITERATIONS: usize = 50;

/// All eigenvalues of a symmetric matrix, descending.
pub fn eig_sym(m: &SymmetricMatrix) -> Result<Spectrum> {
    let n = m.order();
    check_order(n)?;
    if n == 0 {
        return Ok(Spectrum::from_unsorted(Vec::new()));
    }
    let mut full = m.to_full();
    let (mut d, mut e) = tridiagonalize_real(&mut full, n);
    ql_implicit(&mut d, &mut e)?;
    let spectrum = Spectrum::from_unsorted(d);
    debug_assert!(conserves_trace_and_frobenius(m, &spectrum));
    Ok(spectrum)
}

/// All eigenvalues of a Hermitian matrix, descending.
pub fn eig_herm(m: &HermitianMatrix) -> Result<Spectrum> {
    let n = m.order();
    check_order(n)?;
    if n == 0 {
        return Ok(Spectrum::from_unsorted(Vec::new()));
    }
    let mut full = m.to_full();
    let (mut d, mut e) = tridiagonalize_hermitian(&mut full, n);
    ql_implicit(&mut d, &mut e)?;
    let spectrum = Spectrum::from_unsorted(d);
    debug_assert!({
        let scale = m.frobenius_norm().max(1e-300);
        let tol = n as f64 * 1e-12 * scale;
        let trace: f64 = spectrum.eigenvalues().iter().sum();
        let fro2: f64 = spectrum.eigenvalues().iter().map(|l| l * l).sum();
        (trace - m.trace()).abs() <= tol && (fro2.sqrt() - scale).abs() <= tol
    });
    Ok(spectrum)
}

fn check_order(n: usize) -> Result<()> {
    if n > DIMENSION_CAP {
        return Err(Error::DimensionMismatch(format!(
            "order {n} exceeds the eigensolver cap {DIMENSION_CAP}"
        )));
    }
    Ok(())
}

fn conserves_trace_and_frobenius(m: &SymmetricMatrix, spectrum: &Spectrum) -> bool {
    let scale = m.frobenius_norm().max(1e-300);
    let tol = m.order() as f64 * 1e-12 * scale;
    let trace: f64 = spectrum.eigenvalues().iter().sum();
    let fro2: f64 = spectrum.eigenvalues().iter().map(|l| l * l).sum();
    (trace - m.trace()).abs() <= tol && (fro2.sqrt() - scale).abs() <= tol
}

/// Householder reduction of a full symmetric matrix (row-major, consumed as
/// workspace) to tridiagonal form; returns diagonal and subdiagonal.
/// Eigenvector accumulation is omitted.
fn tridiagonalize_real(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i * n..i * n + i].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..i {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..i {
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..i {
                        g_acc += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..i {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    // e[0] unused; shift so e[k] couples d[k] and d[k+1].
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    (d, e)
}

/// Unitary reduction of a full Hermitian matrix to a real tridiagonal one
/// with nonnegative subdiagonal (a diagonal phase similarity makes the
/// off-diagonal real without changing the spectrum).
fn tridiagonalize_hermitian(a: &mut [Complex64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1; // trailing block order
        // Column below the diagonal.
        let mut xnorm2 = 0.0;
        for r in k + 1..n {
            xnorm2 += a[r * n + k].norm_sqr();
        }
        let alpha = a[(k + 1) * n + k];
        let xnorm = xnorm2.sqrt();
        e[k] = xnorm;
        if xnorm == 0.0 {
            continue;
        }
        // Reflector v = x + phase * |x| * e1.
        let phase = if alpha.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { alpha / alpha.norm() };
        let mut v = vec![Complex64::new(0.0, 0.0); m];
        for (idx, r) in (k + 1..n).enumerate() {
            v[idx] = a[r * n + k];
        }
        v[0] += phase * xnorm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // p = tau * A v on the trailing block.
        let mut p = vec![Complex64::new(0.0, 0.0); m];
        for (ri, r) in (k + 1..n).enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (ci, c) in (k + 1..n).enumerate() {
                acc += a[r * n + c] * v[ci];
            }
            p[ri] = acc * tau;
        }
        // w = p - (tau/2) (v* p) v.
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let coeff = vp * (tau / 2.0);
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - coeff * vi).collect();
        // A <- A - v w* - w v* on the trailing block.
        for (ri, r) in (k + 1..n).enumerate() {
            for (ci, c) in (k + 1..n).enumerate() {
                a[r * n + c] -= v[ri] * w[ci].conj() + w[ri] * v[ci].conj();
            }
        }
        // First column of the block becomes (-phase * xnorm, 0, ..., 0);
        // record the magnitude (phases are similarity-equivalent).
        for r in k + 2..n {
            a[r * n + k] = Complex64::new(0.0, 0.0);
        }
        a[(k + 1) * n + k] = Complex64::new(-xnorm, 0.0);
    }
    let mut d = vec![0.0; n];
    for i in 0..n {
        d[i] = a[i * n + i].re;
    }
    (d, e)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix; `d` holds the
/// diagonal and is replaced by the eigenvalues, `e` the subdiagonal.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for l in 0..n {
        let mut iterations = 0;
        loop {
            // Split point: negligible subdiagonal entry.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::EigNonConvergence {
                    sweeps: MAX_QL_ITERATIONS * n,
                    order: n,
                });
            }
            // Wilkinson-style shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    Ok(())
}
