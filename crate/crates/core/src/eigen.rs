//! Eigenvalues of dense real symmetric matrices.
//!
//! Householder reduction to tridiagonal form followed by the implicit-shift
//! QL iteration. Only eigenvalues are computed. Deterministic: no
//! randomized pivoting, fixed loop order.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 64;

/// Eigenvalues of the symmetric `n × n` row-major matrix `a`, descending.
/// Only the lower triangle is read.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix must be n*n");
    if n == 0 {
        return Ok(Vec::new());
    }
    for i in 0..n {
        for j in i + 1..n {
            a[i * n + j] = a[j * n + i];
        }
    }
    let (mut diag, mut off) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut diag, &mut off)?;
    diag.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(diag)
}

/// Returns `(diagonal, subdiagonal)`; `subdiagonal[n-1] == 0`.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let norm = libm::sqrt((lo..n).map(|i| a[i * n + k] * a[i * n + k]).sum::<f64>());
        if norm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let x0 = a[lo * n + k];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= alpha;
        let h = (lo..n).map(|i| v[i] * v[i]).sum::<f64>() / 2.0;
        off[k] = alpha;
        if h == 0.0 {
            continue;
        }
        // p = B v / h over the trailing block
        for i in lo..n {
            let row = &a[i * n + lo..i * n + n];
            let dot: f64 = row.iter().zip(&v[lo..n]).map(|(x, y)| x * y).sum();
            p[i] = dot / h;
        }
        let kappa = (lo..n).map(|i| v[i] * p[i]).sum::<f64>() / (2.0 * h);
        for i in lo..n {
            p[i] -= kappa * v[i];
        }
        for i in lo..n {
            let (vi, qi) = (v[i], p[i]);
            let row = &mut a[i * n + lo..i * n + n];
            for (j, x) in row.iter_mut().enumerate() {
                *x -= qi * v[lo + j] + vi * p[lo + j];
            }
        }
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    for i in 0..n {
        diag[i] = a[i * n + i];
    }
    off[n - 1] = 0.0;
    (diag, off)
}

/// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal matrix.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
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
    Ok(())
}
